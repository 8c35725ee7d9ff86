#pragma once

#include <cstdint>

#include "opmi/bitio.hpp"
#include "opmi/common.hpp"

namespace opmi {

/// |bin(x)|: number of binary digits of x (1 for x == 0).
inline unsigned bin_width(std::uint64_t x) {
  unsigned w = 1;
  while (x >>= 1) ++w;
  return w;
}

/// Encodes value in [0, bound) with the given coder. Returns bits written.
///
/// lsk  — truncated binary (phase-in): <= |bin(bound-1)| bits, the small
///        values of the range get the short codes; bound 1 writes nothing.
/// dlt  — Elias-delta-style code on value+1: exactly 2|bin(value+1)|-1 bits,
///        independent of bound.
/// lsd  — lsk-coded length field (|bin(value+1)|-1 under bound |bin(bound)|)
///        followed by the bits of bin(value+1) after its most significant bit.
std::uint32_t encode_bounded(Coder kind, std::uint64_t value, std::uint64_t bound, BitWriter& out);

/// Inverse of encode_bounded; consumes exactly the codeword's bits.
std::uint64_t decode_bounded(Coder kind, BitReader& in, std::uint64_t bound);

/// Self-delimiting signed code: zig-zag map then the dlt code. Returns bits written.
std::uint32_t encode_signed_raw(std::int64_t v, BitWriter& out);
std::int64_t decode_signed_raw(BitReader& in);

}  // namespace opmi
