#include "opmi/coders.hpp"

namespace opmi {

namespace {

std::uint32_t encode_lsk(std::uint64_t value, std::uint64_t bound, BitWriter& out) {
  if (bound == 1) return 0;
  unsigned k = bin_width(bound) - 1;          // floor(log2 bound)
  std::uint64_t u = (std::uint64_t{1} << (k + 1)) - bound;
  if (value < u) {
    out.put_bits(value, k);
    return k;
  }
  out.put_bits(value + u, k + 1);
  return k + 1;
}

std::uint64_t decode_lsk(BitReader& in, std::uint64_t bound) {
  if (bound == 1) return 0;
  unsigned k = bin_width(bound) - 1;
  std::uint64_t u = (std::uint64_t{1} << (k + 1)) - bound;
  std::uint64_t x = in.get_bits(k);
  if (x < u) return x;
  return (x << 1 | (in.get_bit() ? 1 : 0)) - u;
}

std::uint32_t encode_dlt(std::uint64_t value, BitWriter& out) {
  unsigned len = bin_width(value + 1);
  out.put_bits(0, len - 1);
  out.put_bits(value + 1, len);
  return 2 * len - 1;
}

std::uint64_t decode_dlt(BitReader& in) {
  unsigned zeros = 0;
  while (!in.get_bit()) {
    if (++zeros > 63) throw CorruptStream("dlt codeword too long");
  }
  std::uint64_t v = 1;  // the terminating 1 is the most significant bit
  if (zeros > 0) v = (v << zeros) | in.get_bits(zeros);
  return v - 1;
}

std::uint32_t encode_lsd(std::uint64_t value, std::uint64_t bound, BitWriter& out) {
  unsigned len = bin_width(value + 1);  // in [1, bin_width(bound)]
  std::uint32_t bits = encode_lsk(len - 1, bin_width(bound), out);
  if (len > 1) out.put_bits((value + 1) & ((std::uint64_t{1} << (len - 1)) - 1), len - 1);
  return bits + (len - 1);
}

std::uint64_t decode_lsd(BitReader& in, std::uint64_t bound) {
  unsigned len = static_cast<unsigned>(decode_lsk(in, bin_width(bound))) + 1;
  std::uint64_t v = std::uint64_t{1} << (len - 1);
  if (len > 1) v |= in.get_bits(len - 1);
  return v - 1;
}

}  // namespace

std::uint32_t encode_bounded(Coder kind, std::uint64_t value, std::uint64_t bound, BitWriter& out) {
  if (bound == 0) throw OutOfRange("coder bound must be positive");
  if (value >= bound) throw OutOfRange("value " + std::to_string(value) +
                                       " out of coder range [0," + std::to_string(bound) + ")");
  switch (kind) {
    case Coder::lsk: return encode_lsk(value, bound, out);
    case Coder::dlt: return encode_dlt(value, out);
    default: return encode_lsd(value, bound, out);
  }
}

std::uint64_t decode_bounded(Coder kind, BitReader& in, std::uint64_t bound) {
  if (bound == 0) throw OutOfRange("coder bound must be positive");
  switch (kind) {
    case Coder::lsk: return decode_lsk(in, bound);
    case Coder::dlt: return decode_dlt(in);
    default: return decode_lsd(in, bound);
  }
}

std::uint32_t encode_signed_raw(std::int64_t v, BitWriter& out) {
  std::uint64_t z = (static_cast<std::uint64_t>(v) << 1) ^ static_cast<std::uint64_t>(v >> 63);
  return encode_dlt(z, out);
}

std::int64_t decode_signed_raw(BitReader& in) {
  std::uint64_t z = decode_dlt(in);
  return static_cast<std::int64_t>((z >> 1) ^ (~(z & 1) + 1));
}

}  // namespace opmi
