#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace opmi {

using Value = std::int32_t;

/// A numeric series; storage is 0-based, the math contracts in the docs are
/// 1-based (position i lives at values[i-1]).
using Sequence = std::vector<Value>;

/// One order-component symbol. Weak mode uses [0,q), strict mode [0,2q-1).
using Symbol = std::uint16_t;

/// Matching mode: weak breaks value ties by position (earlier = smaller);
/// strict requires equal values to align with equal values.
enum class Mode : std::uint8_t { weak = 0, strict = 1 };

/// Bounded integer coders for the delta payload.
enum class Coder : std::uint8_t { lsk = 0, dlt = 1, lsd = 2 };

/// Execution policy for the data-parallel kernels. `serial` is the reference
/// behavior; `parallel` uses OpenMP when compiled in and must produce
/// bit-identical results.
enum class Exec { serial, parallel };

struct OrderParams {
  std::uint32_t q = 4;
  Mode mode = Mode::weak;
};

inline constexpr std::uint32_t kMinWindow = 3;
inline constexpr std::uint32_t kMaxWindow = 4096;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidParams : Error { using Error::Error; };
struct InvalidInput : Error { using Error::Error; };
struct OutOfRange : Error { using Error::Error; };
struct CorruptComponent : Error { using Error::Error; };
struct CorruptStream : Error { using Error::Error; };
struct CorruptBlock : Error { using Error::Error; };
struct CorruptContainer : Error { using Error::Error; };
struct InvalidSymbol : Error { using Error::Error; };
struct PatternTooShort : Error { using Error::Error; };

inline void validate(const OrderParams& p) {
  if (p.q < kMinWindow || p.q > kMaxWindow)
    throw InvalidParams("window size q must be in [" + std::to_string(kMinWindow) + "," +
                        std::to_string(kMaxWindow) + "], got " + std::to_string(p.q));
}

inline const char* to_string(Mode m) { return m == Mode::weak ? "weak" : "strict"; }

inline const char* to_string(Coder c) {
  switch (c) {
    case Coder::lsk: return "lsk";
    case Coder::dlt: return "dlt";
    default: return "lsd";
  }
}

Mode parse_mode(const std::string& s);
Coder parse_coder(const std::string& s);

}  // namespace opmi
