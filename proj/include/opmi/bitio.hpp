#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "opmi/common.hpp"

namespace opmi {

/// Append-only bit stream, MSB-first within each byte. `align()` pads the
/// current byte with zero bits; padding is never data (consumers know the
/// payload length from headers).
class BitWriter {
 public:
  void put_bit(bool b) { put_bits(b ? 1u : 0u, 1); }

  /// Writes the `count` low bits of `value`, most significant first. count <= 57.
  void put_bits(std::uint64_t value, unsigned count) {
    acc_ = (acc_ << count) | (count == 64 ? value : (value & ((std::uint64_t{1} << count) - 1)));
    filled_ += count;
    while (filled_ >= 8) {
      filled_ -= 8;
      bytes_.push_back(static_cast<std::uint8_t>(acc_ >> filled_));
    }
  }

  /// Pads with zero bits to the next byte boundary.
  void align() {
    if (filled_ > 0) {
      bytes_.push_back(static_cast<std::uint8_t>(acc_ << (8 - filled_)));
      filled_ = 0;
    }
    acc_ = 0;
  }

  std::uint64_t bit_count() const { return bytes_.size() * 8 + filled_; }

  /// Aligned byte image of the stream.
  std::vector<std::uint8_t> take() {
    align();
    return std::move(bytes_);
  }

  const std::vector<std::uint8_t>& bytes() const { return bytes_; }

 private:
  std::vector<std::uint8_t> bytes_;
  std::uint64_t acc_ = 0;
  unsigned filled_ = 0;  // bits pending in acc_, < 8 between calls
};

/// Bit reader over a byte span, MSB-first. Throws CorruptStream on overrun.
class BitReader {
 public:
  explicit BitReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  bool get_bit() {
    if (pos_ >= bytes_.size() * 8) throw CorruptStream("bit stream exhausted");
    bool b = (bytes_[pos_ >> 3] >> (7 - (pos_ & 7))) & 1u;
    ++pos_;
    return b;
  }

  std::uint64_t get_bits(unsigned count) {
    if (pos_ + count > bytes_.size() * 8) throw CorruptStream("bit stream exhausted");
    std::uint64_t out = 0;
    unsigned left = count;
    while (left > 0) {
      unsigned bit = static_cast<unsigned>(pos_ & 7);
      unsigned avail = 8 - bit;
      unsigned take = avail < left ? avail : left;
      std::uint8_t byte = bytes_[pos_ >> 3];
      std::uint8_t chunk = static_cast<std::uint8_t>(byte >> (avail - take)) &
                           static_cast<std::uint8_t>((1u << take) - 1);
      out = (out << take) | chunk;
      pos_ += take;
      left -= take;
    }
    return out;
  }

  /// Skips the zero padding up to the next byte boundary.
  void align() { pos_ = (pos_ + 7) & ~std::uint64_t{7}; }

  std::uint64_t bit_pos() const { return pos_; }
  std::uint64_t bit_size() const { return bytes_.size() * 8; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::uint64_t pos_ = 0;
};

}  // namespace opmi
