#pragma once

#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <vector>

#include "opmi/common.hpp"

namespace opmi {

/// Little-endian append-only byte sink for the on-disk container.
class ByteWriter {
 public:
  void u8(std::uint8_t v) { buf_.push_back(v); }
  void u16(std::uint16_t v) { le(v, 2); }
  void u32(std::uint32_t v) { le(v, 4); }
  void u64(std::uint64_t v) { le(v, 8); }

  void bytes(std::span<const std::uint8_t> b) { buf_.insert(buf_.end(), b.begin(), b.end()); }

  void u64_vector(const std::vector<std::uint64_t>& v) {
    u64(v.size());
    for (std::uint64_t x : v) u64(x);
  }

  std::uint64_t size() const { return buf_.size(); }
  std::vector<std::uint8_t> take() { return std::move(buf_); }
  const std::vector<std::uint8_t>& data() const { return buf_; }

  /// Patches a previously written u64 at byte offset `at`.
  void patch_u64(std::uint64_t at, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) buf_[at + i] = static_cast<std::uint8_t>(v >> (8 * i));
  }

 private:
  void le(std::uint64_t v, int n) {
    for (int i = 0; i < n; ++i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  std::vector<std::uint8_t> buf_;
};

/// Bounds-checked little-endian reader; throws CorruptContainer on overrun.
class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> data) : data_(data) {}

  std::uint8_t u8() { return static_cast<std::uint8_t>(le(1)); }
  std::uint16_t u16() { return static_cast<std::uint16_t>(le(2)); }
  std::uint32_t u32() { return static_cast<std::uint32_t>(le(4)); }
  std::uint64_t u64() { return le(8); }

  std::span<const std::uint8_t> bytes(std::uint64_t n) {
    need(n);
    auto s = data_.subspan(pos_, n);
    pos_ += n;
    return s;
  }

  std::vector<std::uint64_t> u64_vector(std::uint64_t max_count) {
    std::uint64_t count = u64();
    if (count > max_count) throw CorruptContainer("vector length out of bounds");
    std::vector<std::uint64_t> v(count);
    for (auto& x : v) x = u64();
    return v;
  }

  void seek(std::uint64_t pos) {
    if (pos > data_.size()) throw CorruptContainer("seek past end");
    pos_ = pos;
  }

  std::uint64_t pos() const { return pos_; }
  std::uint64_t size() const { return data_.size(); }
  std::uint64_t remaining() const { return data_.size() - pos_; }

 private:
  void need(std::uint64_t n) const {
    if (pos_ + n > data_.size()) throw CorruptContainer("container truncated");
  }
  std::uint64_t le(int n) {
    need(n);
    std::uint64_t v = 0;
    for (int i = 0; i < n; ++i) v |= std::uint64_t{data_[pos_ + i]} << (8 * i);
    pos_ += n;
    return v;
  }
  std::span<const std::uint8_t> data_;
  std::uint64_t pos_ = 0;
};

}  // namespace opmi
