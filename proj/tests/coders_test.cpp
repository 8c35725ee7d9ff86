#include <doctest.h>

#include <random>
#include <string>

#include "opmi/bitio.hpp"
#include "opmi/coders.hpp"

using namespace opmi;

namespace {

std::string code_bits(Coder kind, std::uint64_t value, std::uint64_t bound) {
  BitWriter w;
  std::uint32_t bits = encode_bounded(kind, value, bound, w);
  std::string s;
  auto bytes = w.take();
  for (std::uint32_t i = 0; i < bits; ++i)
    s.push_back((bytes[i / 8] >> (7 - i % 8)) & 1 ? '1' : '0');
  return s;
}

}  // namespace

TEST_CASE("bit writer/reader round-trips MSB-first") {
  BitWriter w;
  w.put_bits(0b1011, 4);
  w.put_bits(0b0, 1);
  w.put_bits(0b110011, 6);
  std::uint64_t bits = w.bit_count();
  auto bytes = w.take();
  CHECK(bytes.size() == 2);  // 11 bits padded to 16
  BitReader r(bytes);
  CHECK(r.get_bits(4) == 0b1011);
  CHECK(r.get_bit() == false);
  CHECK(r.get_bits(6) == 0b110011);
  CHECK(bits == 11);
  r.align();
  CHECK(r.bit_pos() == 16);
  CHECK_THROWS_AS(r.get_bit(), CorruptStream);
}

TEST_CASE("lsk codewords match the truncated-binary table") {
  CHECK(code_bits(Coder::lsk, 0, 1).empty());
  CHECK(code_bits(Coder::lsk, 0, 5) == "00");
  CHECK(code_bits(Coder::lsk, 1, 5) == "01");
  CHECK(code_bits(Coder::lsk, 2, 5) == "10");
  CHECK(code_bits(Coder::lsk, 3, 5) == "110");
  CHECK(code_bits(Coder::lsk, 4, 5) == "111");
}

TEST_CASE("dlt codewords") {
  CHECK(code_bits(Coder::dlt, 0, 100) == "1");
  CHECK(code_bits(Coder::dlt, 4, 100) == "00101");
  BitWriter w;
  w.put_bits(0b00101, 5);
  auto bytes = w.take();
  BitReader r(bytes);
  CHECK(decode_bounded(Coder::dlt, r, 100) == 4);
}

TEST_CASE("lsd worked example") {
  // bound 100: |bin(100)| = 7, value 4 -> length field 2 via lsk under bound 7,
  // then the two low bits of bin(5)
  CHECK(code_bits(Coder::lsd, 4, 100) == "01101");
}

TEST_CASE("out-of-range value is rejected") {
  BitWriter w;
  CHECK_THROWS_AS(encode_bounded(Coder::lsk, 5, 5, w), OutOfRange);
  CHECK_THROWS_AS(encode_bounded(Coder::dlt, 7, 7, w), OutOfRange);
  CHECK_THROWS_AS(encode_bounded(Coder::lsk, 0, 0, w), OutOfRange);
}

TEST_CASE("exhaustive round-trip and length bounds for small bounds") {
  for (Coder kind : {Coder::lsk, Coder::dlt, Coder::lsd}) {
    for (std::uint64_t w = 1; w <= 300; ++w) {
      BitWriter bw;
      for (std::uint64_t v = 0; v < w; ++v) encode_bounded(kind, v, w, bw);
      auto bytes = bw.take();
      BitReader r(bytes);
      for (std::uint64_t v = 0; v < w; ++v) {
        CAPTURE(static_cast<int>(kind));
        CAPTURE(w);
        CAPTURE(v);
        REQUIRE(decode_bounded(kind, r, w) == v);
      }
    }
  }
}

TEST_CASE("lsk length is monotone and at most ceil(log2 w)") {
  for (std::uint64_t w : {1ull, 2ull, 3ull, 7ull, 8ull, 1000ull, 4096ull, 100000ull}) {
    unsigned ceil_log = 0;
    while ((1ull << ceil_log) < w) ++ceil_log;
    std::uint32_t prev = 0;
    for (std::uint64_t v = 0; v < std::min<std::uint64_t>(w, 3000); ++v) {
      BitWriter bw;
      std::uint32_t len = encode_bounded(Coder::lsk, v, w, bw);
      CHECK(len <= ceil_log);
      CHECK(len >= prev);
      prev = len;
    }
  }
}

TEST_CASE("dlt length is exactly 2|bin(v+1)|-1") {
  for (std::uint64_t v : {0ull, 1ull, 2ull, 3ull, 4ull, 100ull, 65535ull, 1ull << 31}) {
    BitWriter bw;
    std::uint32_t len = encode_bounded(Coder::dlt, v, std::uint64_t(-1), bw);
    CHECK(len == 2 * bin_width(v + 1) - 1);
  }
}

TEST_CASE("randomized round-trip at large bounds, concatenated streams") {
  std::mt19937_64 rng(7);
  for (Coder kind : {Coder::lsk, Coder::dlt, Coder::lsd}) {
    for (int rep = 0; rep < 200; ++rep) {
      std::uint64_t w = (rng() % (1ull << 40)) + 1;
      std::vector<std::uint64_t> vals(50);
      BitWriter bw;
      for (auto& v : vals) {
        v = rng() % w;
        encode_bounded(kind, v, w, bw);
      }
      auto bytes = bw.take();
      BitReader r(bytes);
      for (std::uint64_t v : vals) REQUIRE(decode_bounded(kind, r, w) == v);
    }
  }
}

TEST_CASE("signed raw code") {
  {
    BitWriter bw;
    encode_signed_raw(0, bw);
    auto bytes = bw.take();
    BitReader r(bytes);
    CHECK(r.get_bit() == true);  // zig-zag 0 -> dlt "1"
  }
  CHECK(code_bits(Coder::dlt, 1, 100) == "010");  // zig-zag of -1 is 1
  std::mt19937_64 rng(3);
  BitWriter bw;
  std::vector<std::int64_t> vals;
  for (int i = 0; i < 2000; ++i) {
    std::int64_t v = static_cast<std::int64_t>(rng() % (1ull << 21)) - (1 << 20);
    vals.push_back(v);
    encode_signed_raw(v, bw);
  }
  auto bytes = bw.take();
  BitReader r(bytes);
  for (std::int64_t v : vals) REQUIRE(decode_signed_raw(r) == v);
}
