#include "opmi/fm_index.hpp"

#include <algorithm>

#include "opmi/serialize.hpp"
#include "opmi/suffix_array.hpp"

namespace opmi {

CsaIndex CsaIndex::build(const OrderComponent& to, std::uint32_t block_size,
                         const OrderParams& params) {
  validate(params);
  if (to.empty()) throw InvalidInput("cannot index an empty order component");
  if (block_size == 0) throw InvalidParams("block size must be positive");

  CsaIndex idx;
  idx.n_ = to.size();
  idx.block_size_ = block_size;
  idx.q_ = params.q;
  idx.mode_ = params.mode;
  idx.sigma_ = (params.mode == Mode::weak ? params.q : 2 * params.q - 1) + 1;
  if (idx.n_ / block_size >= std::uint64_t{1} << 32)
    throw InvalidParams("too many blocks for this block size");

  // sentinel-extended, shifted text
  std::vector<std::uint32_t> s(idx.n_ + 1);
  for (std::uint64_t i = 0; i < idx.n_; ++i) {
    if (to[i] + 1u >= idx.sigma_) throw InvalidSymbol("order symbol out of alphabet");
    s[i] = to[i] + 1u;
  }
  s[idx.n_] = 0;

  std::vector<std::uint32_t> sa = suffix_array(s, idx.sigma_);

  std::vector<Symbol> bwt(sa.size());
  idx.sampled_.resize(sa.size());
  for (std::uint64_t r = 0; r < sa.size(); ++r) {
    std::uint32_t p = sa[r];
    bwt[r] = static_cast<Symbol>(p == 0 ? s[idx.n_] : s[p - 1]);
    if (p < idx.n_ && p % block_size == 0) {
      idx.sampled_.set(r);
      idx.sample_block_.push_back(p / block_size);
    }
  }
  idx.sampled_.build_rank();

  idx.wt_.build(bwt, idx.sigma_);

  idx.c_.assign(idx.sigma_ + 1, 0);
  for (Symbol c : bwt) ++idx.c_[c + 1];
  for (std::uint32_t c = 1; c <= idx.sigma_; ++c) idx.c_[c] += idx.c_[c - 1];
  return idx;
}

RowRange CsaIndex::extend(RowRange range, Symbol c) const {
  if (c + 1u >= sigma_) throw InvalidSymbol("symbol out of alphabet");
  if (range.empty()) return range;
  Symbol cc = static_cast<Symbol>(c + 1);
  std::uint64_t lo = wt_.rank(cc, range.lo);
  std::uint64_t hi = wt_.rank(cc, range.hi + 1);
  if (lo == hi) return {1, 0};
  return {c_[cc] + lo, c_[cc] + hi - 1};
}

RowRange CsaIndex::search(std::span<const Symbol> s) const {
  RowRange r = full_range();
  for (std::size_t i = s.size(); i > 0; --i) {
    r = extend(r, s[i - 1]);
    if (r.empty()) break;
  }
  return r;
}

std::pair<std::uint64_t, std::int32_t> CsaIndex::lf_step(std::uint64_t row) const {
  auto [sym, occ] = wt_.access_rank(row);
  std::uint64_t next = c_[sym] + occ;
  return {next, sym == 0 ? -1 : static_cast<std::int32_t>(sym - 1)};
}

CsaIndex::Located CsaIndex::locate_with_context(std::uint64_t row) const {
  Located loc;
  std::uint64_t r = row;
  while (!sampled_.get(r)) {
    auto [next, sym] = lf_step(r);
    if (sym < 0) throw CorruptContainer("locate walked past the text start");
    loc.prefix.push_back(static_cast<Symbol>(sym));
    r = next;
  }
  loc.block = sample_block_[sampled_.rank1(r)];
  loc.pos = loc.block * block_size_ + loc.prefix.size() + 1;
  std::reverse(loc.prefix.begin(), loc.prefix.end());
  return loc;
}

OrderComponent CsaIndex::recover_text() const {
  OrderComponent to(n_);
  std::uint64_t row = 0;  // sentinel row: its LF walk visits positions n, n-1, ...
  for (std::uint64_t i = n_; i > 0; --i) {
    auto [next, sym] = lf_step(row);
    if (sym < 0) throw CorruptContainer("order component shorter than declared");
    to[i - 1] = static_cast<Symbol>(sym);
    row = next;
  }
  return to;
}

void CsaIndex::save(ByteWriter& out) const {
  out.u64(n_);
  out.u32(block_size_);
  out.u32(sigma_);
  out.u32(q_);
  out.u8(static_cast<std::uint8_t>(mode_));
  wt_.save(out);
  out.u64_vector(c_);
  out.u64(sampled_.size());
  for (std::uint64_t w : sampled_.words()) out.u64(w);
  out.u64(sample_block_.size());
  for (std::uint32_t b : sample_block_) out.u32(b);
}

CsaIndex CsaIndex::load(ByteReader& in) {
  CsaIndex idx;
  idx.n_ = in.u64();
  idx.block_size_ = in.u32();
  if (idx.block_size_ == 0) throw CorruptContainer("bad block size");
  idx.sigma_ = in.u32();
  idx.q_ = in.u32();
  std::uint8_t mode = in.u8();
  if (mode > 1) throw CorruptContainer("bad mode");
  idx.mode_ = static_cast<Mode>(mode);
  idx.wt_.load(in);
  if (idx.wt_.size() != idx.n_ + 1) throw CorruptContainer("wavelet tree length mismatch");
  idx.c_ = in.u64_vector(std::uint64_t{idx.sigma_} + 1);
  if (idx.c_.size() != std::uint64_t{idx.sigma_} + 1) throw CorruptContainer("bad C array");
  std::uint64_t nbits = in.u64();
  if (nbits != idx.n_ + 1) throw CorruptContainer("sample bitvector length mismatch");
  idx.sampled_.resize(nbits);
  for (auto& w : idx.sampled_.words()) w = in.u64();
  idx.sampled_.build_rank();
  std::uint64_t samples = in.u64();
  if (samples != idx.sampled_.ones()) throw CorruptContainer("sample count mismatch");
  idx.sample_block_.resize(samples);
  for (auto& b : idx.sample_block_) b = in.u32();
  return idx;
}

}  // namespace opmi
