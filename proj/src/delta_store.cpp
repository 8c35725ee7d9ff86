#include "opmi/delta_store.hpp"

#include <algorithm>
#include <exception>
#include <limits>

#include "opmi/bitio.hpp"
#include "opmi/coders.hpp"
#include "opmi/serialize.hpp"

namespace opmi {

namespace {

// Everything below is 0-based; position i here is position i+1 in the specs.

struct PosPlan {
  ValueClass cls;
  std::int64_t base;         // minimal: window min; otherwise: predecessor value
  std::uint64_t inter_bound;  // intermediate only: bound on the stored value
};

// Decides the class and reconstruction base of a stored (non-raw) position
// from its order symbol and the preceding values. `val(j)` must be valid for
// j in [max(0,i-q+1), i); for non-raw positions that window never leaves the
// block.
template <typename GetVal>
PosPlan plan_position(std::uint64_t i, Symbol sym, const OrderParams& params, GetVal&& val) {
  const bool strict = params.mode == Mode::strict;
  const std::uint64_t wlo = i >= params.q - 1u ? i - params.q + 1 : 0;

  if (strict && (sym & 1u)) {
    std::uint64_t k = (sym + 1u) / 2;
    if (k > i) throw CorruptBlock("order offset before position 1");
    return {ValueClass::not_stored, val(i - k), 0};
  }
  if (sym == 0) {
    std::int64_t mn = val(wlo);
    for (std::uint64_t j = wlo + 1; j < i; ++j) mn = std::min<std::int64_t>(mn, val(j));
    return {ValueClass::minimal, mn, 0};
  }
  std::uint64_t k = strict ? sym / 2u : sym;
  if (k > i) throw CorruptBlock("order offset before position 1");
  std::int64_t pred = val(i - k);
  std::int64_t wmax = pred;
  bool have_greater = false;
  std::int64_t v_next = 0;  // smallest window value strictly greater than pred
  for (std::uint64_t j = wlo; j < i; ++j) {
    std::int64_t x = val(j);
    wmax = std::max(wmax, x);
    if (x > pred && (!have_greater || x < v_next)) {
      v_next = x;
      have_greater = true;
    }
  }
  if (!have_greater) return {ValueClass::maximal, pred, 0};
  std::uint64_t gap = static_cast<std::uint64_t>(v_next - pred);
  return {ValueClass::intermediate, pred, strict ? gap - 1 : gap};
}

struct BlockGeometry {
  std::uint64_t begin, end, raw_end;
};

BlockGeometry geometry(const CompressedDeltaStore& store, std::uint64_t k) {
  std::uint64_t begin = store.block_begin(k);
  std::uint64_t end = begin + store.block_length(k);
  std::uint64_t raw = k == 0 ? 1 : std::min<std::uint64_t>(store.q - 1u, end - begin);
  return {begin, end, begin + raw};
}

void encode_block(const CompressedDeltaStore& store, std::uint64_t k, const Sequence& t,
                  const OrderComponent& to, const DeltaComponent& td, BitWriter& out) {
  const OrderParams params{store.q, store.mode};
  const bool strict = store.mode == Mode::strict;
  const auto [begin, end, raw_end] = geometry(store, k);
  auto val = [&](std::uint64_t j) { return static_cast<std::int64_t>(t[j]); };

  std::uint64_t m = 0, max_m = 0;
  for (std::uint64_t i = raw_end; i < end; ++i) {
    PosPlan plan = plan_position(i, to[i], params, val);
    if (plan.cls == ValueClass::minimal)
      m = std::max(m, static_cast<std::uint64_t>(td[i]));
    else if (plan.cls == ValueClass::maximal)
      max_m = std::max(max_m, static_cast<std::uint64_t>(td[i]));
  }

  encode_bounded(Coder::dlt, m, std::numeric_limits<std::uint64_t>::max(), out);
  encode_bounded(Coder::dlt, max_m, std::numeric_limits<std::uint64_t>::max(), out);

  for (std::uint64_t i = begin; i < raw_end; ++i) {
    if (i == begin)
      encode_signed_raw(t[i], out);
    else
      encode_signed_raw(static_cast<std::int64_t>(t[i]) - t[i - 1], out);
  }

  for (std::uint64_t i = raw_end; i < end; ++i) {
    PosPlan plan = plan_position(i, to[i], params, val);
    if (plan.cls == ValueClass::not_stored) continue;
    std::int64_t delta = td[i];
    if (delta < (strict ? 1 : 0)) throw InvalidInput("delta component inconsistent with mode");
    std::uint64_t stored = static_cast<std::uint64_t>(strict ? delta - 1 : delta);
    std::uint64_t bound;
    switch (plan.cls) {
      case ValueClass::minimal: bound = strict ? m : m + 1; break;
      case ValueClass::maximal: bound = strict ? max_m : max_m + 1; break;
      default: bound = plan.inter_bound; break;
    }
    if (bound <= 1) continue;  // value forced, nothing to emit
    encode_bounded(store.coder, stored, bound, out);
  }
  out.align();
}

// Decodes the first `count` values of block k. to_slice[0] must correspond to
// the block start.
Sequence decode_block_prefix(const CompressedDeltaStore& store, std::uint64_t k,
                             std::span<const Symbol> to_slice, std::uint64_t count) {
  const OrderParams params{store.q, store.mode};
  const bool strict = store.mode == Mode::strict;
  const auto [begin, end, raw_end] = geometry(store, k);
  if (count > end - begin) throw InvalidInput("decode count exceeds block length");
  if (to_slice.size() < count) throw InvalidInput("order context does not cover the block prefix");

  std::uint64_t off = store.block_offsets[k];
  std::uint64_t next =
      k + 1 < store.block_count() ? store.block_offsets[k + 1] : store.payload.size();
  if (off > next || next > store.payload.size()) throw CorruptBlock("bad block offsets");
  BitReader in(std::span(store.payload).subspan(off, next - off));

  Sequence vals;
  vals.reserve(count);
  auto val = [&](std::uint64_t j) { return static_cast<std::int64_t>(vals[j - begin]); };
  auto push = [&](std::int64_t v) {
    if (v < std::numeric_limits<Value>::min() || v > std::numeric_limits<Value>::max())
      throw CorruptBlock("decoded value out of 32-bit range");
    vals.push_back(static_cast<Value>(v));
  };

  try {
    std::uint64_t m = decode_bounded(Coder::dlt, in, std::numeric_limits<std::uint64_t>::max());
    std::uint64_t max_m =
        decode_bounded(Coder::dlt, in, std::numeric_limits<std::uint64_t>::max());

    for (std::uint64_t i = begin; i < begin + count; ++i) {
      if (i < raw_end) {
        std::int64_t raw = decode_signed_raw(in);
        push(i == begin ? raw : raw + vals.back());
        continue;
      }
      PosPlan plan = plan_position(i, to_slice[i - begin], params, val);
      if (plan.cls == ValueClass::not_stored) {
        push(plan.base);
        continue;
      }
      std::uint64_t bound;
      switch (plan.cls) {
        case ValueClass::minimal: bound = strict ? m : m + 1; break;
        case ValueClass::maximal: bound = strict ? max_m : max_m + 1; break;
        default: bound = plan.inter_bound; break;
      }
      if (bound == 0) throw CorruptBlock("empty coder range");
      std::uint64_t stored = bound <= 1 ? 0 : decode_bounded(store.coder, in, bound);
      if (stored >= bound) throw CorruptBlock("coded value exceeds its bound");
      std::int64_t delta = static_cast<std::int64_t>(stored) + (strict ? 1 : 0);
      if (plan.cls == ValueClass::minimal)
        push(plan.base - delta);
      else
        push(plan.base + delta);
    }
  } catch (const CorruptStream& e) {
    throw CorruptBlock(e.what());
  }
  return vals;
}

}  // namespace

ValueClass classify(std::uint64_t i, std::span<const Value> prior, Symbol to_i,
                    const OrderParams& params, std::uint32_t block_size) {
  validate(params);
  if (i == 0 || prior.size() < i - 1) throw InvalidInput("classify: prior must cover T[1..i-1]");
  std::uint64_t i0 = i - 1;  // 0-based
  std::uint64_t k = i0 / block_size;
  std::uint64_t begin = k * block_size;
  std::uint64_t raw = k == 0 ? 1 : params.q - 1u;
  if (i0 < begin + raw) return ValueClass::raw_prefix;
  PosPlan plan = plan_position(i0, to_i, params,
                               [&](std::uint64_t j) { return static_cast<std::int64_t>(prior[j]); });
  if (plan.cls == ValueClass::intermediate && plan.inter_bound <= 1) return ValueClass::not_stored;
  return plan.cls;
}

CompressedDeltaStore compress_deltas(const Sequence& t, const OrderComponent& to,
                                     const DeltaComponent& td, std::uint32_t block_size,
                                     Coder coder, const OrderParams& params, Exec exec) {
  validate(params);
  if (t.empty()) throw InvalidInput("cannot compress an empty sequence");
  if (t.size() != to.size() || t.size() != td.size())
    throw InvalidInput("component lengths differ");
  if (block_size < params.q)
    throw InvalidParams("block size must be at least q so raw prefixes cover foreign contexts");

  CompressedDeltaStore store;
  store.n = t.size();
  store.block_size = block_size;
  store.q = static_cast<std::uint16_t>(params.q);
  store.mode = params.mode;
  store.coder = coder;
  const std::uint64_t blocks = (store.n + block_size - 1) / block_size;

  std::vector<std::vector<std::uint8_t>> parts(blocks);
#ifdef _OPENMP
  if (exec == Exec::parallel) {
    std::exception_ptr err = nullptr;
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t k = 0; k < static_cast<std::int64_t>(blocks); ++k) {
      try {
        BitWriter w;
        encode_block(store, static_cast<std::uint64_t>(k), t, to, td, w);
        parts[k] = w.take();
      } catch (...) {
#pragma omp critical
        if (!err) err = std::current_exception();
      }
    }
    if (err) std::rethrow_exception(err);
  } else
#else
  (void)exec;
#endif
  {
    for (std::uint64_t k = 0; k < blocks; ++k) {
      BitWriter w;
      encode_block(store, k, t, to, td, w);
      parts[k] = w.take();
    }
  }

  store.block_offsets.resize(blocks);
  std::uint64_t total = 0;
  for (std::uint64_t k = 0; k < blocks; ++k) {
    store.block_offsets[k] = total;
    total += parts[k].size();
  }
  store.payload.reserve(total);
  for (auto& p : parts) store.payload.insert(store.payload.end(), p.begin(), p.end());
  return store;
}

Sequence decompress_block(const CompressedDeltaStore& store, std::uint64_t k,
                          std::span<const Symbol> to_slice) {
  if (k >= store.block_count()) throw InvalidInput("block number out of range");
  return decode_block_prefix(store, k, to_slice, store.block_length(k));
}

Sequence extract_window(const CompressedDeltaStore& store, std::uint64_t start, std::uint64_t len,
                        std::span<const Symbol> to_context) {
  if (len == 0) return {};
  if (start < 1 || start - 1 + len > store.n) throw InvalidInput("window out of range");
  const std::uint64_t start0 = start - 1;
  const std::uint64_t end0 = start0 + len;
  const std::uint64_t first = start0 / store.block_size;
  const std::uint64_t last = (end0 - 1) / store.block_size;
  const std::uint64_t ctx_begin = first * store.block_size;
  if (to_context.size() < end0 - ctx_begin)
    throw InvalidInput("order context does not cover the window");

  Sequence out;
  out.reserve(len);
  for (std::uint64_t k = first; k <= last; ++k) {
    std::uint64_t bbegin = store.block_begin(k);
    std::uint64_t count = std::min(bbegin + store.block_length(k), end0) - bbegin;
    Sequence vals = decode_block_prefix(
        store, k, to_context.subspan(bbegin - ctx_begin, count), count);
    std::uint64_t from = k == first ? start0 - bbegin : 0;
    out.insert(out.end(), vals.begin() + static_cast<std::ptrdiff_t>(from), vals.end());
  }
  return out;
}

Sequence decompress_all(const CompressedDeltaStore& store, const OrderComponent& to, Exec exec) {
  if (to.size() != store.n) throw InvalidInput("order component length mismatch");
  Sequence out(store.n);
  const std::int64_t blocks = static_cast<std::int64_t>(store.block_count());
  auto one = [&](std::uint64_t k) {
    std::uint64_t begin = store.block_begin(k);
    std::uint64_t len = store.block_length(k);
    Sequence vals = decode_block_prefix(store, k, std::span(to).subspan(begin, len), len);
    std::copy(vals.begin(), vals.end(), out.begin() + static_cast<std::ptrdiff_t>(begin));
  };
#ifdef _OPENMP
  if (exec == Exec::parallel) {
    std::exception_ptr err = nullptr;
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t k = 0; k < blocks; ++k) {
      try {
        one(static_cast<std::uint64_t>(k));
      } catch (...) {
#pragma omp critical
        if (!err) err = std::current_exception();
      }
    }
    if (err) std::rethrow_exception(err);
    return out;
  }
#else
  (void)exec;
#endif
  for (std::int64_t k = 0; k < blocks; ++k) one(static_cast<std::uint64_t>(k));
  return out;
}

void CompressedDeltaStore::save(ByteWriter& out) const {
  out.u64(n);
  out.u32(block_size);
  out.u16(q);
  out.u8(static_cast<std::uint8_t>(mode));
  out.u8(static_cast<std::uint8_t>(coder));
  out.u64_vector(block_offsets);
  out.u64(payload.size());
  out.bytes(payload);
}

CompressedDeltaStore CompressedDeltaStore::load(ByteReader& in) {
  CompressedDeltaStore s;
  s.n = in.u64();
  s.block_size = in.u32();
  s.q = in.u16();
  std::uint8_t mode = in.u8();
  std::uint8_t coder = in.u8();
  if (mode > 1 || coder > 2) throw CorruptContainer("bad delta store header");
  s.mode = static_cast<Mode>(mode);
  s.coder = static_cast<Coder>(coder);
  if (s.block_size == 0 || s.q < kMinWindow || s.block_size < s.q)
    throw CorruptContainer("bad delta store parameters");
  s.block_offsets = in.u64_vector(in.size());
  std::uint64_t payload_size = in.u64();
  if (payload_size > in.remaining()) throw CorruptContainer("payload length out of bounds");
  auto bytes = in.bytes(payload_size);
  s.payload.assign(bytes.begin(), bytes.end());
  if (s.block_offsets.size() != (s.n + s.block_size - 1) / s.block_size)
    throw CorruptContainer("block count mismatch");
  for (std::uint64_t k = 0; k < s.block_offsets.size(); ++k) {
    std::uint64_t lo = s.block_offsets[k];
    std::uint64_t hi = k + 1 < s.block_offsets.size() ? s.block_offsets[k + 1] : payload_size;
    if (lo >= hi || hi > payload_size || (k == 0 && lo != 0))
      throw CorruptContainer("block offsets not strictly increasing");
  }
  return s;
}

}  // namespace opmi
