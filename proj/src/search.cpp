#include "opmi/search.hpp"

#include <algorithm>

namespace opmi {

std::vector<Symbol> candidate_symbols(const OrderComponent& po, std::uint32_t j,
                                      const OrderParams& params) {
  if (j < 2 || j >= params.q) throw InvalidParams("enumeration level out of range");
  Symbol own = po[j - 1];
  std::vector<Symbol> out;
  if (params.mode == Mode::strict && (own & 1u)) {
    out.push_back(own);  // equal-value predecessor pins the symbol exactly
    return out;
  }
  std::uint32_t lo = params.mode == Mode::weak ? j : 2 * j - 1;
  std::uint32_t hi = params.mode == Mode::weak ? params.q - 1 : 2 * (params.q - 1);
  out.reserve(hi - lo + 2);
  if (own < lo) out.push_back(own);
  for (std::uint32_t v = lo; v <= hi; ++v) out.push_back(static_cast<Symbol>(v));
  return out;
}

std::vector<std::vector<Symbol>> enumerate_candidates(const OrderComponent& po,
                                                      const OrderParams& params) {
  validate(params);
  const std::uint32_t q = params.q;
  if (po.size() <= q) throw PatternTooShort("pattern must be longer than q");
  std::vector<std::vector<Symbol>> out;
  std::vector<Symbol> cur(po.size() - 1);
  std::copy(po.begin() + q - 1, po.end(), cur.begin() + q - 2);

  auto rec = [&](auto&& self, std::uint32_t j) -> void {
    if (j >= q) {
      out.push_back(cur);
      return;
    }
    for (Symbol c : candidate_symbols(po, j, params)) {
      cur[j - 2] = c;
      self(self, j + 1);
    }
  };
  rec(rec, 2);
  return out;
}

OpmIndex OpmIndex::build(const Sequence& t, const OrderParams& params, std::uint32_t block_size,
                         Coder coder, Exec exec) {
  validate(params);
  OrderComponent to = order_component(t, params, exec);
  DeltaComponent td = delta_component(t, to, params, exec);
  CompressedDeltaStore ds = compress_deltas(t, to, td, block_size, coder, params, exec);
  CsaIndex csa = CsaIndex::build(to, block_size, params);
  return OpmIndex(params, block_size, coder, std::move(csa), std::move(ds));
}

RowRange OpmIndex::phase1(const OrderComponent& po) const {
  if (po.size() <= params_.q) throw PatternTooShort("pattern must be longer than q");
  return csa_.search(std::span(po).subspan(params_.q - 1));
}

std::optional<std::uint64_t> OpmIndex::phase3_verify(std::uint64_t row, const MatchTables& tables,
                                                     std::span<const Symbol> candidate) const {
  // The row is prefixed by `candidate` = T_o[t .. t+p-2]; a real match starts
  // one position earlier. Step back once (collecting T_o[t-1]) and locate the
  // match-start row, so the walked context always reaches its block start.
  auto [start_row, sym] = csa_.lf_step(row);
  if (sym < 0) return std::nullopt;  // candidate begins at position 1, no room for a match
  CsaIndex::Located loc = csa_.locate_with_context(start_row);

  const std::uint64_t p = candidate.size() + 1;
  std::vector<Symbol> context;
  context.reserve(loc.prefix.size() + 1 + candidate.size());
  context.insert(context.end(), loc.prefix.begin(), loc.prefix.end());
  context.push_back(static_cast<Symbol>(sym));
  context.insert(context.end(), candidate.begin(), candidate.end());

  Sequence window = extract_window(deltas_, loc.pos, p, context);
  if (!verify_window(tables, window)) return std::nullopt;
  return loc.pos;
}

SearchResult OpmIndex::search(const Sequence& p) const {
  if (p.size() <= params_.q) throw PatternTooShort("pattern must be longer than q");
  SearchResult res;
  OrderComponent po = order_component(p, params_);
  MatchTables tables = pattern_tables(p, params_.mode);

  RowRange r1 = phase1(po);
  res.stats.phase1_rows = r1.size();
  if (r1.empty()) return res;

  const std::uint32_t q = params_.q;
  std::vector<Symbol> candidate(p.size() - 1);
  std::copy(po.begin() + q - 1, po.end(), candidate.begin() + q - 2);

  // Phases 2 and 3 interleaved: as soon as one candidate string has a
  // non-empty range, every row in it is verified before the next branch.
  auto dfs = [&](auto&& self, RowRange range, std::uint32_t j) -> void {
    if (j < 2) {
      res.stats.phase2_candidates += range.size();
      for (std::uint64_t row = range.lo; row <= range.hi; ++row) {
        if (auto pos = phase3_verify(row, tables, candidate)) res.positions.push_back(*pos);
      }
      return;
    }
    for (Symbol c : candidate_symbols(po, j, params_)) {
      RowRange next = csa_.extend(range, c);
      if (next.empty()) continue;
      candidate[j - 2] = c;
      self(self, next, j - 1);
    }
  };
  dfs(dfs, r1, q - 1);

  std::sort(res.positions.begin(), res.positions.end());
  res.stats.occurrences = res.positions.size();
  return res;
}

Sequence OpmIndex::extract_all(Exec exec) const {
  OrderComponent to = csa_.recover_text();
  return decompress_all(deltas_, to, exec);
}

}  // namespace opmi
