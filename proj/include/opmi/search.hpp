#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "opmi/common.hpp"
#include "opmi/delta_store.hpp"
#include "opmi/fm_index.hpp"
#include "opmi/transform.hpp"

namespace opmi {

struct SearchStats {
  std::uint64_t phase1_rows = 0;        // rows prefixed by P_o[q..p]
  std::uint64_t phase2_candidates = 0;  // total rows across all full-depth ranges
  std::uint64_t occurrences = 0;        // verified matches
};

struct SearchResult {
  std::vector<std::uint64_t> positions;  // 1-based match starts, ascending
  SearchStats stats;
};

/// Per-level candidate symbols of the filtering enumeration, ascending and
/// deduplicated. Level j is 1-based, 2 <= j <= q-1. Weak: the pattern symbol
/// or any offset reaching outside the pattern prefix ({P_o[j]} u [j, q-1]).
/// Strict: an odd pattern symbol is forced exactly; otherwise the symbol or
/// any code with offset >= j ({P_o[j]} u [2j-1, 2q-2]).
std::vector<Symbol> candidate_symbols(const OrderComponent& po, std::uint32_t j,
                                      const OrderParams& params);

/// All full-depth candidate strings x_2..x_{q-1} . P_o[q..p] in lexicographic
/// order of (x_2,...,x_{q-1}), without index pruning. At most (q-1)! strings
/// in weak mode.
std::vector<std::vector<Symbol>> enumerate_candidates(const OrderComponent& po,
                                                      const OrderParams& params);

/// The combined index: csa over the order component plus the delta store,
/// built from the same sequence with identical parameters. Immutable and safe
/// for concurrent queries.
class OpmIndex {
 public:
  OpmIndex() = default;
  OpmIndex(OrderParams params, std::uint32_t block_size, Coder coder, CsaIndex csa,
           CompressedDeltaStore deltas)
      : params_(params),
        block_size_(block_size),
        coder_(coder),
        csa_(std::move(csa)),
        deltas_(std::move(deltas)) {}

  static OpmIndex build(const Sequence& t, const OrderParams& params, std::uint32_t block_size,
                        Coder coder, Exec exec = Exec::serial);

  const OrderParams& params() const { return params_; }
  std::uint32_t block_size() const { return block_size_; }
  Coder coder() const { return coder_; }
  std::uint64_t size() const { return deltas_.n; }
  const CsaIndex& csa() const { return csa_; }
  const CompressedDeltaStore& delta_store() const { return deltas_; }

  /// Three-phase search. Requires |P| > q (PatternTooShort otherwise; fall
  /// back to scan_search for short patterns).
  SearchResult search(const Sequence& p) const;

  /// Phase 1 range: rows prefixed by P_o[q..p].
  RowRange phase1(const OrderComponent& po) const;

  /// Verifies one row of a full-depth Phase 2 range. `candidate` is the row's
  /// prefix string x_2..x_{q-1} . P_o[q..p]. Returns the 1-based match start.
  std::optional<std::uint64_t> phase3_verify(std::uint64_t row, const MatchTables& tables,
                                             std::span<const Symbol> candidate) const;

  /// Rebuilds the whole sequence from the index alone (csa text recovery plus
  /// block decompression).
  Sequence extract_all(Exec exec = Exec::serial) const;

 private:
  OrderParams params_;
  std::uint32_t block_size_ = 0;
  Coder coder_ = Coder::lsk;
  CsaIndex csa_;
  CompressedDeltaStore deltas_;
};

}  // namespace opmi
