#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "opmi/common.hpp"

namespace opmi {

/// Per-position offset to the immediate predecessor value inside the sliding
/// window of size q (0 = position holds the window minimum). Strict mode
/// doubles the symbol: 2k for a strictly smaller predecessor at offset k,
/// 2k-1 for an equal one.
using OrderComponent = std::vector<Symbol>;

/// Per-position gap to the predecessor (or window minimum). deltas[0] holds
/// the raw first value. Strict-mode positions with an odd order symbol carry
/// no information (the value is a copy) and are reported as 0 here.
using DeltaComponent = std::vector<std::int64_t>;

/// True iff position i (1-based) of a strict-mode sequence carries a stored
/// delta. Weak mode stores every position.
inline bool delta_stored(Mode mode, const OrderComponent& to, std::uint64_t i) {
  return mode == Mode::weak || (to[i - 1] & 1u) == 0;
}

OrderComponent order_component(const Sequence& t, const OrderParams& params,
                               Exec exec = Exec::serial);

DeltaComponent delta_component(const Sequence& t, const OrderComponent& to,
                               const OrderParams& params, Exec exec = Exec::serial);

/// Inverse of the pair above; linear in n with a lookback of q values.
Sequence reconstruct(const OrderComponent& to, const DeltaComponent& td,
                     const OrderParams& params);

/// Predecessor/successor links of each pattern position into its own prefix,
/// the precomputation behind the O(p) per-window verification.
struct MatchTables {
  std::vector<std::uint32_t> mu;  // 1-based position of the immediate predecessor, 0 = none
  std::vector<std::uint32_t> nu;  // 1-based position of the immediate successor, 0 = none
  std::vector<std::uint8_t> eq;   // strict mode: predecessor value equals this value
  Mode mode = Mode::weak;
  std::size_t size() const { return mu.size(); }
};

/// O(p log p) table construction. In weak mode mu picks the latest position
/// holding the predecessor value and nu the earliest position holding the
/// successor value, which is exactly what the positional tie rule demands.
MatchTables pattern_tables(const Sequence& p, Mode mode);

/// True iff `w` is order-isomorphic (under tables.mode) to the pattern that
/// produced `tables`. Equivalent to the quadratic pairwise check; early-exits
/// on the first violated constraint.
bool verify_window(const MatchTables& tables, std::span<const Value> w);

}  // namespace opmi
