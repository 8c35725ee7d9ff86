#include "opmi/transform.hpp"

#include <algorithm>
#include <limits>
#include <map>

namespace opmi {

namespace {

// Offset to the predecessor of t[i] in the window t[lo..i-1]: the largest
// value <= t[i], latest position on value ties (the positional tie rule and
// the strict rule select the same element). 0 when every window value is
// larger. Indices 0-based.
inline std::uint32_t predecessor_offset(const Value* t, std::int64_t lo, std::int64_t i) {
  std::int64_t best = -1;
  for (std::int64_t j = i - 1; j >= lo; --j) {
    if (t[j] > t[i]) continue;
    if (t[j] == t[i]) return static_cast<std::uint32_t>(i - j);  // latest equal wins outright
    if (best < 0 || t[j] > t[best]) best = j;
  }
  return best < 0 ? 0 : static_cast<std::uint32_t>(i - best);
}

inline std::int64_t window_min(const Value* t, std::int64_t lo, std::int64_t hi_excl) {
  Value m = t[lo];
  for (std::int64_t j = lo + 1; j < hi_excl; ++j) m = std::min(m, t[j]);
  return m;
}

// Kernels must not throw; validation happens before the loop.
template <typename Kernel>
void for_each_position(std::int64_t n, Exec exec, Kernel&& kernel) {
#ifdef _OPENMP
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) kernel(i);
    return;
  }
#else
  (void)exec;
#endif
  for (std::int64_t i = 0; i < n; ++i) kernel(i);
}

}  // namespace

OrderComponent order_component(const Sequence& t, const OrderParams& params, Exec exec) {
  validate(params);
  if (t.empty()) throw InvalidInput("cannot transform an empty sequence");
  const std::int64_t n = static_cast<std::int64_t>(t.size());
  const std::int64_t q = params.q;
  OrderComponent to(t.size());
  const Value* v = t.data();
  const bool strict = params.mode == Mode::strict;
  for_each_position(n, exec, [&](std::int64_t i) {
    std::int64_t lo = std::max<std::int64_t>(0, i - q + 1);
    std::uint32_t k = predecessor_offset(v, lo, i);
    if (k == 0) {
      to[i] = 0;
    } else if (!strict) {
      to[i] = static_cast<Symbol>(k);
    } else {
      to[i] = static_cast<Symbol>(v[i - k] == v[i] ? 2 * k - 1 : 2 * k);
    }
  });
  return to;
}

DeltaComponent delta_component(const Sequence& t, const OrderComponent& to,
                               const OrderParams& params, Exec exec) {
  validate(params);
  if (t.empty()) throw InvalidInput("cannot transform an empty sequence");
  if (t.size() != to.size()) throw InvalidInput("sequence and order component lengths differ");
  const std::int64_t n = static_cast<std::int64_t>(t.size());
  const std::int64_t q = params.q;
  const bool strict = params.mode == Mode::strict;
  for (std::int64_t i = 0; i < n; ++i) {
    std::uint32_t k = strict ? (to[i] + 1u) / 2 : to[i];
    if (static_cast<std::int64_t>(k) > i) throw CorruptComponent("order offset before position 1");
  }
  DeltaComponent td(t.size());
  const Value* v = t.data();
  for_each_position(n, exec, [&](std::int64_t i) {
    if (i == 0) {
      td[0] = v[0];
      return;
    }
    std::int64_t lo = std::max<std::int64_t>(0, i - q + 1);
    Symbol s = to[i];
    if (s == 0) {
      td[i] = window_min(v, lo, i) - static_cast<std::int64_t>(v[i]);
    } else if (strict && (s & 1u)) {
      td[i] = 0;  // equal predecessor, nothing stored
    } else {
      std::uint32_t k = strict ? s / 2 : s;
      td[i] = static_cast<std::int64_t>(v[i]) - v[i - k];
    }
  });
  return td;
}

Sequence reconstruct(const OrderComponent& to, const DeltaComponent& td,
                     const OrderParams& params) {
  validate(params);
  if (to.empty()) throw InvalidInput("cannot reconstruct from empty components");
  if (to.size() != td.size()) throw InvalidInput("component lengths differ");
  const std::int64_t n = static_cast<std::int64_t>(to.size());
  const std::int64_t q = params.q;
  const bool strict = params.mode == Mode::strict;
  Sequence t(to.size());
  for (std::int64_t i = 0; i < n; ++i) {
    std::int64_t value;
    if (i == 0) {
      if (to[0] != 0) throw CorruptComponent("first order symbol must be 0");
      value = td[0];
    } else {
      std::int64_t lo = std::max<std::int64_t>(0, i - q + 1);
      Symbol s = to[i];
      std::uint32_t k = strict ? (s + 1) / 2 : s;
      if (static_cast<std::int64_t>(k) > i) throw CorruptComponent("order offset before position 1");
      if (s == 0) {
        value = window_min(t.data(), lo, i) - td[i];
      } else if (strict && (s & 1u)) {
        value = t[i - k];
      } else {
        value = td[i] + t[i - k];
      }
    }
    if (value < std::numeric_limits<Value>::min() || value > std::numeric_limits<Value>::max())
      throw CorruptComponent("reconstructed value out of 32-bit range");
    t[i] = static_cast<Value>(value);
  }
  return t;
}

MatchTables pattern_tables(const Sequence& p, Mode mode) {
  if (p.empty()) throw InvalidInput("empty pattern");
  MatchTables tb;
  tb.mode = mode;
  tb.mu.assign(p.size(), 0);
  tb.nu.assign(p.size(), 0);
  tb.eq.assign(p.size(), 0);
  // value -> (earliest, latest) 1-based position seen so far
  std::map<Value, std::pair<std::uint32_t, std::uint32_t>> seen;
  for (std::uint32_t j = 0; j < p.size(); ++j) {
    auto it = seen.upper_bound(p[j]);
    if (it != seen.end()) tb.nu[j] = it->second.first;
    if (it != seen.begin()) {
      --it;
      tb.mu[j] = it->second.second;
      tb.eq[j] = it->first == p[j];
    }
    auto [pos, inserted] = seen.try_emplace(p[j], std::make_pair(j + 1, j + 1));
    if (!inserted) pos->second.second = j + 1;
  }
  return tb;
}

bool verify_window(const MatchTables& tables, std::span<const Value> w) {
  if (w.size() != tables.size()) throw InvalidInput("window length does not match tables");
  const bool strict = tables.mode == Mode::strict;
  for (std::size_t j = 0; j < w.size(); ++j) {
    if (std::uint32_t m = tables.mu[j]; m != 0) {
      Value pred = w[m - 1];
      if (strict && tables.eq[j]) {
        if (pred != w[j]) return false;
      } else if (strict) {
        if (!(pred < w[j])) return false;
      } else {
        if (!(pred <= w[j])) return false;
      }
    }
    if (std::uint32_t s = tables.nu[j]; s != 0) {
      if (!(w[j] < w[s - 1])) return false;
    }
  }
  return true;
}

Mode parse_mode(const std::string& s) {
  if (s == "weak") return Mode::weak;
  if (s == "strict") return Mode::strict;
  throw InvalidParams("unknown mode '" + s + "' (expected weak or strict)");
}

Coder parse_coder(const std::string& s) {
  if (s == "lsk") return Coder::lsk;
  if (s == "dlt") return Coder::dlt;
  if (s == "lsd") return Coder::lsd;
  throw InvalidParams("unknown coder '" + s + "' (expected lsk, dlt or lsd)");
}

}  // namespace opmi
