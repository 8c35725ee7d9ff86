// Acceptance suite: one criterion per function, each printing a single
// PASS/FAIL line. Run with no arguments for all criteria or with a list of
// criterion numbers. Exit status = number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "opmi/bitio.hpp"
#include "opmi/coders.hpp"
#include "opmi/container.hpp"
#include "opmi/corpus.hpp"
#include "opmi/scan.hpp"
#include "opmi/search.hpp"
#include "oracles.hpp"

using namespace opmi;
using Clock = std::chrono::steady_clock;

namespace {

struct Check {
  bool ok = true;
  std::string detail;
  void expect(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

const Sequence kRef = {3, 8, 3, 5, -2, 9, 6, 6};

// ---- criterion 1: round-trip fidelity --------------------------------------

Check criterion1() {
  Check c;
  auto t0 = Clock::now();
  std::vector<std::pair<std::string, Sequence>> corpora;
  corpora.emplace_back("rwalk-1e6", gen_rwalk(1000000, 1001));
  corpora.emplace_back("rand-1e6", gen_rand(1000000, 1002));
  corpora.emplace_back("all-equal-1e4", Sequence(10000, 5));
  Sequence inc(10000);
  std::iota(inc.begin(), inc.end(), -5000);
  corpora.emplace_back("increasing-1e4", inc);
  corpora.emplace_back("reference", kRef);

  for (const auto& [name, t] : corpora) {
    for (std::uint32_t q : {3u, 4u, 8u, 12u}) {
      for (Mode mode : {Mode::weak, Mode::strict}) {
        OrderParams params{q, mode};
        OrderComponent to = order_component(t, params, Exec::parallel);
        DeltaComponent td = delta_component(t, to, params, Exec::parallel);
        if (reconstruct(to, td, params) != t) {
          c.expect(false, name + " reconstruct mismatch q=" + std::to_string(q));
          return c;
        }
        for (Coder coder : {Coder::lsk, Coder::dlt, Coder::lsd}) {
          for (std::uint32_t b : {32u, 64u, 96u}) {
            CompressedDeltaStore store =
                compress_deltas(t, to, td, b, coder, params, Exec::parallel);
            if (decompress_all(store, to, Exec::parallel) != t) {
              c.expect(false, name + " extraction mismatch q=" + std::to_string(q) + " B=" +
                                  std::to_string(b) + " coder=" + to_string(coder));
              return c;
            }
          }
        }
      }
    }
  }
  double dt = seconds_since(t0);
  c.expect(dt < 120.0, "round-trips took " + std::to_string(dt) + "s (budget 120s)");
  c.detail = "360 combinations in " + std::to_string(dt) + "s";
  return c;
}

// ---- criterion 2: golden examples ------------------------------------------

Check criterion2() {
  Check c;
  c.expect(order_component(kRef, {4, Mode::weak}) == OrderComponent{0, 1, 2, 1, 0, 2, 3, 1},
           "order component of the reference input");

  auto cands = enumerate_candidates({0, 0, 1, 3, 2, 0}, {4, Mode::weak});
  std::vector<std::vector<Symbol>> want = {
      {0, 1, 3, 2, 0}, {0, 3, 3, 2, 0}, {2, 1, 3, 2, 0},
      {2, 3, 3, 2, 0}, {3, 1, 3, 2, 0}, {3, 3, 3, 2, 0},
  };
  c.expect(cands == want, "six filter strings");

  Sequence t = {10, 20, 25, 30, 31, 50, 47, 49};
  Sequence p = {1, 2, 3, 4, 5};
  std::vector<std::uint64_t> both = {1, 2};
  c.expect(scan_search(t, p, Mode::weak).positions == both, "scan positions {1,2}");
  OpmIndex index = OpmIndex::build(t, {3, Mode::weak}, 4, Coder::lsk);
  c.expect(index.search(p).positions == both, "index positions {1,2}");
  return c;
}

// ---- criterion 3: oracle equivalence ---------------------------------------

Check criterion3() {
  Check c;
  Sequence t = gen_rwalk(100000, 33);
  std::uint64_t checked = 0;
  for (std::uint32_t q : {3u, 4u, 8u}) {
    for (Mode mode : {Mode::weak, Mode::strict}) {
      OpmIndex index = OpmIndex::build(t, {q, mode}, 32, Coder::lsk, Exec::parallel);
      std::uint64_t seed = 900 + q;
      const std::uint64_t lens[] = {q + 1, 15, 20, 50};
      for (std::uint64_t len : lens) {
        auto patterns = extract_patterns(t, 200, len, seed ^ len);
        for (const Sequence& p : patterns) {
          SearchResult res = index.search(p);
          ScanReport rep = scan_search(t, p, mode, Exec::parallel);
          ++checked;
          if (res.positions != rep.positions) {
            c.expect(false, "mismatch q=" + std::to_string(q) + " len=" + std::to_string(len));
            return c;
          }
        }
      }
    }
  }
  c.detail = std::to_string(checked) + " pattern searches matched the scan";
  return c;
}

// ---- criterion 4: filter quality -------------------------------------------

Check criterion4() {
  Check c;
  Sequence t = gen_rwalk(1000000, 44);
  OpmIndex index = OpmIndex::build(t, {4, Mode::weak}, 32, Coder::lsk, Exec::parallel);
  auto patterns = extract_patterns(t, 200, 20, 4444);
  std::vector<double> ratios;
  for (const Sequence& p : patterns) {
    SearchResult res = index.search(p);
    c.expect(res.stats.occurrences >= 1, "extracted pattern with no occurrence");
    c.expect(res.stats.phase2_candidates >= res.stats.occurrences,
             "candidates below occurrences");
    if (res.stats.occurrences > 0)
      ratios.push_back(static_cast<double>(res.stats.phase2_candidates) /
                       static_cast<double>(res.stats.occurrences));
  }
  std::sort(ratios.begin(), ratios.end());
  double median = ratios[ratios.size() / 2];
  c.expect(median <= 2.0, "median phase2/occ ratio " + std::to_string(median) + " > 2.0");
  if (c.ok) c.detail = "median phase2/occurrences = " + std::to_string(median);
  return c;
}

// ---- criterion 5: compression ballpark -------------------------------------

Check criterion5() {
  Check c;
  Sequence t = gen_rwalk(10000000, 55);
  OpmIndex index = OpmIndex::build(t, {4, Mode::weak}, 32, Coder::lsk, Exec::parallel);
  SectionSizes sz = index_section_sizes(index);
  double raw = static_cast<double>(t.size()) * sizeof(Value);
  double total_ratio = static_cast<double>(sz.total()) / raw;
  double csa_ratio = static_cast<double>(sz.csa_bytes) / raw;
  c.expect(total_ratio <= 0.45,
           "total ratio " + std::to_string(total_ratio) + " > 0.45");
  c.expect(csa_ratio <= 0.15, "csa ratio " + std::to_string(csa_ratio) + " > 0.15");
  c.detail = "total " + std::to_string(total_ratio) + ", csa " + std::to_string(csa_ratio);
  return c;
}

// ---- criterion 6: speedup sanity -------------------------------------------

Check criterion6() {
  Check c;
  auto t_budget = Clock::now();
  Sequence t = gen_rwalk(10000000, 66);
  OpmIndex index = OpmIndex::build(t, {4, Mode::weak}, 32, Coder::lsk, Exec::parallel);
  auto patterns = extract_patterns(t, 100, 50, 6666);

  double search_s = 0, scan_s = 0;
  for (const Sequence& p : patterns) {
    auto t0 = Clock::now();
    SearchResult res = index.search(p);
    search_s += seconds_since(t0);
    ScanReport rep = scan_search(t, p, Mode::weak);  // serial, the reference baseline
    scan_s += rep.elapsed.count() / 1000.0;
    if (res.positions != rep.positions) {
      c.expect(false, "index and scan disagreed during timing");
      return c;
    }
  }
  double mean_search = search_s / 100, mean_scan = scan_s / 100;
  c.expect(mean_search <= mean_scan / 10.0,
           "mean search " + std::to_string(mean_search * 1000) + "ms vs scan " +
               std::to_string(mean_scan * 1000) + "ms: speedup below 10x");
  double dt = seconds_since(t_budget);
  c.expect(dt < 600.0, "criterion exceeded its 10-minute budget");
  c.detail = "mean search " + std::to_string(mean_search * 1000) + "ms, mean scan " +
             std::to_string(mean_scan * 1000) + "ms (" +
             std::to_string(mean_scan / mean_search) + "x)";
  return c;
}

// ---- criterion 7: coder properties ------------------------------------------

Check criterion7() {
  Check c;
  for (Coder kind : {Coder::lsk, Coder::dlt, Coder::lsd}) {
    for (std::uint64_t w = 1; w <= 4096; ++w) {
      BitWriter bw;
      std::vector<std::uint32_t> lens(w);
      for (std::uint64_t v = 0; v < w; ++v) lens[v] = encode_bounded(kind, v, w, bw);
      auto bytes = bw.take();
      BitReader r(bytes);
      for (std::uint64_t v = 0; v < w; ++v) {
        if (decode_bounded(kind, r, w) != v) {
          c.expect(false, std::string(to_string(kind)) + " round-trip failed at w=" +
                              std::to_string(w) + " v=" + std::to_string(v));
          return c;
        }
        if (kind == Coder::lsk) {
          unsigned cl = 0;
          while ((1ull << cl) < w) ++cl;
          c.expect(lens[v] <= cl, "lsk length above ceil(log2 w)");
        }
        if (kind == Coder::dlt)
          c.expect(lens[v] == 2 * bin_width(v + 1) - 1, "dlt length formula violated");
      }
      // prefix-freeness: the concatenated stream decoded exactly, and the
      // leftover bits are only zero padding
      std::uint64_t used = r.bit_pos();
      c.expect(bytes.size() * 8 - used < 8, "padding longer than seven bits");
      if (!c.ok) return c;
    }
  }
  c.detail = "exhaustive round-trips for all w <= 4096, all three coders";
  return c;
}

// ---- criterion 8: enumeration bound ----------------------------------------

Check criterion8() {
  Check c;
  std::mt19937_64 rng(88);
  auto factorial = [](std::uint32_t n) {
    std::uint64_t f = 1;
    for (std::uint32_t i = 2; i <= n; ++i) f *= i;
    return f;
  };
  for (std::uint32_t q : {3u, 4u, 5u, 6u}) {
    for (int rep = 0; rep < 1000; ++rep) {
      std::size_t len = q + 1 + rng() % 16;
      Sequence p = oracle::random_sequence(rng, len, -6, 6);
      OrderComponent po = order_component(p, {q, Mode::weak});
      if (enumerate_candidates(po, {q, Mode::weak}).size() > factorial(q - 1)) {
        c.expect(false, "weak enumeration above (q-1)! at q=" + std::to_string(q));
        return c;
      }
    }
  }

  // Lemma-3 effect on the index filter: strict candidate rows never exceed
  // weak candidate rows, measured on tie-rich patterns containing equal
  // adjacent values.
  Sequence t = oracle::random_sequence(rng, 20000, -3, 3);
  OpmIndex weak = OpmIndex::build(t, {4, Mode::weak}, 32, Coder::lsk, Exec::parallel);
  OpmIndex strict = OpmIndex::build(t, {4, Mode::strict}, 32, Coder::lsk, Exec::parallel);
  std::uint64_t with_ties = 0;
  for (int rep = 0; rep < 4000 && with_ties < 1000; ++rep) {
    std::size_t len = 6 + rng() % 12;
    std::size_t j = rng() % (t.size() - len);
    Sequence p(t.begin() + j, t.begin() + j + len);
    bool adjacent_tie = false;
    for (std::size_t i = 1; i < p.size(); ++i) adjacent_tie |= p[i] == p[i - 1];
    if (!adjacent_tie) continue;
    ++with_ties;
    if (strict.search(p).stats.phase2_candidates > weak.search(p).stats.phase2_candidates) {
      c.expect(false, "strict candidates exceeded weak candidates");
      return c;
    }
  }
  c.expect(with_ties >= 1000, "generator produced too few tie-bearing patterns");
  c.detail = std::to_string(with_ties) + " tie-bearing patterns checked";
  return c;
}

// ---- criterion 9: fm-index correctness --------------------------------------

Check criterion9() {
  Check c;
  std::mt19937_64 rng(99);
  // exhaustive substring counts for |T_o| <= 64, alphabets up to size 8
  for (int rep = 0; rep < 60; ++rep) {
    std::uint32_t q = 4 + rng() % 4;
    std::size_t n = 1 + rng() % 64;
    OrderComponent to(n);
    for (std::size_t i = 0; i < n; ++i)
      to[i] = static_cast<Symbol>(rng() % std::min<std::uint64_t>(q, i + 1));
    CsaIndex csa = CsaIndex::build(to, 4, {q, Mode::weak});
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t len = 1; i + len <= n; ++len) {
        std::span<const Symbol> pat(to.data() + i, len);
        if (csa.search(pat).size() != oracle::count_occurrences(to, pat)) {
          c.expect(false, "exhaustive count mismatch");
          return c;
        }
      }
    }
  }

  // randomized counts at 1e5
  OrderComponent big(100000);
  for (std::size_t i = 0; i < big.size(); ++i)
    big[i] = static_cast<Symbol>(rng() % std::min<std::uint64_t>(4, i + 1));
  CsaIndex csa = CsaIndex::build(big, 32, {4, Mode::weak});
  for (int probe = 0; probe < 1000; ++probe) {
    std::size_t len = 1 + rng() % 12;
    std::size_t i = rng() % (big.size() - len);
    std::span<const Symbol> pat(big.data() + i, len);
    if (csa.search(pat).size() != oracle::count_occurrences(big, pat)) {
      c.expect(false, "randomized count mismatch");
      return c;
    }
  }

  // locate with context on every row of the reference component
  const OrderComponent to = {0, 1, 2, 1, 0, 2, 3, 1};
  std::vector<std::uint32_t> s(to.size() + 1);
  for (std::size_t i = 0; i < to.size(); ++i) s[i] = to[i] + 1u;
  s.back() = 0;
  auto sa = oracle::suffix_array(s);
  for (std::uint32_t b : {1u, 2u, 4u}) {
    CsaIndex ref = CsaIndex::build(to, b, {4, Mode::weak});
    for (std::uint64_t row = 1; row < ref.row_count(); ++row) {
      CsaIndex::Located loc = ref.locate_with_context(row);
      std::uint64_t pos = sa[row] + 1;
      bool good = loc.pos == pos && loc.block == (pos - 1) / b &&
                  loc.prefix.size() == pos - 1 - loc.block * b;
      for (std::size_t i = 0; good && i < loc.prefix.size(); ++i)
        good = loc.prefix[i] == to[loc.block * b + i];
      if (!good) {
        c.expect(false, "locate mismatch at row " + std::to_string(row) + " B=" +
                            std::to_string(b));
        return c;
      }
    }
  }
  c.detail = "counts exhaustive+randomized, locate exact for B in {1,2,4}";
  return c;
}

struct Criterion {
  int number;
  const char* title;
  std::function<Check()> run;
};

const Criterion kCriteria[] = {
    {1, "round-trip fidelity across corpora, q, modes, coders, block sizes", criterion1},
    {2, "golden examples (order component, filter strings, intro matches)", criterion2},
    {3, "oracle equivalence of index search and scan on rwalk 1e5", criterion3},
    {4, "filter quality: median phase2/occurrences <= 2.0 on rwalk 1e6", criterion4},
    {5, "compression ballpark on rwalk 1e7 (total <= 0.45, csa <= 0.15)", criterion5},
    {6, "speedup sanity: indexed search >= 10x faster than scan on rwalk 1e7", criterion6},
    {7, "coder properties: exhaustive round-trip and length bounds", criterion7},
    {8, "enumeration bound: (q-1)! cap and strict <= weak candidates", criterion8},
    {9, "fm-index correctness: counts and locate", criterion9},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.push_back(std::atoi(argv[i]));
  int failures = 0;
  for (const Criterion& crit : kCriteria) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), crit.number) == wanted.end())
      continue;
    auto t0 = Clock::now();
    Check c = crit.run();
    double dt = seconds_since(t0);
    std::printf("%s  criterion %d: %s%s%s  [%.1fs]\n", c.ok ? "PASS" : "FAIL", crit.number,
                crit.title, c.detail.empty() ? "" : " — ", c.detail.c_str(), dt);
    std::fflush(stdout);
    failures += c.ok ? 0 : 1;
  }
  return failures;
}
