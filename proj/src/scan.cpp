#include "opmi/scan.hpp"

#include <algorithm>
#include <span>

namespace opmi {

ScanReport scan_search(const Sequence& t, const Sequence& p, Mode mode, Exec exec) {
  if (p.empty()) throw InvalidInput("empty pattern");
  if (p.size() > t.size()) throw InvalidInput("pattern longer than the sequence");
  MatchTables tables = pattern_tables(p, mode);

  ScanReport report;
  const std::int64_t last = static_cast<std::int64_t>(t.size() - p.size());
  const auto t0 = std::chrono::steady_clock::now();
  if (exec == Exec::parallel) {
#ifdef _OPENMP
#pragma omp parallel
    {
      std::vector<std::uint64_t> local;
#pragma omp for schedule(static) nowait
      for (std::int64_t i = 0; i <= last; ++i) {
        if (verify_window(tables, std::span(t).subspan(static_cast<std::size_t>(i), p.size())))
          local.push_back(static_cast<std::uint64_t>(i) + 1);
      }
#pragma omp critical
      report.positions.insert(report.positions.end(), local.begin(), local.end());
    }
    std::sort(report.positions.begin(), report.positions.end());
#else
    exec = Exec::serial;
#endif
  }
  if (exec == Exec::serial) {
    for (std::int64_t i = 0; i <= last; ++i) {
      if (verify_window(tables, std::span(t).subspan(static_cast<std::size_t>(i), p.size())))
        report.positions.push_back(static_cast<std::uint64_t>(i) + 1);
    }
  }
  report.elapsed = std::chrono::steady_clock::now() - t0;
  return report;
}

}  // namespace opmi
