// Compares the serial reference kernels against their OpenMP versions and the
// indexed search against the scan baseline. Wall-clock only, no framework.
//
//   opmi_bench [n] [patterns]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "opmi/corpus.hpp"
#include "opmi/delta_store.hpp"
#include "opmi/scan.hpp"
#include "opmi/search.hpp"

using namespace opmi;
using Clock = std::chrono::steady_clock;

namespace {

template <typename F>
double time_s(F&& f) {
  auto t0 = Clock::now();
  f();
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void row(const char* name, double serial, double parallel) {
  std::printf("%-24s %10.3fs %10.3fs %8.2fx\n", name, serial, parallel, serial / parallel);
}

}  // namespace

int main(int argc, char** argv) {
  std::uint64_t n = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 4000000;
  std::uint64_t npat = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 50;

#ifdef _OPENMP
  std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
  std::printf("openmp: not compiled in (parallel column runs serially)\n");
#endif
  std::printf("corpus: rwalk, %llu values\n\n", static_cast<unsigned long long>(n));
  std::printf("%-24s %11s %11s %9s\n", "kernel", "serial", "parallel", "speedup");

  Sequence t = gen_rwalk(n, 7);
  OrderParams params{4, Mode::weak};

  OrderComponent to;
  double s = time_s([&] { to = order_component(t, params, Exec::serial); });
  double p = time_s([&] { (void)order_component(t, params, Exec::parallel); });
  row("order_component", s, p);

  DeltaComponent td;
  s = time_s([&] { td = delta_component(t, to, params, Exec::serial); });
  p = time_s([&] { (void)delta_component(t, to, params, Exec::parallel); });
  row("delta_component", s, p);

  CompressedDeltaStore store;
  s = time_s([&] { store = compress_deltas(t, to, td, 32, Coder::lsk, params, Exec::serial); });
  p = time_s([&] { (void)compress_deltas(t, to, td, 32, Coder::lsk, params, Exec::parallel); });
  row("compress_deltas", s, p);

  s = time_s([&] { (void)decompress_all(store, to, Exec::serial); });
  p = time_s([&] { (void)decompress_all(store, to, Exec::parallel); });
  row("decompress_all", s, p);

  auto patterns = extract_patterns(t, npat, 20, 99);
  s = time_s([&] {
    for (const auto& pat : patterns) (void)scan_search(t, pat, params.mode, Exec::serial);
  });
  p = time_s([&] {
    for (const auto& pat : patterns) (void)scan_search(t, pat, params.mode, Exec::parallel);
  });
  row("scan_search (batch)", s, p);

  std::printf("\nindex vs serial scan, %llu patterns of length 20\n",
              static_cast<unsigned long long>(npat));
  OpmIndex index = OpmIndex::build(t, params, 32, Coder::lsk, Exec::parallel);
  double search_t = time_s([&] {
    for (const auto& pat : patterns) (void)index.search(pat);
  });
  std::printf("%-24s %10.3fs\n", "indexed search (batch)", search_t);
  std::printf("%-24s %10.3fs (%.0fx)\n", "scan (batch, serial)", s, s / search_t);
  return 0;
}
