#pragma once

#include <chrono>
#include <cstdint>
#include <vector>

#include "opmi/common.hpp"
#include "opmi/transform.hpp"

namespace opmi {

struct ScanReport {
  std::vector<std::uint64_t> positions;  // 1-based, strictly increasing
  std::chrono::duration<double, std::milli> elapsed{0};
};

/// Online reference search: verifies every text position against the pattern
/// tables, early-exiting per position. O(n p) worst case; the correctness
/// oracle and the no-index timing baseline.
ScanReport scan_search(const Sequence& t, const Sequence& p, Mode mode,
                       Exec exec = Exec::serial);

}  // namespace opmi
