#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "opmi/common.hpp"

namespace opmi {

/// Suffix array by induced sorting (SA-IS), linear time and O(n) words.
/// `s` must end with a unique smallest sentinel (s.back() strictly smaller
/// than every other element) and all values must lie in [0, sigma).
std::vector<std::uint32_t> suffix_array(std::span<const std::uint32_t> s, std::uint32_t sigma);

}  // namespace opmi
