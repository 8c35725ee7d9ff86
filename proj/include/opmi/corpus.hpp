#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "opmi/common.hpp"

namespace opmi {

/// Corpus files are raw little-endian signed 32-bit integers, no header.
Sequence read_corpus(const std::string& path);
void write_corpus(const Sequence& t, const std::string& path);

/// Pattern files are text: one pattern per line, space-separated decimals.
std::vector<Sequence> read_patterns(const std::string& path);
void write_patterns(const std::vector<Sequence>& patterns, const std::string& path);

/// Random walk with i.i.d. integer steps in [-20, 20], starting from 0.
/// Deterministic per seed.
Sequence gen_rwalk(std::uint64_t n, std::uint64_t seed);

/// I.i.d. uniform integers in [-20, 20]. Deterministic per seed.
Sequence gen_rand(std::uint64_t n, std::uint64_t seed);

/// `count` subsequences of length `length` copied from uniformly random start
/// positions (with replacement), so each has at least one occurrence.
std::vector<Sequence> extract_patterns(const Sequence& t, std::uint64_t count,
                                       std::uint64_t length, std::uint64_t seed);

}  // namespace opmi
