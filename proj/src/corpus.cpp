#include "opmi/corpus.hpp"

#include <fstream>
#include <limits>
#include <random>
#include <sstream>

namespace opmi {

Sequence read_corpus(const std::string& path) {
  std::ifstream in(path, std::ios::binary | std::ios::ate);
  if (!in) throw InvalidInput("cannot open corpus '" + path + "'");
  std::streamsize size = in.tellg();
  if (size % 4 != 0)
    throw InvalidInput("corpus '" + path + "' size is not a multiple of 4 bytes");
  in.seekg(0);
  Sequence t(static_cast<std::size_t>(size / 4));
  in.read(reinterpret_cast<char*>(t.data()), size);
  if (!in) throw InvalidInput("short read from corpus '" + path + "'");
  return t;
}

void write_corpus(const Sequence& t, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidInput("cannot open '" + path + "' for writing");
  out.write(reinterpret_cast<const char*>(t.data()),
            static_cast<std::streamsize>(t.size() * sizeof(Value)));
  if (!out) throw InvalidInput("short write to '" + path + "'");
}

std::vector<Sequence> read_patterns(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open patterns '" + path + "'");
  std::vector<Sequence> patterns;
  std::string line;
  std::uint64_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    Sequence p;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) {
      try {
        std::size_t used = 0;
        long long v = std::stoll(tok, &used);
        if (used != tok.size() || v < std::numeric_limits<Value>::min() ||
            v > std::numeric_limits<Value>::max())
          throw std::invalid_argument(tok);
        p.push_back(static_cast<Value>(v));
      } catch (const std::exception&) {
        throw InvalidInput("patterns '" + path + "' line " + std::to_string(lineno) +
                           ": token '" + tok + "' is not a 32-bit integer");
      }
    }
    if (!p.empty()) patterns.push_back(std::move(p));
  }
  return patterns;
}

void write_patterns(const std::vector<Sequence>& patterns, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw InvalidInput("cannot open '" + path + "' for writing");
  for (const Sequence& p : patterns) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (i) out << ' ';
      out << p[i];
    }
    out << '\n';
  }
  if (!out) throw InvalidInput("short write to '" + path + "'");
}

namespace {
// mt19937_64 with plain modulo keeps the byte streams independent of the
// standard library's distribution implementations. Bias is < 2^-59.
inline int step_21(std::mt19937_64& rng) { return static_cast<int>(rng() % 41) - 20; }
}  // namespace

Sequence gen_rwalk(std::uint64_t n, std::uint64_t seed) {
  if (n == 0) throw InvalidInput("corpus length must be positive");
  std::mt19937_64 rng(seed);
  Sequence t(n);
  std::int64_t x = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    x += step_21(rng);
    t[i] = static_cast<Value>(x);
  }
  return t;
}

Sequence gen_rand(std::uint64_t n, std::uint64_t seed) {
  if (n == 0) throw InvalidInput("corpus length must be positive");
  std::mt19937_64 rng(seed);
  Sequence t(n);
  for (std::uint64_t i = 0; i < n; ++i) t[i] = static_cast<Value>(step_21(rng));
  return t;
}

std::vector<Sequence> extract_patterns(const Sequence& t, std::uint64_t count,
                                       std::uint64_t length, std::uint64_t seed) {
  if (length == 0 || length > t.size())
    throw InvalidInput("pattern length must be in [1, corpus length]");
  std::mt19937_64 rng(seed);
  std::vector<Sequence> out;
  out.reserve(count);
  const std::uint64_t starts = t.size() - length + 1;
  for (std::uint64_t i = 0; i < count; ++i) {
    std::uint64_t s = rng() % starts;
    out.emplace_back(t.begin() + static_cast<std::ptrdiff_t>(s),
                     t.begin() + static_cast<std::ptrdiff_t>(s + length));
  }
  return out;
}

}  // namespace opmi
