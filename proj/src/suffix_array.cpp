#include "opmi/suffix_array.hpp"

#include <limits>

namespace opmi {

namespace {

constexpr std::uint32_t kEmpty = std::numeric_limits<std::uint32_t>::max();

void fill_bucket_bounds(std::span<const std::uint32_t> s, std::uint32_t sigma,
                        std::vector<std::uint32_t>& bkt, bool tails) {
  bkt.assign(sigma + 1, 0);
  for (std::uint32_t c : s) ++bkt[c + 1];
  for (std::uint32_t c = 1; c <= sigma; ++c) bkt[c] += bkt[c - 1];
  if (tails) {
    // bkt[c] = one past the last slot of bucket c; ascending so each slot is
    // read before it is overwritten
    for (std::uint32_t c = 1; c <= sigma; ++c) bkt[c - 1] = bkt[c];
  }
}

// One induction round: given LMS entries placed at their bucket tails in sa,
// derive the order of all L-suffixes then all S-suffixes.
void induce(std::span<const std::uint32_t> s, std::vector<std::uint32_t>& sa,
            const std::vector<bool>& is_s, std::uint32_t sigma,
            std::vector<std::uint32_t>& bkt) {
  const std::uint32_t n = static_cast<std::uint32_t>(s.size());
  fill_bucket_bounds(s, sigma, bkt, false);  // heads
  for (std::uint32_t i = 0; i < n; ++i) {
    std::uint32_t j = sa[i];
    if (j == kEmpty || j == 0) continue;
    if (!is_s[j - 1]) sa[bkt[s[j - 1]]++] = j - 1;
  }
  fill_bucket_bounds(s, sigma, bkt, true);  // tails
  for (std::uint32_t i = n; i > 0; --i) {
    std::uint32_t j = sa[i - 1];
    if (j == kEmpty || j == 0) continue;
    if (is_s[j - 1]) sa[--bkt[s[j - 1]]] = j - 1;
  }
}

void sais(std::span<const std::uint32_t> s, std::vector<std::uint32_t>& sa, std::uint32_t sigma) {
  const std::uint32_t n = static_cast<std::uint32_t>(s.size());
  sa.assign(n, kEmpty);
  if (n == 1) {
    sa[0] = 0;
    return;
  }

  std::vector<bool> is_s(n);
  is_s[n - 1] = true;
  for (std::uint32_t i = n - 1; i > 0; --i)
    is_s[i - 1] = s[i - 1] < s[i] || (s[i - 1] == s[i] && is_s[i]);

  auto is_lms = [&](std::uint32_t i) { return i > 0 && is_s[i] && !is_s[i - 1]; };

  // Round 1: place LMS positions at bucket tails in text order, induce.
  std::vector<std::uint32_t> bkt;
  fill_bucket_bounds(s, sigma, bkt, true);
  for (std::uint32_t i = n; i > 0; --i)
    if (is_lms(i - 1)) sa[--bkt[s[i - 1]]] = i - 1;
  induce(s, sa, is_s, sigma, bkt);

  // Collect LMS in induced order and name LMS substrings.
  std::vector<std::uint32_t> lms_order;
  lms_order.reserve(n / 2 + 1);
  for (std::uint32_t i = 0; i < n; ++i)
    if (sa[i] != kEmpty && is_lms(sa[i])) lms_order.push_back(sa[i]);

  const std::uint32_t m = static_cast<std::uint32_t>(lms_order.size());
  std::vector<std::uint32_t> name_of(n, kEmpty);
  std::uint32_t names = 0;
  std::uint32_t prev = kEmpty;
  for (std::uint32_t r = 0; r < m; ++r) {
    std::uint32_t cur = lms_order[r];
    if (prev == kEmpty) {
      name_of[cur] = names++;
    } else {
      // compare LMS substrings starting at prev and cur, inclusive of the
      // closing LMS position
      bool same = true;
      for (std::uint32_t d = 0;; ++d) {
        if (s[prev + d] != s[cur + d] || is_s[prev + d] != is_s[cur + d]) {
          same = false;
          break;
        }
        if (d > 0 && (is_lms(prev + d) || is_lms(cur + d))) {
          same = is_lms(prev + d) && is_lms(cur + d);
          break;
        }
      }
      if (!same) ++names;
      name_of[cur] = names - 1;
    }
    prev = cur;
  }

  // LMS positions in text order with their names form the reduced problem.
  std::vector<std::uint32_t> lms_text;
  lms_text.reserve(m);
  std::vector<std::uint32_t> reduced;
  reduced.reserve(m);
  for (std::uint32_t i = 0; i < n; ++i) {
    if (name_of[i] != kEmpty) {
      lms_text.push_back(i);
      reduced.push_back(name_of[i]);
    }
  }

  std::vector<std::uint32_t> lms_sorted(m);
  if (names == m) {
    for (std::uint32_t r = 0; r < m; ++r) lms_sorted[reduced[r]] = lms_text[r];
  } else {
    std::vector<std::uint32_t> sub_sa;
    sais(reduced, sub_sa, names);
    for (std::uint32_t r = 0; r < m; ++r) lms_sorted[r] = lms_text[sub_sa[r]];
  }

  // Round 2: place LMS at bucket tails in their true order, induce again.
  sa.assign(n, kEmpty);
  fill_bucket_bounds(s, sigma, bkt, true);
  for (std::uint32_t r = m; r > 0; --r) {
    std::uint32_t j = lms_sorted[r - 1];
    sa[--bkt[s[j]]] = j;
  }
  induce(s, sa, is_s, sigma, bkt);
}

}  // namespace

std::vector<std::uint32_t> suffix_array(std::span<const std::uint32_t> s, std::uint32_t sigma) {
  if (s.empty()) throw InvalidInput("suffix_array: empty input");
  if (s.size() >= kEmpty / 2) throw InvalidInput("suffix_array: input too large");
  for (std::size_t i = 0; i + 1 < s.size(); ++i)
    if (s[i] >= sigma || s[i] <= s.back())
      throw InvalidInput("suffix_array: sentinel must be unique and smallest");
  if (s.back() >= sigma) throw InvalidInput("suffix_array: symbol out of alphabet");
  std::vector<std::uint32_t> sa;
  sais(s, sa, sigma);
  return sa;
}

}  // namespace opmi
