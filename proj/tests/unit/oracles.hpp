#pragma once

// Brute-force reference computations shared by the unit tests. They avoid
// the library's algorithms on purpose.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

namespace oracle {

using IPoly = std::vector<long long>;  // lowest degree first

inline IPoly mul(const IPoly& a, const IPoly& b) {
  IPoly c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

inline void add_to(IPoly& acc, const IPoly& b, long long sign) {
  if (acc.size() < b.size()) acc.resize(b.size(), 0);
  for (size_t i = 0; i < b.size(); ++i) acc[i] += sign * b[i];
}

/// det(λI − M) by expansion over all permutations.
inline IPoly char_poly_leibniz(const std::vector<std::vector<long>>& m) {
  const size_t n = m.size();
  std::vector<size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  IPoly total{0};
  do {
    long long sign = 1;
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) sign = -sign;
    IPoly term{1};
    for (size_t i = 0; i < n; ++i) {
      IPoly entry{-m[i][perm[i]]};
      if (perm[i] == i) entry.push_back(1);
      term = mul(term, entry);
    }
    add_to(total, term, sign);
  } while (std::next_permutation(perm.begin(), perm.end()));
  while (total.size() > 1 && total.back() == 0) total.pop_back();
  return total;
}

/// Binary words of length n containing no forbidden factor.
inline uint64_t count_words_avoiding(int n, const std::vector<std::string>& forbidden) {
  uint64_t count = 0;
  for (uint64_t w = 0; w < (uint64_t{1} << n); ++w) {
    std::string s;
    for (int i = n - 1; i >= 0; --i) s.push_back((w >> i) & 1 ? '1' : '0');
    bool ok = std::none_of(forbidden.begin(), forbidden.end(),
                           [&](const std::string& f) { return s.find(f) != std::string::npos; });
    count += ok;
  }
  return count;
}

inline uint64_t fibonacci(int n) {  // F_1 = F_2 = 1
  uint64_t a = 0, b = 1;
  for (int i = 0; i < n; ++i) {
    uint64_t c = a + b;
    a = b;
    b = c;
  }
  return a;
}

inline const double kGoldenLog = std::log((1 + std::sqrt(5.0)) / 2);

}  // namespace oracle
