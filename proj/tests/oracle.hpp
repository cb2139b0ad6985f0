#pragma once

// Naive reference implementations used as test oracles. They work on raw
// row vectors and share no code with the library checkers.

#include <cstdint>
#include <functional>
#include <vector>

#include "nml/core.hpp"

namespace oracle {

using Rows = std::vector<std::uint32_t>;

inline Rows rows_of(const nml::ConsequenceTable& t) {
  Rows r;
  for (auto s : t.rows()) r.push_back(s.bits);
  return r;
}

inline bool sub(std::uint32_t a, std::uint32_t b) { return (a & ~b) == 0; }

inline bool inclusion(const Rows& c) {
  for (std::uint32_t a = 0; a < c.size(); ++a)
    if (!sub(a, c[a])) return false;
  return true;
}

inline bool cumulativity(const Rows& c) {
  for (std::uint32_t a = 0; a < c.size(); ++a)
    for (std::uint32_t b = 0; b < c.size(); ++b)
      if (sub(a, b) && sub(b, c[a]) && c[a] != c[b]) return false;
  return true;
}

inline bool idempotence(const Rows& c) {
  for (std::uint32_t a = 0; a < c.size(); ++a)
    if (c[c[a]] != c[a]) return false;
  return true;
}

inline bool cautious_monotonicity(const Rows& c) {
  for (std::uint32_t a = 0; a < c.size(); ++a)
    for (std::uint32_t b = 0; b < c.size(); ++b)
      if (sub(a, b) && sub(b, c[a]) && !sub(c[a], c[b])) return false;
  return true;
}

inline bool two_loop(const Rows& c) {
  for (std::uint32_t a = 0; a < c.size(); ++a)
    for (std::uint32_t b = 0; b < c.size(); ++b)
      if (sub(a, c[b]) && sub(b, c[a]) && c[a] != c[b]) return false;
  return true;
}

/// Every cycle A_0..A_{k-1} with A_i ⊆ C(A_{i+1 mod k}), 2 ≤ k ≤ max_n,
/// enumerated directly over all k-tuples of subsets.
inline bool loop(const Rows& c, int max_n) {
  const std::uint32_t n = static_cast<std::uint32_t>(c.size());
  for (int k = 2; k <= max_n; ++k) {
    std::vector<std::uint32_t> cyc(static_cast<std::size_t>(k), 0);
    std::function<bool(int)> rec = [&](int i) -> bool {
      if (i == k) {
        if (!sub(cyc[static_cast<std::size_t>(k - 1)], c[cyc[0]])) return false;
        for (int j = 1; j < k; ++j)
          if (c[cyc[static_cast<std::size_t>(j)]] != c[cyc[0]]) return true;
        return false;
      }
      for (std::uint32_t s = 0; s < n; ++s) {
        if (i > 0 && !sub(cyc[static_cast<std::size_t>(i - 1)], c[s])) continue;
        cyc[static_cast<std::size_t>(i)] = s;
        if (rec(i + 1)) return true;
      }
      return false;
    };
    if (rec(0)) return false;
  }
  return true;
}

inline Rows theories(const Rows& c) {
  Rows out;
  for (std::uint32_t a = 0; a < c.size(); ++a)
    if (c[a] == a) out.push_back(a);
  return out;
}

/// Intersection of the theories containing A, L if none.
inline std::uint32_t cn(const Rows& c, std::uint32_t a) {
  std::uint32_t acc = static_cast<std::uint32_t>(c.size() - 1);
  for (auto t : theories(c))
    if (sub(a, t)) acc &= t;
  return acc;
}

inline Rows maximal_consistent(const Rows& c) {
  const std::uint32_t full = static_cast<std::uint32_t>(c.size() - 1);
  Rows out;
  for (std::uint32_t a = 0; a < c.size(); ++a) {
    if (c[a] == full) continue;
    bool maximal = true;
    for (std::uint32_t b = 0; b < c.size(); ++b)
      if (b != a && sub(a, b) && c[b] != full) maximal = false;
    if (maximal) out.push_back(a);
  }
  return out;
}

/// T ≤ S iff some A ⊆ S has C(A) = T.
inline bool leq(const Rows& c, std::uint32_t t, std::uint32_t s) {
  for (std::uint32_t a = 0; a < c.size(); ++a)
    if (sub(a, s) && c[a] == t) return true;
  return false;
}

/// Transitive closure of the strict order on the theory list, by
/// Floyd–Warshall; true iff some theory is <⁺ itself.
inline bool lt_plus_reflexive_somewhere(const Rows& c) {
  const Rows th = theories(c);
  const std::size_t n = th.size();
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r[i][j] = i != j && leq(c, th[i], th[j]);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (r[i][k] && r[k][j]) r[i][j] = true;
  for (std::size_t i = 0; i < n; ++i)
    if (r[i][i]) return true;
  return false;
}

}  // namespace oracle
