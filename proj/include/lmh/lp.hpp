#pragma once

// Exact rational phase-1 simplex (Bland's rule), enough linear programming
// for cone membership, relative-interior and redundancy queries.  No
// tolerances anywhere.

#include <cstddef>
#include <optional>
#include <vector>

#include "lmh/errors.hpp"
#include "lmh/matrix.hpp"

namespace lmh {

// Feasibility of { x >= 0 : a x = b }; returns a feasible point if any.
inline std::optional<std::vector<Rational>> solve_eq_nonneg(const QMatrix& a,
                                                            std::vector<Rational> b) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (b.size() != m) throw DimensionMismatch("solve_eq_nonneg");

  // tableau: columns [original | artificial | rhs]
  QMatrix t(m, n + m + 1);
  for (std::size_t i = 0; i < m; ++i) {
    Rational sign = b[i] < 0 ? Rational(-1) : Rational(1);
    for (std::size_t j = 0; j < n; ++j) t(i, j) = sign * a(i, j);
    t(i, n + i) = Rational(1);
    t(i, n + m) = sign * b[i];
  }
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

  // reduced costs for minimizing the artificial sum
  std::vector<Rational> obj(n + m, Rational(0));
  Rational value(0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n + m; ++j) obj[j] -= t(i, j);
    value -= t(i, n + m);
  }
  for (std::size_t j = n; j < n + m; ++j) obj[j] += Rational(1);

  while (true) {
    // Bland: smallest index with negative reduced cost
    std::size_t enter = n + m;
    for (std::size_t j = 0; j < n + m; ++j)
      if (obj[j] < 0) {
        enter = j;
        break;
      }
    if (enter == n + m) break;

    std::size_t leave = m;
    Rational best_ratio(0);
    for (std::size_t i = 0; i < m; ++i) {
      if (t(i, enter) <= 0) continue;
      Rational ratio = t(i, n + m) / t(i, enter);
      if (leave == m || ratio < best_ratio ||
          (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave == m) return std::nullopt;  // unbounded phase-1: cannot happen

    Rational piv = t(leave, enter);
    for (std::size_t j = 0; j <= n + m; ++j) t(leave, j) /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || t(i, enter) == 0) continue;
      Rational f = t(i, enter);
      for (std::size_t j = 0; j <= n + m; ++j) t(i, j) -= f * t(leave, j);
    }
    Rational fo = obj[enter];
    for (std::size_t j = 0; j < n + m; ++j) obj[j] -= fo * t(leave, j);
    value -= fo * t(leave, n + m);
    basis[leave] = enter;
  }

  if (value != 0) return std::nullopt;  // artificials cannot all vanish
  std::vector<Rational> x(n, Rational(0));
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < n) x[basis[i]] = t(i, n + m);
  return x;
}

// Is v a nonnegative combination of the given vectors?
inline bool in_nonneg_span(const std::vector<std::vector<Rational>>& gens,
                           const std::vector<Rational>& v) {
  bool v_zero = true;
  for (const auto& c : v)
    if (c != 0) v_zero = false;
  if (v_zero) return true;
  if (gens.empty()) return false;
  QMatrix a(v.size(), gens.size());
  for (std::size_t j = 0; j < gens.size(); ++j) {
    if (gens[j].size() != v.size()) throw DimensionMismatch("in_nonneg_span");
    for (std::size_t i = 0; i < v.size(); ++i) a(i, j) = gens[j][i];
  }
  return solve_eq_nonneg(a, v).has_value();
}

}  // namespace lmh
