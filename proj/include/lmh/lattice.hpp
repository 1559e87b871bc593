#pragma once

// Integer-lattice utilities: Smith and Hermite normal forms, lattice
// subgroups with cached Smith data, invariant ranks of commuting
// unipotent operators.

#include <algorithm>
#include <cstddef>
#include <tuple>
#include <vector>

#include "lmh/errors.hpp"
#include "lmh/matrix.hpp"
#include "lmh/scalars.hpp"
#include "lmh/subspace.hpp"

namespace lmh {

using IMatrix = Matrix<Int>;

inline bool scalar_is_zero(const Int& x) { return x == 0; }

inline IMatrix to_integer(const QMatrix& m) {
  IMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!is_integer(m(i, j))) throw error("matrix entry not an integer");
      r(i, j) = num(m(i, j));
    }
  return r;
}

inline QMatrix to_rational(const IMatrix& m) {
  QMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  return r;
}

struct SmithForm {
  IMatrix u;  // rows x rows, |det| = 1
  IMatrix d;  // rows x cols diagonal, d1 | d2 | ...
  IMatrix v;  // cols x cols, |det| = 1
  std::vector<Int> divisors;  // diagonal, zeros trailing
};

// m = u * d * v with u, v unimodular and d diagonal with divisibility chain.
inline SmithForm smith_form(const IMatrix& m) {
  std::size_t rows = m.rows(), cols = m.cols();
  IMatrix a = m;
  IMatrix u = IMatrix::identity(rows);
  IMatrix v = IMatrix::identity(cols);

  auto swap_rows = [&](std::size_t i, std::size_t j) {
    for (std::size_t c = 0; c < cols; ++c) std::swap(a(i, c), a(j, c));
    for (std::size_t c = 0; c < rows; ++c) std::swap(u(c, i), u(c, j));
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    for (std::size_t r = 0; r < rows; ++r) std::swap(a(r, i), a(r, j));
    for (std::size_t r = 0; r < cols; ++r) std::swap(v(i, r), v(j, r));
  };
  // row_i -= q * row_j, with the inverse operation folded into u.
  auto add_row = [&](std::size_t i, std::size_t j, const Int& q) {
    for (std::size_t c = 0; c < cols; ++c) a(i, c) -= q * a(j, c);
    for (std::size_t c = 0; c < rows; ++c) u(c, j) += q * u(c, i);
  };
  auto add_col = [&](std::size_t i, std::size_t j, const Int& q) {
    for (std::size_t r = 0; r < rows; ++r) a(r, i) -= q * a(r, j);
    for (std::size_t r = 0; r < cols; ++r) v(j, r) += q * v(i, r);
  };
  auto negate_row = [&](std::size_t i) {
    for (std::size_t c = 0; c < cols; ++c) a(i, c) = -a(i, c);
    for (std::size_t c = 0; c < rows; ++c) u(c, i) = -u(c, i);
  };

  std::size_t t = 0;
  std::size_t limit = std::min(rows, cols);
  while (t < limit) {
    // pick the nonzero entry of least absolute value in the remaining block
    bool found = false;
    std::size_t pi = t, pj = t;
    Int best = 0;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j) {
        if (a(i, j) == 0) continue;
        Int mag = abs(a(i, j));
        if (!found || mag < best) {
          found = true;
          best = mag;
          pi = i;
          pj = j;
        }
      }
    if (!found) break;
    swap_rows(t, pi);
    swap_cols(t, pj);
    if (a(t, t) < 0) negate_row(t);

    bool clean = true;
    for (std::size_t i = t + 1; i < rows; ++i) {
      if (a(i, t) == 0) continue;
      Int q = a(i, t) / a(t, t);
      add_row(i, t, q);
      if (a(i, t) != 0) clean = false;
    }
    for (std::size_t j = t + 1; j < cols; ++j) {
      if (a(t, j) == 0) continue;
      Int q = a(t, j) / a(t, t);
      add_col(j, t, q);
      if (a(t, j) != 0) clean = false;
    }
    if (!clean) continue;  // remainders left, pick a smaller pivot again

    // enforce divisibility: fold any non-multiple into the pivot block
    bool divides_all = true;
    for (std::size_t i = t + 1; i < rows && divides_all; ++i)
      for (std::size_t j = t + 1; j < cols && divides_all; ++j)
        if (a(i, j) % a(t, t) != 0) {
          add_row(t, i, Int(-1));  // row_t += row_i
          divides_all = false;
        }
    if (divides_all) ++t;
  }

  SmithForm s;
  s.u = std::move(u);
  s.v = std::move(v);
  s.d = IMatrix(rows, cols);
  s.divisors.assign(limit, Int(0));
  for (std::size_t i = 0; i < limit; ++i) {
    s.d(i, i) = a(i, i);
    s.divisors[i] = a(i, i);
  }
  return s;
}

// Hermite normal form (row style): h = t * m with t unimodular, h upper
// staircase with positive pivots and reduced entries above them.
inline IMatrix hermite_form(const IMatrix& m) {
  IMatrix a = m;
  std::size_t rows = a.rows(), cols = a.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    // gcd-reduce the column below r
    while (true) {
      std::size_t pivot = rows;
      for (std::size_t i = r; i < rows; ++i)
        if (a(i, c) != 0 && (pivot == rows || abs(a(i, c)) < abs(a(pivot, c))))
          pivot = i;
      if (pivot == rows) break;
      if (pivot != r)
        for (std::size_t j = 0; j < cols; ++j) std::swap(a(pivot, j), a(r, j));
      if (a(r, c) < 0)
        for (std::size_t j = 0; j < cols; ++j) a(r, j) = -a(r, j);
      bool done = true;
      for (std::size_t i = r + 1; i < rows; ++i) {
        if (a(i, c) == 0) continue;
        Int q = a(i, c) / a(r, c);
        for (std::size_t j = 0; j < cols; ++j) a(i, j) -= q * a(r, j);
        if (a(i, c) != 0) done = false;
      }
      if (done) break;
    }
    if (a(r, c) == 0) continue;
    for (std::size_t i = 0; i < r; ++i) {
      Int q = a(i, c) / a(r, c);
      if (a(i, c) < 0 && a(i, c) % a(r, c) != 0) q -= 1;  // floor division
      if (q == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) a(i, j) -= q * a(r, j);
    }
    ++r;
  }
  IMatrix h(r, cols);
  for (std::size_t i = 0; i < r; ++i) h.set_row(i, a.row(i));
  return h;
}

// Finitely generated subgroup of Z^ambient_rank given by generator rows.
class LatticeSubgroup {
public:
  LatticeSubgroup() = default;
  LatticeSubgroup(std::size_t ambient_rank, IMatrix generators)
      : ambient_rank_(ambient_rank), generators_(std::move(generators)) {
    if (generators_.cols() != ambient_rank_)
      throw DimensionMismatch("LatticeSubgroup generators");
    basis_ = hermite_form(generators_);
    smith_ = smith_form(generators_);
  }

  std::size_t ambient_rank() const { return ambient_rank_; }
  std::size_t rank() const { return basis_.rows(); }
  const IMatrix& generators() const { return generators_; }
  const IMatrix& basis() const { return basis_; }  // Hermite basis rows
  const SmithForm& smith() const { return smith_; }

  bool contains(const std::vector<Int>& v) const {
    // reduce against the Hermite basis
    std::vector<Int> r = v;
    std::size_t row = 0;
    for (std::size_t c = 0; c < ambient_rank_ && row < basis_.rows(); ++c) {
      if (basis_(row, c) == 0) continue;
      if (r[c] % basis_(row, c) == 0) {
        Int q = r[c] / basis_(row, c);
        for (std::size_t j = 0; j < ambient_rank_; ++j)
          r[j] -= q * basis_(row, j);
      }
      ++row;
    }
    return std::all_of(r.begin(), r.end(), [](const Int& x) { return x == 0; });
  }

private:
  std::size_t ambient_rank_ = 0;
  IMatrix generators_;
  IMatrix basis_;
  SmithForm smith_;
};

// Rank over Q of the common fixed space of commuting unipotent operators.
inline std::size_t invariants_rank(std::size_t ambient_rank,
                                   const std::vector<IMatrix>& gs,
                                   bool assert_unipotent = true) {
  QSubspace fixed = QSubspace::full(ambient_rank);
  for (std::size_t i = 0; i < gs.size(); ++i) {
    const IMatrix& g = gs[i];
    if (g.rows() != ambient_rank || g.cols() != ambient_rank)
      throw DimensionMismatch("invariants_rank operator shape");
    for (std::size_t j = i + 1; j < gs.size(); ++j)
      if (!commute(g, gs[j])) throw NonCommuting("invariants_rank");
    QMatrix gm = to_rational(g) - QMatrix::identity(ambient_rank);
    if (assert_unipotent && !is_nilpotent(gm))
      throw NotUnipotent("invariants_rank");
    fixed = intersect(fixed, kernel_space(gm));
  }
  return fixed.dim();
}

}  // namespace lmh
