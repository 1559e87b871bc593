#pragma once

// Increasing (weight) and decreasing (Hodge) filtrations with explicit
// windows, graded pieces with deterministic lifts, induced filtrations,
// and the direct-sum / tensor / Hom constructors of filtered nilpotent
// objects.

#include <algorithm>
#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "lmh/errors.hpp"
#include "lmh/matrix.hpp"
#include "lmh/subspace.hpp"

namespace lmh {

// Increasing filtration: step(w) constant outside [lo, hi], step(lo-1) = 0,
// step(hi) = ambient.
template <class T>
class Filtration {
public:
  Filtration() = default;
  Filtration(std::size_t ambient_dim, int lo, int hi,
             std::map<int, Subspace<T>> steps)
      : ambient_(ambient_dim), lo_(lo), hi_(hi), steps_(std::move(steps)) {
    validate();
  }

  // Single-jump filtration: 0 below w, everything from w on.
  static Filtration pure(std::size_t ambient_dim, int w) {
    std::map<int, Subspace<T>> steps;
    steps[w] = Subspace<T>::full(ambient_dim);
    return Filtration(ambient_dim, w, w, std::move(steps));
  }

  std::size_t ambient() const { return ambient_; }
  int lo() const { return lo_; }
  int hi() const { return hi_; }

  const Subspace<T>& step(int w) const {
    if (w < lo_) return zero_;
    if (w > hi_) return steps_.at(hi_);
    return steps_.at(w);
  }

  // Equality as functions Z -> subspaces (windows may differ).
  friend bool operator==(const Filtration& a, const Filtration& b) {
    if (a.ambient_ != b.ambient_) return false;
    int lo = std::min(a.lo_, b.lo_), hi = std::max(a.hi_, b.hi_);
    for (int w = lo; w <= hi; ++w)
      if (a.step(w) != b.step(w)) return false;
    return true;
  }
  friend bool operator!=(const Filtration& a, const Filtration& b) {
    return !(a == b);
  }

  // Jumps only; drops steps equal to their predecessor, keeps window tight.
  Filtration normalized() const {
    int lo = lo_;
    while (lo < hi_ && step(lo).is_zero()) ++lo;
    int hi = hi_;
    while (hi > lo && step(hi - 1) == step(hi)) --hi;
    std::map<int, Subspace<T>> steps;
    for (int w = lo; w <= hi; ++w) steps[w] = step(w);
    return Filtration(ambient_, lo, hi, std::move(steps));
  }

  Filtration shifted(int by) const {
    std::map<int, Subspace<T>> steps;
    for (const auto& [w, s] : steps_) steps[w + by] = s;
    return Filtration(ambient_, lo_ + by, hi_ + by, std::move(steps));
  }

private:
  void validate() {
    zero_ = Subspace<T>::zero(ambient_);
    if (lo_ > hi_) throw error("filtration window empty");
    const Subspace<T>* prev = &zero_;
    for (int w = lo_; w <= hi_; ++w) {
      auto it = steps_.find(w);
      if (it == steps_.end()) throw error("filtration step missing in window");
      if (it->second.ambient() != ambient_)
        throw DimensionMismatch("filtration step ambient");
      if (!it->second.contains(*prev)) throw error("filtration not monotone");
      prev = &it->second;
    }
    if (!steps_.at(hi_).is_full()) throw error("filtration top must be ambient");
  }

  std::size_t ambient_ = 0;
  int lo_ = 0;
  int hi_ = 0;
  std::map<int, Subspace<T>> steps_;
  Subspace<T> zero_;
};

using IncFiltration = Filtration<Rational>;          // weight filtrations
using CIncFiltration = Filtration<GaussRational>;    // their complexifications

inline CIncFiltration complexify(const IncFiltration& w) {
  std::map<int, CSubspace> steps;
  for (int k = w.lo(); k <= w.hi(); ++k) steps[k] = complexify(w.step(k));
  return CIncFiltration(w.ambient(), w.lo(), w.hi(), std::move(steps));
}

// Decreasing filtration F^p, antitone, with F^lo = ambient and F^(hi+1) = 0.
class DecFiltration {
public:
  DecFiltration() = default;
  DecFiltration(std::size_t ambient_dim, int lo, int hi,
                std::map<int, CSubspace> steps)
      : ambient_(ambient_dim), lo_(lo), hi_(hi), steps_(std::move(steps)) {
    zero_ = CSubspace::zero(ambient_);
    if (lo_ > hi_) throw error("Hodge filtration window empty");
    const CSubspace* prev = nullptr;
    for (int p = lo_; p <= hi_; ++p) {
      auto it = steps_.find(p);
      if (it == steps_.end()) throw error("Hodge filtration step missing");
      if (it->second.ambient() != ambient_)
        throw DimensionMismatch("Hodge filtration step ambient");
      if (prev && !prev->contains(it->second))
        throw error("Hodge filtration not antitone");
      prev = &it->second;
    }
    if (!steps_.at(lo_).is_full())
      throw error("Hodge filtration bottom must be ambient");
  }

  std::size_t ambient() const { return ambient_; }
  int lo() const { return lo_; }
  int hi() const { return hi_; }

  const CSubspace& step(int p) const {
    if (p < lo_) return steps_.at(lo_);
    if (p > hi_) return zero_;
    return steps_.at(p);
  }

  friend bool operator==(const DecFiltration& a, const DecFiltration& b) {
    if (a.ambient_ != b.ambient_) return false;
    int lo = std::min(a.lo_, b.lo_), hi = std::max(a.hi_, b.hi_);
    for (int p = lo; p <= hi; ++p)
      if (a.step(p) != b.step(p)) return false;
    return true;
  }
  friend bool operator!=(const DecFiltration& a, const DecFiltration& b) {
    return !(a == b);
  }

  DecFiltration apply(const CMatrix& g) const {
    std::map<int, CSubspace> steps;
    for (int p = lo_; p <= hi_; ++p) steps[p] = step(p).image_under(g);
    return DecFiltration(ambient_, lo_, hi_, std::move(steps));
  }

private:
  std::size_t ambient_ = 0;
  int lo_ = 0;
  int hi_ = 0;
  std::map<int, CSubspace> steps_;
  CSubspace zero_;
};

// Quotient step(w)/step(w-1) with the echelon-pivot lift: the lift basis is
// the set of canonical basis rows of step(w) whose pivot is not a pivot of
// step(w-1); those rows span a complement of step(w-1) in step(w).
template <class T>
struct GradedPiece {
  std::size_t ambient = 0;
  std::size_t dim = 0;
  Matrix<T> lift;       // dim x ambient, rows lift the chosen gr basis
  Matrix<T> below;      // basis of step(w-1)
  Matrix<T> solve_mat;  // [below; lift] stacked, for coordinates

  // Coordinates of v in gr (requires v in step(w)).
  std::vector<T> project(const std::vector<T>& v) const {
    auto coords = solve(Matrix<T>(solve_mat.transpose()), v);
    if (!coords) throw error("vector not in filtration step");
    return std::vector<T>(coords->begin() + below.rows(), coords->end());
  }

  std::vector<T> lift_vec(const std::vector<T>& gr_coords) const {
    if (gr_coords.size() != dim) throw DimensionMismatch("graded lift");
    std::vector<T> v(ambient, T(0));
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < ambient; ++j)
        v[j] += gr_coords[i] * lift(i, j);
    return v;
  }

  // Induced matrix of f on gr; requires f(step(w)) within step(w) and
  // f(step(w-1)) within step(w-1).
  Matrix<T> induced_map(const Matrix<T>& f) const {
    Matrix<T> m(dim, dim);
    for (std::size_t j = 0; j < dim; ++j) {
      auto img = project(f * lift.row(j));
      for (std::size_t i = 0; i < dim; ++i) m(i, j) = img[i];
    }
    return m;
  }

  // Image of a subspace of the ambient in gr coordinates.
  Subspace<T> project_subspace(const Subspace<T>& s,
                               const Subspace<T>& step_w) const {
    Subspace<T> inside = intersect(s, step_w);
    std::vector<std::vector<T>> rows;
    for (std::size_t i = 0; i < inside.dim(); ++i)
      rows.push_back(project(inside.basis().row(i)));
    return Subspace<T>::span_of(rows, dim);
  }
};

template <class T>
GradedPiece<T> graded_piece(const Filtration<T>& f, int w) {
  const Subspace<T>& ww = f.step(w);
  const Subspace<T>& ww1 = f.step(w - 1);
  GradedPiece<T> g;
  g.ambient = f.ambient();
  g.dim = ww.dim() - ww1.dim();
  std::vector<bool> below_pivot(f.ambient(), false);
  for (auto p : ww1.pivots()) below_pivot[p] = true;
  Matrix<T> lift(g.dim, f.ambient());
  std::size_t r = 0;
  for (std::size_t i = 0; i < ww.dim(); ++i)
    if (!below_pivot[ww.pivots()[i]]) lift.set_row(r++, ww.basis().row(i));
  require(r == g.dim, "graded piece lift row count");
  g.lift = std::move(lift);
  g.below = ww1.basis();
  Matrix<T> stacked(ww.dim(), f.ambient());
  for (std::size_t i = 0; i < ww1.dim(); ++i) stacked.set_row(i, g.below.row(i));
  for (std::size_t i = 0; i < g.dim; ++i)
    stacked.set_row(ww1.dim() + i, g.lift.row(i));
  g.solve_mat = std::move(stacked);
  return g;
}

// Filtration induced by m on the graded piece gr_w of w.
template <class T>
Filtration<T> induced_on_graded(const Filtration<T>& m, const Filtration<T>& w,
                                int weight) {
  auto gr = graded_piece(w, weight);
  std::map<int, Subspace<T>> steps;
  for (int k = m.lo(); k <= m.hi(); ++k)
    steps[k] = gr.project_subspace(m.step(k), w.step(weight));
  return Filtration<T>(gr.dim, m.lo(), m.hi(), std::move(steps)).normalized();
}

// Restriction of m to the subspace s, expressed in s's canonical basis.
template <class T>
Filtration<T> restricted_to(const Filtration<T>& m, const Subspace<T>& s) {
  std::map<int, Subspace<T>> steps;
  Matrix<T> bt = s.basis().transpose();
  for (int k = m.lo(); k <= m.hi(); ++k) {
    Subspace<T> cut = intersect(m.step(k), s);
    std::vector<std::vector<T>> rows;
    for (std::size_t i = 0; i < cut.dim(); ++i) {
      auto coords = solve(bt, cut.basis().row(i));
      require(coords.has_value(), "restriction coordinates");
      rows.push_back(*coords);
    }
    steps[k] = Subspace<T>::span_of(rows, s.dim());
  }
  steps[m.hi()] = Subspace<T>::full(s.dim());
  return Filtration<T>(s.dim(), m.lo(), m.hi(), std::move(steps)).normalized();
}

// Quotient filtration on ambient/s, in the echelon-complement coordinates of s.
template <class T>
Filtration<T> quotient_by(const Filtration<T>& m, const Subspace<T>& s) {
  // complement coordinates: non-pivot columns of s
  std::vector<bool> piv(m.ambient(), false);
  for (auto p : s.pivots()) piv[p] = true;
  std::vector<std::size_t> comp_cols;
  for (std::size_t c = 0; c < m.ambient(); ++c)
    if (!piv[c]) comp_cols.push_back(c);
  std::map<int, Subspace<T>> steps;
  for (int k = m.lo(); k <= m.hi(); ++k) {
    Subspace<T> sum = m.step(k) + s;
    std::vector<std::vector<T>> rows;
    for (std::size_t i = 0; i < sum.dim(); ++i) {
      std::vector<T> red = s.reduce(sum.basis().row(i));
      std::vector<T> qrow(comp_cols.size());
      for (std::size_t j = 0; j < comp_cols.size(); ++j)
        qrow[j] = red[comp_cols[j]];
      rows.push_back(std::move(qrow));
    }
    steps[k] = Subspace<T>::span_of(rows, comp_cols.size());
  }
  return Filtration<T>(comp_cols.size(), m.lo(), m.hi(), std::move(steps))
      .normalized();
}

// A filtered vector space with a compatible nilpotent endomorphism.
struct FilteredNilp {
  std::size_t dim = 0;
  IncFiltration w;
  QMatrix n;

  FilteredNilp() = default;
  FilteredNilp(IncFiltration w_, QMatrix n_)
      : dim(w_.ambient()), w(std::move(w_)), n(std::move(n_)) {
    if (n.rows() != dim || n.cols() != dim)
      throw DimensionMismatch("FilteredNilp operator shape");
    if (!is_nilpotent(n)) throw NotNilpotent("FilteredNilp");
    for (int k = w.lo(); k <= w.hi(); ++k)
      if (!w.step(k).contains(w.step(k).image_under(n)))
        throw error("operator does not preserve the filtration");
  }
};

enum class CombineOp { DirectSum, Tensor, Hom };

inline IncFiltration direct_sum_filtration(const IncFiltration& a,
                                           const IncFiltration& b) {
  std::size_t n1 = a.ambient(), n2 = b.ambient();
  int lo = std::min(a.lo(), b.lo()), hi = std::max(a.hi(), b.hi());
  std::map<int, QSubspace> steps;
  for (int k = lo; k <= hi; ++k) {
    std::vector<std::vector<Rational>> rows;
    for (std::size_t i = 0; i < a.step(k).dim(); ++i) {
      std::vector<Rational> r(n1 + n2, Rational(0));
      for (std::size_t j = 0; j < n1; ++j) r[j] = a.step(k).basis()(i, j);
      rows.push_back(std::move(r));
    }
    for (std::size_t i = 0; i < b.step(k).dim(); ++i) {
      std::vector<Rational> r(n1 + n2, Rational(0));
      for (std::size_t j = 0; j < n2; ++j) r[n1 + j] = b.step(k).basis()(i, j);
      rows.push_back(std::move(r));
    }
    steps[k] = QSubspace::span_of(rows, n1 + n2);
  }
  return IncFiltration(n1 + n2, lo, hi, std::move(steps)).normalized();
}

inline IncFiltration tensor_filtration(const IncFiltration& a,
                                       const IncFiltration& b) {
  std::size_t n1 = a.ambient(), n2 = b.ambient();
  int lo = a.lo() + b.lo(), hi = a.hi() + b.hi();
  std::map<int, QSubspace> steps;
  for (int k = lo; k <= hi; ++k) {
    std::vector<std::vector<Rational>> rows;
    for (int j = a.lo(); j <= a.hi(); ++j) {
      int l = k - j;  // step_j (x) step_(k-j)
      const QSubspace& sa = a.step(j);
      const QSubspace& sb = b.step(l);
      for (std::size_t p = 0; p < sa.dim(); ++p)
        for (std::size_t q = 0; q < sb.dim(); ++q) {
          std::vector<Rational> r(n1 * n2, Rational(0));
          for (std::size_t x = 0; x < n1; ++x)
            for (std::size_t y = 0; y < n2; ++y)
              r[x * n2 + y] = sa.basis()(p, x) * sb.basis()(q, y);
          rows.push_back(std::move(r));
        }
    }
    steps[k] = QSubspace::span_of(rows, n1 * n2);
  }
  return IncFiltration(n1 * n2, lo, hi, std::move(steps)).normalized();
}

// Hom filtration: step(k) = {f : f a.step(j) within b.step(j+k) for all j},
// f encoded row-major as a (dim b) x (dim a) matrix.
inline IncFiltration hom_filtration(const IncFiltration& a,
                                    const IncFiltration& b) {
  std::size_t n1 = a.ambient(), n2 = b.ambient();
  int lo = b.lo() - a.hi(), hi = b.hi() - a.lo();
  std::map<int, QSubspace> steps;
  for (int k = lo; k <= hi; ++k) {
    // linear conditions: eqs(b.step(j+k)) * F * v = 0 for v in basis(a.step(j))
    std::vector<std::vector<Rational>> cond;
    for (int j = a.lo(); j <= a.hi(); ++j) {
      const QSubspace& src = a.step(j);
      const QSubspace& dst = b.step(j + k);
      if (dst.is_full()) continue;
      QMatrix eqs = dst.equations();
      for (std::size_t v = 0; v < src.dim(); ++v)
        for (std::size_t e = 0; e < eqs.rows(); ++e) {
          std::vector<Rational> row(n2 * n1, Rational(0));
          for (std::size_t r = 0; r < n2; ++r)
            for (std::size_t c = 0; c < n1; ++c)
              row[r * n1 + c] = eqs(e, r) * src.basis()(v, c);
          cond.push_back(std::move(row));
        }
    }
    if (cond.empty()) {
      steps[k] = QSubspace::full(n1 * n2);
    } else {
      steps[k] = QSubspace::span(kernel(from_rows(cond, n1 * n2)));
    }
  }
  return IncFiltration(n1 * n2, lo, hi, std::move(steps)).normalized();
}

inline FilteredNilp combine(const FilteredNilp& a, const FilteredNilp& b,
                            CombineOp op) {
  switch (op) {
    case CombineOp::DirectSum:
      return FilteredNilp(direct_sum_filtration(a.w, b.w), block_diag(a.n, b.n));
    case CombineOp::Tensor: {
      QMatrix n = kron(a.n, QMatrix::identity(b.dim)) +
                  kron(QMatrix::identity(a.dim), b.n);
      return FilteredNilp(tensor_filtration(a.w, b.w), std::move(n));
    }
    case CombineOp::Hom: {
      // f -> b.n f - f a.n on Hom(V1, V2), row-major coordinates
      std::size_t n1 = a.dim, n2 = b.dim;
      QMatrix n = kron(b.n, QMatrix::identity(n1)) -
                  kron(QMatrix::identity(n2), a.n.transpose());
      return FilteredNilp(hom_filtration(a.w, b.w), std::move(n));
    }
  }
  throw error("unreachable");
}

}  // namespace lmh
