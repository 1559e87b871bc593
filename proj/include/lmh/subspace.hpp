#pragma once

// Exact linear subspaces with a canonical reduced-echelon row basis, so
// subspace equality is basis equality.

#include <cstddef>
#include <utility>
#include <vector>

#include "lmh/errors.hpp"
#include "lmh/matrix.hpp"

namespace lmh {

template <class T>
class Subspace {
public:
  Subspace() = default;

  static Subspace zero(std::size_t ambient) {
    Subspace s;
    s.ambient_ = ambient;
    s.basis_ = Matrix<T>(0, ambient);
    return s;
  }

  static Subspace full(std::size_t ambient) {
    return span(Matrix<T>::identity(ambient));
  }

  // Span of the rows of m.
  static Subspace span(Matrix<T> m) {
    Subspace s;
    s.ambient_ = m.cols();
    auto pivots = rref(m);
    Matrix<T> basis(pivots.size(), m.cols());
    for (std::size_t i = 0; i < pivots.size(); ++i)
      basis.set_row(i, m.row(i));
    s.basis_ = std::move(basis);
    s.pivots_ = std::move(pivots);
    return s;
  }

  static Subspace span_of(const std::vector<std::vector<T>>& vecs,
                          std::size_t ambient) {
    return span(from_rows(vecs, ambient));
  }

  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return basis_.rows(); }
  const Matrix<T>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  bool is_zero() const { return dim() == 0; }
  bool is_full() const { return dim() == ambient_; }

  // Canonical representative of v modulo the subspace: pivot coordinates
  // eliminated against the echelon basis.
  std::vector<T> reduce(const std::vector<T>& v) const {
    if (v.size() != ambient_) throw DimensionMismatch("Subspace::reduce");
    std::vector<T> r = v;
    for (std::size_t i = 0; i < basis_.rows(); ++i) {
      const T& c = r[pivots_[i]];
      if (scalar_is_zero(c)) continue;
      T f = c;
      for (std::size_t j = 0; j < ambient_; ++j) r[j] -= f * basis_(i, j);
    }
    return r;
  }

  bool contains(const std::vector<T>& v) const {
    auto r = reduce(v);
    for (const auto& x : r)
      if (!scalar_is_zero(x)) return false;
    return true;
  }

  bool contains(const Subspace& other) const {
    check_same_ambient(other);
    for (std::size_t i = 0; i < other.dim(); ++i)
      if (!contains(other.basis_.row(i))) return false;
    return true;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }
  friend bool operator!=(const Subspace& a, const Subspace& b) {
    return !(a == b);
  }

  friend Subspace operator+(const Subspace& a, const Subspace& b) {
    a.check_same_ambient(b);
    Matrix<T> stacked(a.dim() + b.dim(), a.ambient_);
    for (std::size_t i = 0; i < a.dim(); ++i) stacked.set_row(i, a.basis_.row(i));
    for (std::size_t i = 0; i < b.dim(); ++i)
      stacked.set_row(a.dim() + i, b.basis_.row(i));
    return span(std::move(stacked));
  }

  // Rows y with y . x = 0 for all x in the subspace; the subspace is exactly
  // the solution set of these equations (standard bilinear form, any field).
  Matrix<T> equations() const { return kernel(basis_); }

  friend Subspace intersect(const Subspace& a, const Subspace& b) {
    a.check_same_ambient(b);
    if (a.is_full()) return b;
    if (b.is_full()) return a;
    Matrix<T> eqs(a.ambient() - a.dim() + b.ambient() - b.dim(), a.ambient());
    Matrix<T> ea = a.equations();
    Matrix<T> eb = b.equations();
    for (std::size_t i = 0; i < ea.rows(); ++i) eqs.set_row(i, ea.row(i));
    for (std::size_t i = 0; i < eb.rows(); ++i)
      eqs.set_row(ea.rows() + i, eb.row(i));
    return span(kernel(eqs));
  }

  // Image of the subspace under x -> f x (vectors as columns).
  Subspace image_under(const Matrix<T>& f) const {
    if (f.cols() != ambient_) throw DimensionMismatch("image_under");
    Matrix<T> rows(dim(), f.rows());
    for (std::size_t i = 0; i < dim(); ++i) {
      auto fx = f * basis_.row(i);
      rows.set_row(i, fx);
    }
    return span(std::move(rows));
  }

  // {x : f x in this}.
  Subspace preimage_under(const Matrix<T>& f) const {
    if (f.rows() != ambient_) throw DimensionMismatch("preimage_under");
    if (is_full()) return full(f.cols());
    return span(kernel(Matrix<T>(equations() * f)));
  }

  Subspace conj() const {
    Subspace s;
    s.ambient_ = ambient_;
    s.basis_ = basis_.conj();
    s.pivots_ = pivots_;
    return s;  // conjugate of an echelon basis is echelon
  }

private:
  void check_same_ambient(const Subspace& other) const {
    if (ambient_ != other.ambient_)
      throw DimensionMismatch("subspaces in different ambients");
  }

  std::size_t ambient_ = 0;
  Matrix<T> basis_;
  std::vector<std::size_t> pivots_;
};

using QSubspace = Subspace<Rational>;
using CSubspace = Subspace<GaussRational>;

inline CSubspace complexify(const QSubspace& s) {
  return CSubspace::span(complexify(s.basis()));
}

template <class T>
Subspace<T> kernel_space(const Matrix<T>& f) {
  return Subspace<T>::span(kernel(f));
}

}  // namespace lmh
