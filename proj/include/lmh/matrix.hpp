#pragma once

// Dense exact matrices over Rational or GaussRational, row-major.

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <utility>
#include <vector>

#include "lmh/errors.hpp"
#include "lmh/scalars.hpp"

namespace lmh {

template <class T>
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw DimensionMismatch("ragged initializer");
      for (const auto& v : row) data_.push_back(v);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  const std::vector<T>& data() const { return data_; }

  bool is_square() const { return rows_ == cols_; }

  bool is_zero() const {
    for (const auto& v : data_)
      if (!scalar_is_zero(v)) return false;
    return true;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw DimensionMismatch("matrix add");
    Matrix r = a;
    for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] += b.data_[i];
    return r;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw DimensionMismatch("matrix sub");
    Matrix r = a;
    for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] -= b.data_[i];
    return r;
  }
  friend Matrix operator-(const Matrix& a) {
    Matrix r = a;
    for (auto& v : r.data_) v = -v;
    return r;
  }
  friend Matrix operator*(const T& c, const Matrix& a) {
    Matrix r = a;
    for (auto& v : r.data_) v = c * v;
    return r;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("matrix mul");
    Matrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (scalar_is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
      }
    return r;
  }

  friend std::vector<T> operator*(const Matrix& a, const std::vector<T>& x) {
    if (a.cols_ != x.size()) throw DimensionMismatch("matrix-vector mul");
    std::vector<T> r(a.rows_, T(0));
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j)
        if (!scalar_is_zero(a(i, j))) r[i] += a(i, j) * x[j];
    return r;
  }

  Matrix transpose() const {
    Matrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  Matrix conj() const {
    Matrix r = *this;
    for (auto& v : r.data_) v = conj_scalar(v);
    return r;
  }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + i * cols_,
                          data_.begin() + (i + 1) * cols_);
  }

  void set_row(std::size_t i, const std::vector<T>& v) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = v[j];
  }

  Matrix pow(std::size_t e) const {
    Matrix r = identity(rows_);
    for (std::size_t k = 0; k < e; ++k) r = r * (*this);
    return r;
  }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using QMatrix = Matrix<Rational>;
using CMatrix = Matrix<GaussRational>;

template <class T>
Matrix<T> from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols) {
  Matrix<T> m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw DimensionMismatch("from_rows");
    m.set_row(i, rows[i]);
  }
  return m;
}

inline CMatrix complexify(const QMatrix& m) {
  CMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = GaussRational(m(i, j));
  return r;
}

inline std::vector<GaussRational> complexify(const std::vector<Rational>& v) {
  std::vector<GaussRational> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = GaussRational(v[i]);
  return r;
}

// In-place reduced row echelon form; returns pivot column indices.
template <class T>
std::vector<std::size_t> rref(Matrix<T>& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t sel = r;
    while (sel < m.rows() && scalar_is_zero(m(sel, c))) ++sel;
    if (sel == m.rows()) continue;
    if (sel != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(sel, j), m(r, j));
    T inv = T(1) / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = inv * m(r, j);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || scalar_is_zero(m(i, c))) continue;
      T f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class T>
std::size_t rank(Matrix<T> m) {
  return rref(m).size();
}

// Right kernel {x : m x = 0}, returned as rows.
template <class T>
Matrix<T> kernel(const Matrix<T>& m) {
  Matrix<T> e = m;
  auto pivots = rref(e);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::size_t free_count = m.cols() - pivots.size();
  Matrix<T> k(free_count, m.cols());
  std::size_t kr = 0;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (is_pivot[c]) continue;
    k(kr, c) = T(1);
    for (std::size_t pi = 0; pi < pivots.size(); ++pi)
      k(kr, pivots[pi]) = -e(pi, c);
    ++kr;
  }
  return k;
}

// Solve m x = b; empty optional when inconsistent.
template <class T>
std::optional<std::vector<T>> solve(const Matrix<T>& m, const std::vector<T>& b) {
  if (b.size() != m.rows()) throw DimensionMismatch("solve");
  Matrix<T> aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
  std::vector<T> x(m.cols(), T(0));
  for (std::size_t pi = 0; pi < pivots.size(); ++pi)
    x[pivots[pi]] = aug(pi, m.cols());
  return x;
}

template <class T>
T det(Matrix<T> m) {
  require(m.is_square(), "det of non-square matrix");
  T d(1);
  std::size_t n = m.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t sel = c;
    while (sel < n && scalar_is_zero(m(sel, c))) ++sel;
    if (sel == n) return T(0);
    if (sel != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(sel, j), m(c, j));
      d = -d;
    }
    d *= m(c, c);
    T inv = T(1) / m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (scalar_is_zero(m(i, c))) continue;
      T f = inv * m(i, c);
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return d;
}

template <class T>
std::optional<Matrix<T>> inverse(const Matrix<T>& m) {
  require(m.is_square(), "inverse of non-square matrix");
  std::size_t n = m.rows();
  Matrix<T> aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = T(1);
  }
  auto pivots = rref(aug);
  if (pivots.size() != n || pivots.back() != n - 1) return std::nullopt;
  Matrix<T> inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

template <class T>
bool is_nilpotent(const Matrix<T>& m) {
  if (!m.is_square()) return false;
  return m.pow(m.rows()).is_zero();
}

template <class T>
std::size_t nilpotency_index(const Matrix<T>& m) {
  // Least e with m^e = 0.
  if (!is_nilpotent(m)) throw NotNilpotent("nilpotency_index");
  Matrix<T> p = Matrix<T>::identity(m.rows());
  for (std::size_t e = 0; e <= m.rows(); ++e) {
    if (p.is_zero()) return e;
    p = p * m;
  }
  return m.rows();
}

// exp of a nilpotent matrix as the exact finite sum.
template <class T>
Matrix<T> exp_nilpotent(const Matrix<T>& m) {
  if (!is_nilpotent(m)) throw NotNilpotent("exp_nilpotent");
  Matrix<T> r = Matrix<T>::identity(m.rows());
  Matrix<T> term = Matrix<T>::identity(m.rows());
  T fact(1);
  for (std::size_t k = 1; k <= m.rows(); ++k) {
    term = term * m;
    if (term.is_zero()) break;
    fact *= T(static_cast<long long>(k));
    r = r + (T(1) / fact) * term;
  }
  return r;
}

// log of a unipotent matrix, exact finite sum.
template <class T>
Matrix<T> log_unipotent(const Matrix<T>& m) {
  Matrix<T> u = m - Matrix<T>::identity(m.rows());
  if (!is_nilpotent(u)) throw NotUnipotent("log_unipotent");
  Matrix<T> r(m.rows(), m.rows());
  Matrix<T> term = Matrix<T>::identity(m.rows());
  for (std::size_t k = 1; k <= m.rows(); ++k) {
    term = term * u;
    if (term.is_zero()) break;
    T coef = T(1) / T(static_cast<long long>(k));
    if (k % 2 == 0) coef = -coef;
    r = r + coef * term;
  }
  return r;
}

template <class T>
bool commute(const Matrix<T>& a, const Matrix<T>& b) {
  return a * b == b * a;
}

template <class T>
Matrix<T> kron(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> r(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (scalar_is_zero(a(i, j))) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return r;
}

template <class T>
Matrix<T> block_diag(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> r(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      r(a.rows() + i, a.cols() + j) = b(i, j);
  return r;
}

// Flatten an endomorphism to the coordinate vector of its matrix (row-major).
template <class T>
std::vector<T> vectorize(const Matrix<T>& m) {
  return m.data();
}

template <class T>
Matrix<T> unvectorize(const std::vector<T>& v, std::size_t rows, std::size_t cols) {
  if (v.size() != rows * cols) throw DimensionMismatch("unvectorize");
  Matrix<T> m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = v[i * cols + j];
  return m;
}

}  // namespace lmh
