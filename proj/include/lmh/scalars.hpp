#pragma once

// Exact scalar fields: arbitrary-precision integers, rationals and Gaussian
// rationals a+bi.  Everything downstream is exact; there is no floating
// point anywhere in the library.

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "lmh/errors.hpp"

namespace lmh {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Int den(const Rational& q) { return boost::multiprecision::denominator(q); }

inline Rational rat(long long n, long long d = 1) { return Rational(n, d); }

inline bool is_integer(const Rational& q) { return den(q) == 1; }

// Canonical encoding "p/q" with q > 0 and gcd(p,q) = 1, always including
// the denominator ("3" encodes as "3/1").
inline std::string to_string(const Rational& q) {
  return num(q).str() + "/" + den(q).str();
}

inline Rational parse_rational(const std::string& s) {
  if (s.empty()) throw FormatError("empty rational literal");
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(Int(s));
    Int p(s.substr(0, slash));
    Int q(s.substr(slash + 1));
    if (q <= 0) throw FormatError("rational denominator must be positive: " + s);
    return Rational(p, q);
  } catch (const std::exception& e) {
    throw FormatError("bad rational literal '" + s + "': " + e.what());
  }
}

struct GaussRational {
  Rational re;
  Rational im;

  GaussRational() = default;
  GaussRational(Rational r) : re(std::move(r)) {}  // NOLINT: implicit by design
  GaussRational(long long r) : re(r) {}            // NOLINT
  GaussRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }

  GaussRational conj() const { return {re, -im}; }

  friend GaussRational operator+(const GaussRational& a, const GaussRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussRational operator-(const GaussRational& a, const GaussRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussRational operator-(const GaussRational& a) { return {-a.re, -a.im}; }
  friend GaussRational operator*(const GaussRational& a, const GaussRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend GaussRational operator/(const GaussRational& a, const GaussRational& b) {
    Rational n = b.re * b.re + b.im * b.im;
    if (n == 0) throw error("division by zero in GaussRational");
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
  }
  GaussRational& operator+=(const GaussRational& b) { return *this = *this + b; }
  GaussRational& operator-=(const GaussRational& b) { return *this = *this - b; }
  GaussRational& operator*=(const GaussRational& b) { return *this = *this * b; }
  GaussRational& operator/=(const GaussRational& b) { return *this = *this / b; }

  friend bool operator==(const GaussRational& a, const GaussRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussRational& a, const GaussRational& b) {
    return !(a == b);
  }
};

inline GaussRational gauss_i() { return {Rational(0), Rational(1)}; }

inline std::string to_string(const GaussRational& z) {
  return to_string(z.re) + (z.im < 0 ? "-" : "+") +
         to_string(z.im < 0 ? Rational(-z.im) : z.im) + "i";
}

// Field-generic hooks used by the matrix/subspace templates.
inline Rational conj_scalar(const Rational& x) { return x; }
inline GaussRational conj_scalar(const GaussRational& x) { return x.conj(); }
inline bool scalar_is_zero(const Rational& x) { return x == 0; }
inline bool scalar_is_zero(const GaussRational& x) { return x.is_zero(); }

}  // namespace lmh
