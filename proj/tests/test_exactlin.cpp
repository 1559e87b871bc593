#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "lmh/lattice.hpp"
#include "lmh/matrix.hpp"
#include "lmh/scalars.hpp"
#include "lmh/subspace.hpp"

using namespace lmh;

namespace {

QMatrix rand_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int lo = -3,
                    int hi = 3) {
  std::uniform_int_distribution<int> d(lo, hi);
  QMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = Rational(d(rng));
  return m;
}

// test-local rank via plain forward elimination, independent of rref()
std::size_t rank_oracle(QMatrix m) {
  std::size_t rk = 0;
  for (std::size_t c = 0; c < m.cols() && rk < m.rows(); ++c) {
    std::size_t sel = rk;
    while (sel < m.rows() && m(sel, c) == 0) ++sel;
    if (sel == m.rows()) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(sel, j), m(rk, j));
    for (std::size_t i = rk + 1; i < m.rows(); ++i) {
      if (m(i, c) == 0) continue;
      Rational f = m(i, c) / m(rk, c);
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= f * m(rk, j);
    }
    ++rk;
  }
  return rk;
}

// determinantal-divisor oracle: d_1 ... d_k = gcd of all k x k minors
Int minor_gcd(const IMatrix& m, std::size_t k) {
  std::vector<std::size_t> rows(k), cols(k);
  Int g = 0;
  std::vector<std::size_t> ri(k), ci(k);
  std::function<void(std::size_t, std::size_t)> choose_cols;
  std::function<void(std::size_t, std::size_t)> choose_rows;
  choose_cols = [&](std::size_t at, std::size_t start) {
    if (at == k) {
      QMatrix sub(k, k);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
          sub(i, j) = Rational(m(ri[i], ci[j]));
      Rational d = det(sub);
      g = gcd(g, num(d));
      return;
    }
    for (std::size_t c = start; c < m.cols(); ++c) {
      ci[at] = c;
      choose_cols(at + 1, c + 1);
    }
  };
  choose_rows = [&](std::size_t at, std::size_t start) {
    if (at == k) {
      choose_cols(0, 0);
      return;
    }
    for (std::size_t r = start; r < m.rows(); ++r) {
      ri[at] = r;
      choose_rows(at + 1, r + 1);
    }
  };
  choose_rows(0, 0);
  return g;
}

}  // namespace

TEST_CASE("rational parsing and canonical encoding") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("-4/2") == Rational(-2));
  CHECK(parse_rational("7") == Rational(7));
  CHECK(to_string(Rational(3)) == "3/1");
  CHECK(to_string(Rational(-1, 3)) == "-1/3");
  CHECK(parse_rational(to_string(Rational(22, 7))) == Rational(22, 7));
  CHECK_THROWS_AS(parse_rational("1/0"), FormatError);
  CHECK_THROWS_AS(parse_rational(""), FormatError);
}

TEST_CASE("gaussian rational arithmetic and conjugation") {
  GaussRational z(Rational(1, 2), Rational(-3));
  CHECK(z.conj().conj() == z);
  CHECK((z * z.conj()).is_real());
  CHECK((z.conj() == z) == z.is_real());
  GaussRational i = gauss_i();
  CHECK(i * i == GaussRational(Rational(-1)));
  CHECK((z / z) == GaussRational(Rational(1)));
  // conjugation fixes exactly the reals
  CHECK(GaussRational(Rational(5)).conj() == GaussRational(Rational(5)));
}

TEST_CASE("subspace sum and intersection on named lines") {
  auto e1 = QSubspace::span_of({{Rational(1), Rational(0)}}, 2);
  auto e2 = QSubspace::span_of({{Rational(0), Rational(1)}}, 2);
  auto diag = QSubspace::span_of({{Rational(1), Rational(1)}}, 2);
  CHECK((e1 + e2).is_full());
  CHECK(intersect(e1, diag).is_zero());
  CHECK(intersect(e1 + e2, diag) == diag);
}

TEST_CASE("subspace canonicalization is generating-set independent") {
  std::mt19937 rng(7);
  for (int iter = 0; iter < 50; ++iter) {
    QMatrix a = rand_matrix(rng, 3, 5);
    QSubspace s = QSubspace::span(a);
    // re-generate with random row operations and extra in-span rows
    QMatrix b(5, 5);
    std::uniform_int_distribution<int> d(-2, 2);
    for (std::size_t i = 0; i < 5; ++i) {
      std::vector<Rational> row(5, Rational(0));
      for (std::size_t k = 0; k < 3; ++k) {
        Rational c(d(rng));
        for (std::size_t j = 0; j < 5; ++j) row[j] += c * a(k, j);
      }
      b.set_row(i, row);
    }
    QSubspace t = QSubspace::span(b);
    if (t.dim() == s.dim()) CHECK(s == t);
    CHECK(s.contains(t));
  }
}

TEST_CASE("modular identity dim(A+B)+dim(A meet B) = dim A + dim B") {
  std::mt19937 rng(11);
  for (int iter = 0; iter < 200; ++iter) {
    QSubspace a = QSubspace::span(rand_matrix(rng, 1 + iter % 4, 6));
    QSubspace b = QSubspace::span(rand_matrix(rng, 1 + (iter / 4) % 4, 6));
    std::size_t lhs = (a + b).dim() + intersect(a, b).dim();
    CHECK(lhs == a.dim() + b.dim());
    // rank-oracle cross-check of the sum dimension
    QMatrix stacked(a.dim() + b.dim(), 6);
    for (std::size_t i = 0; i < a.dim(); ++i) stacked.set_row(i, a.basis().row(i));
    for (std::size_t i = 0; i < b.dim(); ++i)
      stacked.set_row(a.dim() + i, b.basis().row(i));
    CHECK((a + b).dim() == rank_oracle(stacked));
  }
}

TEST_CASE("image and preimage under a Jordan block") {
  QMatrix n{{Rational(0), Rational(1)}, {Rational(0), Rational(0)}};
  auto full = QSubspace::full(2);
  auto e1 = QSubspace::span_of({{Rational(1), Rational(0)}}, 2);
  CHECK(full.image_under(n) == e1);
  CHECK(QSubspace::zero(2).preimage_under(n) == e1);  // ker N
  CHECK(e1.preimage_under(n).is_full());
}

TEST_CASE("image preimage adjunction properties") {
  std::mt19937 rng(13);
  for (int iter = 0; iter < 60; ++iter) {
    QMatrix f = rand_matrix(rng, 6, 6);
    QSubspace s = QSubspace::span(rand_matrix(rng, 1 + iter % 3, 6));
    QSubspace im = s.image_under(f);
    CHECK(im.preimage_under(f).contains(s));
    QSubspace pre = s.preimage_under(f);
    QSubspace target = intersect(s, QSubspace::full(6).image_under(f));
    CHECK(pre.image_under(f) == target);
  }
}

TEST_CASE("smith form on pinned examples") {
  {
    IMatrix m{{Int(2), Int(0)}, {Int(0), Int(3)}};
    auto s = smith_form(m);
    REQUIRE(s.divisors.size() == 2);
    CHECK(s.divisors[0] == 1);
    CHECK(s.divisors[1] == 6);
    CHECK(s.u * s.d * s.v == m);
  }
  {
    auto s = smith_form(IMatrix::identity(4));
    for (const auto& d : s.divisors) CHECK(d == 1);
  }
  {
    IMatrix z(3, 2);
    auto s = smith_form(z);
    for (const auto& d : s.divisors) CHECK(d == 0);
    CHECK(s.u * s.d * s.v == z);
  }
}

TEST_CASE("smith form reconstruction and determinantal divisors") {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> d(-4, 4);
  for (int iter = 0; iter < 40; ++iter) {
    std::size_t r = 2 + iter % 3, c = 2 + (iter / 3) % 3;
    IMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
    auto s = smith_form(m);
    CHECK(s.u * s.d * s.v == m);
    Rational du = det(to_rational(s.u)), dv = det(to_rational(s.v));
    CHECK((du == 1 || du == -1));
    CHECK((dv == 1 || dv == -1));
    for (std::size_t i = 0; i + 1 < s.divisors.size(); ++i)
      if (s.divisors[i + 1] != 0)
        CHECK(s.divisors[i + 1] % (s.divisors[i] == 0 ? Int(1) : s.divisors[i]) == 0);
    // independent oracle: products of divisors = gcds of k x k minors
    Int prod = 1;
    for (std::size_t k = 1; k <= std::min(r, c); ++k) {
      if (s.divisors[k - 1] == 0) break;
      prod *= s.divisors[k - 1];
      CHECK(abs(prod) == abs(minor_gcd(m, k)));
    }
  }
}

TEST_CASE("hermite form is a basis and contains the generators") {
  IMatrix m{{Int(4), Int(2)}, {Int(2), Int(4)}, {Int(6), Int(6)}};
  LatticeSubgroup l(2, m);
  CHECK(l.rank() == 2);
  CHECK(l.contains({Int(4), Int(2)}));
  CHECK(l.contains({Int(2), Int(4)}));
  CHECK(!l.contains({Int(1), Int(0)}));
  CHECK(l.contains({Int(2), Int(-2)}));
}

TEST_CASE("invariants_rank basics") {
  CHECK(invariants_rank(20, {}) == 20);
  IMatrix g{{Int(1), Int(1)}, {Int(0), Int(1)}};
  CHECK(invariants_rank(2, {g}) == 1);
  IMatrix bad{{Int(2), Int(0)}, {Int(0), Int(1)}};
  CHECK_THROWS_AS(invariants_rank(2, {bad}), NotUnipotent);
  IMatrix a{{Int(1), Int(1)}, {Int(0), Int(1)}};
  IMatrix b{{Int(1), Int(0)}, {Int(1), Int(1)}};
  CHECK_THROWS_AS(invariants_rank(2, {a, b}), NonCommuting);
}

TEST_CASE("exact determinant and inverse") {
  std::mt19937 rng(23);
  for (int iter = 0; iter < 30; ++iter) {
    QMatrix m = rand_matrix(rng, 4, 4);
    Rational dm = det(m);
    auto inv = inverse(m);
    if (dm == 0) {
      CHECK(!inv.has_value());
    } else {
      REQUIRE(inv.has_value());
      CHECK(m * *inv == QMatrix::identity(4));
    }
  }
}

TEST_CASE("nilpotent exp and log are inverse") {
  QMatrix n{{Rational(0), Rational(2), Rational(1)},
            {Rational(0), Rational(0), Rational(-3)},
            {Rational(0), Rational(0), Rational(0)}};
  auto e = exp_nilpotent(n);
  CHECK(log_unipotent(e) == n);
  CHECK(exp_nilpotent(log_unipotent(e)) == e);
}
