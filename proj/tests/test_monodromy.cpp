#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>
#include <vector>

#include "lmh/filtration.hpp"
#include "lmh/matrix.hpp"
#include "lmh/monodromy.hpp"

using namespace lmh;

namespace {

QMatrix jordan(std::size_t k) {
  QMatrix n(k, k);
  for (std::size_t i = 0; i + 1 < k; ++i) n(i, i + 1) = Rational(1);
  return n;
}

QSubspace e_span(std::size_t amb, std::initializer_list<std::size_t> idx) {
  std::vector<std::vector<Rational>> rows;
  for (auto i : idx) {
    std::vector<Rational> r(amb, Rational(0));
    r[i] = Rational(1);
    rows.push_back(std::move(r));
  }
  return QSubspace::span_of(rows, amb);
}

// rank-3 frame filtration: W_{-1} = <e1,e2>, W_0 = everything
IncFiltration w_712() {
  std::map<int, QSubspace> steps;
  steps[-1] = e_span(3, {0, 1});
  steps[0] = QSubspace::full(3);
  return IncFiltration(3, -1, 0, std::move(steps));
}

// e2 -> e1, e3 -> n e1
QMatrix n_op(int n) {
  QMatrix m(3, 3);
  m(0, 1) = Rational(1);
  m(0, 2) = Rational(n);
  return m;
}

// rank-3 frame with weights 1-2b and 0 for b = 2: W_{-3} = <e1,e2>, W_0 = all
IncFiltration w_713() {
  std::map<int, QSubspace> steps;
  steps[-3] = e_span(3, {0, 1});
  steps[-2] = steps[-3];
  steps[-1] = steps[-3];
  steps[0] = QSubspace::full(3);
  return IncFiltration(3, -3, 0, std::move(steps));
}

FilteredNilp random_jordan_sum(std::mt19937& rng, std::size_t max_dim) {
  std::uniform_int_distribution<std::size_t> sz(1, 3);
  std::uniform_int_distribution<int> wt(-2, 2);
  FilteredNilp acc(IncFiltration::pure(1, wt(rng)), QMatrix(1, 1));
  while (true) {
    std::size_t k = sz(rng);
    if (acc.dim + k > max_dim) break;
    FilteredNilp piece(IncFiltration::pure(k, wt(rng)), jordan(k));
    acc = combine(acc, piece, CombineOp::DirectSum);
    if (acc.dim >= max_dim - 1) break;
  }
  return acc;
}

}  // namespace

TEST_CASE("weight filtration of a 2x2 Jordan block, centered at 0") {
  IncFiltration m = weight_filtration(jordan(2), 0);
  CHECK(m.step(-2).dim() == 0);
  CHECK(m.step(-1) == e_span(2, {0}));
  CHECK(m.step(0) == e_span(2, {0}));
  CHECK(m.step(1).is_full());

  FilteredNilp x(IncFiltration::pure(2, 0), jordan(2));
  CHECK(verify_rmf(x, m).ok);

  // uniqueness: all candidates from the kernel/image lattice {0, <e1>, V}
  // over the window [-2, 1]; exactly one passes the axioms
  std::vector<QSubspace> lattice = {QSubspace::zero(2), e_span(2, {0}),
                                    QSubspace::full(2)};
  int passing = 0;
  std::array<std::size_t, 4> pick{};
  for (pick[0] = 0; pick[0] < 3; ++pick[0])
    for (pick[1] = pick[0]; pick[1] < 3; ++pick[1])
      for (pick[2] = pick[1]; pick[2] < 3; ++pick[2])
        for (pick[3] = pick[2]; pick[3] < 3; ++pick[3]) {
          if (pick[3] != 2) continue;
          std::map<int, QSubspace> steps;
          for (int k = -2; k <= 1; ++k)
            steps[k] = lattice[pick[static_cast<std::size_t>(k + 2)]];
          IncFiltration cand(2, -2, 1, std::move(steps));
          if (verify_rmf(x, cand).ok) {
            ++passing;
            CHECK(cand == m);
          }
        }
  CHECK(passing == 1);
}

TEST_CASE("weight filtration of the zero operator concentrates at the center") {
  IncFiltration m = weight_filtration(QMatrix(3, 3), 5);
  CHECK(m.step(4).dim() == 0);
  CHECK(m.step(5).is_full());
}

TEST_CASE("weight filtration of a Jordan block centered at -1") {
  IncFiltration m = weight_filtration(jordan(2), -1);
  CHECK(m.step(-3).dim() == 0);
  CHECK(m.step(-2) == e_span(2, {0}));
  CHECK(m.step(-1) == e_span(2, {0}));
  CHECK(m.step(0).is_full());
}

TEST_CASE("relative filtration exists on the rank-3 degeneration data") {
  for (int n : {0, 1, 5, -3}) {
    FilteredNilp x(w_712(), n_op(n));
    auto r = relative_monodromy(x);
    REQUIRE(r.exists());
    const auto& m = *r.filtration;
    CHECK(m.step(-3).dim() == 0);
    CHECK(m.step(-2) == e_span(3, {0}));
    CHECK(m.step(-1) == e_span(3, {0}));
    CHECK(m.step(0).is_full());
    CHECK(verify_rmf(x, m).ok);
  }
}

TEST_CASE("zero operator gives back the weight filtration") {
  FilteredNilp x(w_712(), QMatrix(3, 3));
  auto r = relative_monodromy(x);
  REQUIRE(r.exists());
  CHECK(*r.filtration == w_712());
}

TEST_CASE("nonexistence witness on the two-dimensional instance") {
  // W_0 = <e1>, W_1 = everything, N e2 = e1
  std::map<int, QSubspace> steps;
  steps[0] = e_span(2, {0});
  steps[1] = QSubspace::full(2);
  IncFiltration w(2, 0, 1, std::move(steps));
  FilteredNilp x(w, jordan(2));
  auto r = relative_monodromy(x);
  CHECK(r.verdict == RMFResult::Verdict::NotExists);
  INFO(r.witness);
  CHECK(r.witness.find("N M_1") != std::string::npos);
  CHECK(r.witness.find("M_-1") != std::string::npos);
}

TEST_CASE("relative filtration on the higher-twist data (b = 2)") {
  for (int n : {0, 2}) {
    FilteredNilp x(w_713(), n_op(n));
    auto r = relative_monodromy(x);
    REQUIRE(r.exists());
    const auto& m = *r.filtration;
    CHECK(m.step(-5).dim() == 0);
    CHECK(m.step(-4) == e_span(3, {0}));
    CHECK(m.step(-3) == e_span(3, {0}));
    CHECK(m.step(-2) == e_span(3, {0, 1}));
    CHECK(m.step(-1) == e_span(3, {0, 1}));
    CHECK(m.step(0).is_full());
  }
}

TEST_CASE("verifier rejects a shifted filtration") {
  FilteredNilp x(w_712(), n_op(1));
  auto r = relative_monodromy(x);
  REQUIRE(r.exists());
  auto shifted = r.filtration->shifted(1);
  auto rep = verify_rmf(x, shifted);
  CHECK(!rep.ok);
  CHECK(rep.first_failure.find("condition (2)") != std::string::npos);
}

TEST_CASE("verifier rejects W itself when the graded action is nonzero") {
  FilteredNilp x(w_712(), n_op(0));
  CHECK(!verify_rmf(x, w_712()).ok);
}

TEST_CASE("verifier rejects every single-step perturbation (uniqueness)") {
  FilteredNilp x(w_712(), n_op(1));
  auto r = relative_monodromy(x);
  REQUIRE(r.exists());
  IncFiltration m = r.filtration->normalized();
  std::vector<QSubspace> pool = {QSubspace::zero(3),  e_span(3, {0}),
                                 e_span(3, {1}),      e_span(3, {0, 1}),
                                 e_span(3, {0, 2}),   QSubspace::full(3)};
  int others_passing = 0;
  for (int k = m.lo(); k < m.hi(); ++k) {
    for (const auto& s : pool) {
      if (s == m.step(k)) continue;
      std::map<int, QSubspace> steps;
      for (int j = m.lo(); j <= m.hi(); ++j) steps[j] = m.step(j);
      steps[k] = s;
      bool mono = true;
      const QSubspace* prev = nullptr;
      for (int j = m.lo(); j <= m.hi(); ++j) {
        if (prev && !steps[j].contains(*prev)) mono = false;
        prev = &steps[j];
      }
      if (!mono || !steps[m.hi()].is_full()) continue;
      IncFiltration cand(3, m.lo(), m.hi(), std::move(steps));
      if (verify_rmf(x, cand).ok) ++others_passing;
    }
  }
  CHECK(others_passing == 0);
}

TEST_CASE("functoriality of the relative filtration over random Jordan sums") {
  std::mt19937 rng(12345);
  for (int iter = 0; iter < 25; ++iter) {
    std::uniform_int_distribution<std::size_t> sz(1, 3);
    std::uniform_int_distribution<int> wt(-2, 2);
    auto build = [&](std::size_t max_dim) {
      std::size_t k = sz(rng);
      int w0 = wt(rng);
      FilteredNilp obj(IncFiltration::pure(k, w0), jordan(k));
      IncFiltration oracle = weight_filtration(jordan(k), w0);
      while (obj.dim < max_dim) {
        std::size_t k2 = sz(rng);
        if (obj.dim + k2 > max_dim) break;
        int w2 = wt(rng);
        FilteredNilp piece(IncFiltration::pure(k2, w2), jordan(k2));
        obj = combine(obj, piece, CombineOp::DirectSum);
        oracle =
            direct_sum_filtration(oracle, weight_filtration(jordan(k2), w2));
      }
      return std::make_pair(obj, oracle);
    };
    auto [a, ma] = build(4);
    auto [b, mb] = build(3);

    auto s = combine(a, b, CombineOp::DirectSum);
    auto rs = relative_monodromy(s);
    REQUIRE(rs.exists());
    CHECK(*rs.filtration == direct_sum_filtration(ma, mb));

    auto t = combine(a, b, CombineOp::Tensor);
    auto rt = relative_monodromy(t);
    REQUIRE(rt.exists());
    CHECK(*rt.filtration == tensor_filtration(ma, mb));

    auto h = combine(a, b, CombineOp::Hom);
    auto rh = relative_monodromy(h);
    REQUIRE(rh.exists());
    CHECK(*rh.filtration == hom_filtration(ma, mb));

    // restriction of M(a (+) b) to the first summand
    std::vector<std::vector<Rational>> rows;
    for (std::size_t i = 0; i < a.dim; ++i) {
      std::vector<Rational> r(s.dim, Rational(0));
      r[i] = Rational(1);
      rows.push_back(std::move(r));
    }
    QSubspace first = QSubspace::span_of(rows, s.dim);
    CHECK(restricted_to(*rs.filtration, first) == ma);
  }
}

TEST_CASE("kernel inclusion holds on every computed filtration") {
  std::mt19937 rng(99);
  std::vector<FilteredNilp> cases;
  cases.emplace_back(w_712(), n_op(2));
  cases.emplace_back(w_713(), n_op(1));
  for (int iter = 0; iter < 10; ++iter) {
    auto a = random_jordan_sum(rng, 4);
    auto b = random_jordan_sum(rng, 3);
    cases.push_back(combine(a, b, CombineOp::Tensor));
  }
  for (const auto& x : cases) {
    auto r = relative_monodromy(x);
    REQUIRE(r.exists());
    QSubspace ker = kernel_space(x.n);
    for (int k = r.filtration->lo() - 1; k <= r.filtration->hi(); ++k)
      CHECK(r.filtration->step(k).contains(intersect(ker, x.w.step(k))));
  }
}

TEST_CASE("admissibility of the one-generator boundary cone") {
  Cone sigma0(3, {n_op(0)});
  auto rep = check_admissible(sigma0, w_712());
  REQUIRE(rep.admissible());
  auto direct = relative_monodromy(FilteredNilp(w_712(), n_op(0)));
  bool found = false;
  for (std::size_t i = 0; i < rep.faces.size(); ++i)
    if (rep.faces[i].rays().size() == 1) {
      CHECK(rep.face_filtrations[i] == *direct.filtration);
      found = true;
    }
  CHECK(found);
}

TEST_CASE("admissibility of the zero cone") {
  auto rep = check_admissible(Cone::zero(3), w_712());
  REQUIRE(rep.admissible());
  REQUIRE(rep.faces.size() == 1);
  CHECK(rep.face_filtrations[0] == w_712());
}

TEST_CASE("admissibility of the two-generator product cone") {
  QMatrix n1 = block_diag(kron(jordan(2), QMatrix::identity(2)), QMatrix(1, 1));
  QMatrix n2 = block_diag(kron(QMatrix::identity(2), jordan(2)), QMatrix(1, 1));
  std::map<int, QSubspace> steps;
  steps[-2] = e_span(5, {0, 1, 2, 3});
  steps[-1] = steps[-2];
  steps[0] = QSubspace::full(5);
  IncFiltration w(5, -2, 0, std::move(steps));
  Cone tau(5, {n1, n2});
  auto rep = check_admissible(tau, w);
  REQUIRE(rep.admissible());
  CHECK(rep.faces.size() == 4);

  // interior independence: distinct interior points give the same filtration
  auto m1 =
      relative_monodromy(FilteredNilp(w, Rational(2) * n1 + Rational(1) * n2));
  auto m2 =
      relative_monodromy(FilteredNilp(w, Rational(1) * n1 + Rational(3) * n2));
  REQUIRE(m1.exists());
  REQUIRE(m2.exists());
  CHECK(*m1.filtration == *m2.filtration);
}

TEST_CASE("cone-surjection pullback preserves admissibility and filtrations") {
  ConeAction ca;
  ca.space_dim = 3;
  ca.cone = ConeGeom::from_generators(
      2, {{Rational(1), Rational(0)}, {Rational(0), Rational(1)}});
  ca.images = {n_op(0), n_op(0)};
  auto rep = check_admissible(ca, w_712());
  REQUIRE(rep.admissible());
  auto direct = relative_monodromy(FilteredNilp(w_712(), n_op(0)));
  for (std::size_t i = 0; i < rep.faces.size(); ++i) {
    if (rep.faces[i].rays().empty())
      CHECK(rep.face_filtrations[i] == w_712());
    else
      CHECK(rep.face_filtrations[i] == *direct.filtration);
  }
}

TEST_CASE("adjoint action on the endomorphism object stays admissible") {
  for (int n : {0, 1}) {
    FilteredNilp x(w_712(), n_op(n));
    auto h = combine(x, x, CombineOp::Hom);
    Cone adc(9, {h.n});
    auto rep = check_admissible(adc, h.w);
    CHECK(rep.admissible());
  }
}

TEST_CASE("graded action of a depth-lowering commuting operator vanishes") {
  struct Case {
    FilteredNilp x;
    QMatrix h;
  };
  std::vector<Case> cases;
  {
    QMatrix h(3, 3);
    h(0, 2) = Rational(1);  // e3 -> e1
    cases.push_back({FilteredNilp(w_712(), n_op(2)), h});
  }
  {
    QMatrix p = jordan(3);
    cases.push_back({FilteredNilp(weight_filtration(p, 0), p * p), p});
  }
  {
    QMatrix p = block_diag(jordan(3), jordan(2));
    cases.push_back({FilteredNilp(weight_filtration(p, 0), p * p), p});
  }
  for (const auto& c : cases) {
    REQUIRE(commute(c.x.n, c.h));
    for (int k = c.x.w.lo(); k <= c.x.w.hi() + 1; ++k)
      REQUIRE(c.x.w.step(k - 1).contains(c.x.w.step(k).image_under(c.h)));
    auto r = relative_monodromy(c.x);
    REQUIRE(r.exists());
    IncFiltration m = r.filtration->normalized();
    for (int k = m.lo(); k <= m.hi(); ++k) {
      auto gr = graded_piece(m, k);
      if (gr.dim == 0) continue;
      for (std::size_t j = 0; j < gr.dim; ++j)
        CHECK(m.step(k - 1).contains(c.h * gr.lift.row(j)));
    }
  }
}

TEST_CASE("successive filtrations") {
  CHECK(successive_filtrations({}, w_712()).empty());
  auto seq = successive_filtrations({n_op(0)}, w_712());
  REQUIRE(seq.size() == 1);
  REQUIRE(seq[0].exists());
  auto direct = relative_monodromy(FilteredNilp(w_712(), n_op(0)));
  CHECK(*seq[0].filtration == *direct.filtration);

  QMatrix n1 = block_diag(kron(jordan(2), QMatrix::identity(2)), QMatrix(1, 1));
  QMatrix n2 = block_diag(kron(QMatrix::identity(2), jordan(2)), QMatrix(1, 1));
  std::map<int, QSubspace> steps;
  steps[-2] = e_span(5, {0, 1, 2, 3});
  steps[-1] = steps[-2];
  steps[0] = QSubspace::full(5);
  IncFiltration w(5, -2, 0, std::move(steps));
  auto seq2 = successive_filtrations({n1, n2}, w);
  REQUIRE(seq2.size() == 2);
  REQUIRE(seq2[0].exists());
  REQUIRE(seq2[1].exists());
  auto sum = relative_monodromy(FilteredNilp(w, n1 + n2));
  REQUIRE(sum.exists());
  CHECK(*seq2[1].filtration == *sum.filtration);
}
