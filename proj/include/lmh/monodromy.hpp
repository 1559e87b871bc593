#pragma once

// Monodromy weight filtrations: the pure (centered) weight filtration of a
// nilpotent operator, a certified solver for the relative monodromy
// filtration of a filtered nilpotent object, the admissibility test for
// cones of commuting nilpotents, and successive filtrations.
//
// The solver maintains per-index lower/upper subspace bounds and saturates
// sound propagation rules; an Exists verdict is issued only for a candidate
// accepted by the full verifier, a NotExists verdict only on contradiction
// of sound constraints (or a forced unique candidate failing verification).
// Anything else is the distinguished Undecided outcome.

#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "lmh/cones.hpp"
#include "lmh/errors.hpp"
#include "lmh/filtration.hpp"
#include "lmh/matrix.hpp"
#include "lmh/subspace.hpp"

namespace lmh {

// Weight filtration of a nilpotent operator centered at `center`:
//   M_l = sum over i - j = l - center of ker(N^{i+1}) meet im(N^j).
inline IncFiltration weight_filtration(const QMatrix& n, int center) {
  if (!is_nilpotent(n)) throw NotNilpotent("weight_filtration");
  std::size_t dim = n.rows();
  std::size_t e = nilpotency_index(n);
  if (e == 0) e = 1;  // zero-dimensional space
  std::vector<QSubspace> kernels, images;
  QMatrix p = QMatrix::identity(dim);
  for (std::size_t k = 0; k <= e; ++k) {
    images.push_back(QSubspace::span(p));  // im(N^k) from the rows of (N^k)^T
    kernels.push_back(kernel_space(p));    // placeholder; fixed below
    p = p * n;
  }
  // rebuild properly: kernels[k] = ker(N^k), images[k] = im(N^k)
  p = QMatrix::identity(dim);
  for (std::size_t k = 0; k <= e; ++k) {
    kernels[k] = kernel_space(p);
    QMatrix cols = p.transpose();  // rows span the image
    images[k] = QSubspace::span(cols);
    p = p * n;
  }
  int lo = center - static_cast<int>(e) + 1;
  int hi = center + static_cast<int>(e) - 1;
  if (lo > hi) lo = hi = center;
  std::map<int, QSubspace> steps;
  for (int l = lo; l <= hi; ++l) {
    QSubspace s = QSubspace::zero(dim);
    for (std::size_t i = 0; i + 1 <= e; ++i) {
      long long j = static_cast<long long>(i) - (l - center);
      if (j < 0 || j > static_cast<long long>(e)) continue;
      s = s + intersect(kernels[i + 1], images[static_cast<std::size_t>(j)]);
    }
    steps[l] = s;
  }
  steps[hi] = QSubspace::full(dim);
  return IncFiltration(dim, lo, hi, std::move(steps)).normalized();
}

struct VerifyReport {
  bool ok = true;
  std::string first_failure;
};

// Conditions for M to be the relative monodromy filtration of x:
//   (1) N M_w within M_{w-2};
//   (2) N^m : gr^M_{w+m} gr^W_w -> gr^M_{w-m} gr^W_w is an isomorphism.
inline VerifyReport verify_rmf(const FilteredNilp& x, const IncFiltration& m) {
  VerifyReport rep;
  if (m.ambient() != x.dim) throw DimensionMismatch("verify_rmf");
  const IncFiltration w = x.w.normalized();
  const IncFiltration mm = m.normalized();
  for (int k = mm.lo(); k <= mm.hi() + 1; ++k) {
    if (!mm.step(k - 2).contains(mm.step(k).image_under(x.n))) {
      std::ostringstream os;
      os << "condition (1) fails: N M_" << k << " not within M_" << (k - 2);
      rep.ok = false;
      rep.first_failure = os.str();
      return rep;
    }
  }
  for (int wt = w.lo(); wt <= w.hi(); ++wt) {
    auto gr = graded_piece(w, wt);
    if (gr.dim == 0) continue;
    QMatrix nw = gr.induced_map(x.n);
    IncFiltration mind = induced_on_graded(mm, w, wt);
    int span = mind.hi() - mind.lo();
    for (int mu = 1; mu <= span + 1; ++mu) {
      auto top = graded_piece(mind, wt + mu);
      auto bot = graded_piece(mind, wt - mu);
      if (top.dim != bot.dim) {
        std::ostringstream os;
        os << "condition (2) fails at (w, m) = (" << wt << ", " << mu
           << "): graded dimensions " << top.dim << " vs " << bot.dim;
        rep.ok = false;
        rep.first_failure = os.str();
        return rep;
      }
      if (top.dim == 0) continue;
      QMatrix pw = nw.pow(static_cast<std::size_t>(mu));
      QMatrix map(bot.dim, top.dim);
      bool contained = true;
      for (std::size_t j = 0; j < top.dim && contained; ++j) {
        auto img = pw * top.lift.row(j);
        if (!mind.step(wt - mu).contains(img)) {
          contained = false;
          break;
        }
        auto coords = bot.project(img);
        for (std::size_t i = 0; i < bot.dim; ++i) map(i, j) = coords[i];
      }
      if (!contained || rank(map) != top.dim) {
        std::ostringstream os;
        os << "condition (2) fails at (w, m) = (" << wt << ", " << mu
           << "): N^m not an isomorphism on the graded piece";
        rep.ok = false;
        rep.first_failure = os.str();
        return rep;
      }
    }
  }
  return rep;
}

struct RMFResult {
  enum class Verdict { Exists, NotExists, Undecided };
  Verdict verdict = Verdict::Undecided;
  std::optional<IncFiltration> filtration;
  std::string witness;

  bool exists() const { return verdict == Verdict::Exists; }
};

namespace detail {

struct RmfScratch {
  std::size_t dim;
  IncFiltration w;
  QMatrix n;
  int lo = 0, hi = 0;  // candidate jump range of M
  std::vector<std::size_t> forced;  // forced dim of M_k, k = lo-1 .. hi
  std::vector<QSubspace> low, up;

  std::size_t idx(int k) const {
    return static_cast<std::size_t>(k - (lo - 1));
  }
  const QSubspace& low_at(int k) const {
    static const QSubspace* dummy = nullptr;
    (void)dummy;
    if (k < lo - 1) return zero_s;
    if (k > hi) return full_s;
    return low[idx(k)];
  }
  const QSubspace& up_at(int k) const {
    if (k < lo - 1) return zero_s;
    if (k > hi) return full_s;
    return up[idx(k)];
  }
  QSubspace zero_s, full_s;
};

}  // namespace detail

inline RMFResult relative_monodromy(const FilteredNilp& x);

namespace detail {

inline FilteredNilp truncate_to(const FilteredNilp& x, int a, QMatrix* embed) {
  const QSubspace& s = x.w.step(a);
  IncFiltration wr = restricted_to(x.w, s);
  // operator in the sub-basis coordinates
  QMatrix bt = s.basis().transpose();
  QMatrix nr(s.dim(), s.dim());
  for (std::size_t j = 0; j < s.dim(); ++j) {
    auto img = x.n * s.basis().row(j);
    auto coords = solve(bt, img);
    require(coords.has_value(), "truncation operator coordinates");
    for (std::size_t i = 0; i < s.dim(); ++i) nr(i, j) = (*coords)[i];
  }
  if (embed) *embed = s.basis();  // rows embed the sub coordinates
  return FilteredNilp(wr, nr);
}

inline FilteredNilp quotient_of(const FilteredNilp& x, int a, QMatrix* proj) {
  const QSubspace& s = x.w.step(a);
  IncFiltration wq = quotient_by(x.w, s);
  std::vector<bool> piv(x.dim, false);
  for (auto p : s.pivots()) piv[p] = true;
  std::vector<std::size_t> comp;
  for (std::size_t c = 0; c < x.dim; ++c)
    if (!piv[c]) comp.push_back(c);
  QMatrix pr(comp.size(), x.dim);
  for (std::size_t j = 0; j < x.dim; ++j) {
    std::vector<Rational> e(x.dim, Rational(0));
    e[j] = Rational(1);
    auto red = s.reduce(e);
    for (std::size_t i = 0; i < comp.size(); ++i) pr(i, j) = red[comp[i]];
  }
  QMatrix nq(comp.size(), comp.size());
  for (std::size_t j = 0; j < comp.size(); ++j) {
    std::vector<Rational> lift(x.dim, Rational(0));
    lift[comp[j]] = Rational(1);
    auto img = pr * (x.n * lift);
    for (std::size_t i = 0; i < comp.size(); ++i) nq(i, j) = img[i];
  }
  if (proj) *proj = pr;
  return FilteredNilp(wq, nq);
}

inline IncFiltration filtration_from_bounds(const RmfScratch& sc,
                                            const std::vector<QSubspace>& bound) {
  std::map<int, QSubspace> steps;
  for (int k = sc.lo - 1; k <= sc.hi; ++k) steps[k] = bound[sc.idx(k)];
  steps[sc.hi] = QSubspace::full(sc.dim);
  return IncFiltration(sc.dim, sc.lo - 1, sc.hi, std::move(steps)).normalized();
}

inline bool bounds_monotone(const std::vector<QSubspace>& b) {
  for (std::size_t i = 1; i < b.size(); ++i)
    if (!b[i].contains(b[i - 1])) return false;
  return true;
}

}  // namespace detail

// Certified solver for the relative monodromy filtration M(N, W).
inline RMFResult relative_monodromy(const FilteredNilp& x) {
  RMFResult res;
  IncFiltration w = x.w.normalized();
  // pure case: the centered weight filtration always exists
  if (w.lo() == w.hi()) {
    IncFiltration m = weight_filtration(x.n, w.hi());
    auto rep = verify_rmf(x, m);
    require(rep.ok, "pure weight filtration rejected by verifier");
    res.verdict = RMFResult::Verdict::Exists;
    res.filtration = m;
    return res;
  }
  if (x.n.is_zero()) {
    res.verdict = RMFResult::Verdict::Exists;
    res.filtration = w;
    return res;
  }

  detail::RmfScratch sc;
  sc.dim = x.dim;
  sc.w = w;
  sc.n = x.n;
  sc.zero_s = QSubspace::zero(x.dim);
  sc.full_s = QSubspace::full(x.dim);

  // graded weight filtrations and forced dimensions
  std::map<int, IncFiltration> graded_wf;
  bool have_range = false;
  for (int wt = w.lo(); wt <= w.hi(); ++wt) {
    auto gr = graded_piece(w, wt);
    if (gr.dim == 0) continue;
    IncFiltration mw = weight_filtration(gr.induced_map(x.n), wt);
    if (!have_range) {
      sc.lo = mw.lo();
      sc.hi = mw.hi();
      have_range = true;
    } else {
      sc.lo = std::min(sc.lo, mw.lo());
      sc.hi = std::max(sc.hi, mw.hi());
    }
    graded_wf.emplace(wt, std::move(mw));
  }
  require(have_range, "empty graded data");
  std::size_t width = static_cast<std::size_t>(sc.hi - sc.lo + 2);
  sc.forced.assign(width, 0);
  for (int k = sc.lo - 1; k <= sc.hi; ++k) {
    std::size_t d = 0;
    for (const auto& [wt, mw] : graded_wf) d += mw.step(k).dim();
    sc.forced[sc.idx(k)] = d;
  }
  sc.low.assign(width, sc.zero_s);
  sc.up.assign(width, sc.full_s);

  // sub/quotient recursion data
  struct Imported {
    QMatrix map;          // embedding rows (sub) or projection matrix (quot)
    IncFiltration filt;   // solved filtration of the smaller object
    bool is_sub;
    int a;
  };
  std::vector<Imported> imports;
  for (int a = w.lo(); a < w.hi(); ++a) {
    if (w.step(a).is_zero() || w.step(a) == w.step(a - 1)) continue;
    QMatrix embed;
    FilteredNilp sub = detail::truncate_to(x, a, &embed);
    RMFResult rs = relative_monodromy(sub);
    if (rs.verdict == RMFResult::Verdict::NotExists) {
      res.verdict = RMFResult::Verdict::NotExists;
      res.witness = "restriction to step " + std::to_string(a) +
                    " has no relative monodromy filtration: " + rs.witness;
      return res;
    }
    if (rs.exists())
      imports.push_back({embed, rs.filtration->normalized(), true, a});
    QMatrix proj;
    FilteredNilp quot = detail::quotient_of(x, a, &proj);
    RMFResult rq = relative_monodromy(quot);
    if (rq.verdict == RMFResult::Verdict::NotExists) {
      res.verdict = RMFResult::Verdict::NotExists;
      res.witness = "quotient by step " + std::to_string(a) +
                    " has no relative monodromy filtration: " + rq.witness;
      return res;
    }
    if (rq.exists())
      imports.push_back({proj, rq.filtration->normalized(), false, a});
  }

  auto embed_step = [&](const Imported& im, int k) {
    // subspace of V spanned by the embedded basis of the sub-filtration step
    const QSubspace& s = im.filt.step(k);
    std::vector<std::vector<Rational>> rows;
    for (std::size_t i = 0; i < s.dim(); ++i) {
      std::vector<Rational> v(x.dim, Rational(0));
      for (std::size_t j = 0; j < x.dim; ++j)
        for (std::size_t c = 0; c < s.ambient(); ++c)
          v[j] += s.basis()(i, c) * im.map(c, j);
      rows.push_back(std::move(v));
    }
    return QSubspace::span_of(rows, x.dim);
  };

  std::string contradiction;
  auto note_break = [&](int k, const std::string& why) {
    if (!sc.up_at(k).contains(sc.low_at(k)) && contradiction.empty())
      contradiction = why;
  };

  bool changed = true;
  int guard = 0;
  while (changed && contradiction.empty()) {
    changed = false;
    require(++guard < 1000, "relative monodromy solver failed to settle");
    for (int k = sc.lo - 1; k <= sc.hi; ++k) {
      std::size_t i = sc.idx(k);
      auto grow_low = [&](const QSubspace& s, const std::string& why) {
        if (sc.low[i].contains(s)) return;
        sc.low[i] = sc.low[i] + s;
        changed = true;
        note_break(k, why);
      };
      auto cut_up = [&](const QSubspace& s, const std::string& why) {
        if (s.contains(sc.up[i])) return;
        sc.up[i] = intersect(sc.up[i], s);
        changed = true;
        note_break(k, why);
      };
      std::ostringstream kk;
      kk << "index " << k;
      // monotonicity
      grow_low(sc.low_at(k - 1), "monotonicity at " + kk.str());
      cut_up(sc.up_at(k + 1), "monotonicity at " + kk.str());
      // N-transport
      grow_low(sc.low_at(k + 2).image_under(x.n),
               "condition (1): N M_" + std::to_string(k + 2) +
                   " must lie in M_" + std::to_string(k));
      cut_up(sc.up_at(k - 2).preimage_under(x.n),
             "condition (1): N M_" + std::to_string(k) +
                 " must lie in M_" + std::to_string(k - 2));
      // kernel inclusion
      grow_low(intersect(kernel_space(x.n), w.step(k)),
               "kernel inclusion at " + kk.str());
      // imported sub/quotient constraints
      for (const auto& im : imports) {
        if (im.is_sub) {
          QSubspace e = embed_step(im, k);
          grow_low(e, "restriction constraint at " + kk.str());
          if (w.step(im.a).contains(sc.up[i]))
            cut_up(e, "restriction pins M_" + std::to_string(k) +
                          " inside step " + std::to_string(im.a));
        } else {
          cut_up(im.filt.step(k).preimage_under(im.map),
                 "quotient constraint at " + kk.str());
        }
      }
      // dimension forcing
      if (contradiction.empty()) {
        if (sc.low[i].dim() > sc.forced[i]) {
          contradiction = "graded dimensions unreachable at " + kk.str() +
                          ": lower bound too large";
          break;
        }
        if (sc.up[i].dim() < sc.forced[i]) {
          contradiction = "graded dimensions unreachable at " + kk.str() +
                          ": upper bound too small";
          break;
        }
        if (sc.up[i].dim() == sc.forced[i])
          grow_low(sc.up[i], "dimension-forced at " + kk.str());
        else if (sc.low[i].dim() == sc.forced[i])
          cut_up(sc.low[i], "dimension-forced at " + kk.str());
      }
      if (!contradiction.empty()) break;
      if (!sc.up[i].contains(sc.low[i]) && contradiction.empty())
        contradiction = "bounds crossed at " + kk.str();
    }
  }

  if (!contradiction.empty()) {
    res.verdict = RMFResult::Verdict::NotExists;
    res.witness = contradiction;
    return res;
  }

  bool converged = true;
  for (std::size_t i = 0; i < sc.low.size(); ++i)
    if (sc.low[i] != sc.up[i]) converged = false;

  auto try_candidate = [&](const std::vector<QSubspace>& bound) -> bool {
    if (!detail::bounds_monotone(bound)) return false;
    if (!bound.back().is_full()) return false;
    IncFiltration cand = detail::filtration_from_bounds(sc, bound);
    auto rep = verify_rmf(x, cand);
    if (!rep.ok) return false;
    res.verdict = RMFResult::Verdict::Exists;
    res.filtration = cand;
    return true;
  };

  if (converged) {
    IncFiltration cand = detail::filtration_from_bounds(sc, sc.low);
    auto rep = verify_rmf(x, cand);
    if (rep.ok) {
      res.verdict = RMFResult::Verdict::Exists;
      res.filtration = cand;
    } else {
      // bounds pinned a unique candidate and it fails the definition
      res.verdict = RMFResult::Verdict::NotExists;
      res.witness = rep.first_failure;
    }
    return res;
  }

  if (try_candidate(sc.low) || try_candidate(sc.up)) return res;

  res.verdict = RMFResult::Verdict::Undecided;
  std::ostringstream os;
  os << "bounds stalled: ";
  for (int k = sc.lo - 1; k <= sc.hi; ++k)
    if (sc.low[sc.idx(k)] != sc.up[sc.idx(k)])
      os << "dim gap at index " << k << " [" << sc.low[sc.idx(k)].dim() << ","
         << sc.up[sc.idx(k)].dim() << "] ";
  res.witness = os.str();
  return res;
}

// ---------------------------------------------------------------------------
// Admissibility of a cone action.

// A cone given in an abstract coordinate space together with a linear action
// into End(V, W): act(coords) = sum coords_i * images[i].
struct ConeAction {
  ConeGeom cone;
  std::vector<QMatrix> images;  // one per abstract coordinate
  std::size_t space_dim = 0;

  QMatrix apply(const QVec& v) const {
    QMatrix m(space_dim, space_dim);
    for (std::size_t i = 0; i < images.size(); ++i)
      if (v[i] != 0) m = m + v[i] * images[i];
    return m;
  }

  static ConeAction of_matrix_cone(const Cone& c) {
    ConeAction a;
    std::size_t n = c.space_dim();
    a.space_dim = n;
    std::vector<QVec> gens;
    for (const auto& g : c.geom().rays()) gens.push_back(g);
    a.cone = ConeGeom::from_generators(n * n, gens);
    a.images.reserve(n * n);
    for (std::size_t i = 0; i < n * n; ++i) {
      QMatrix e(n, n);
      e(i / n, i % n) = Rational(1);
      a.images.push_back(std::move(e));
    }
    return a;
  }
};

struct AdmissibilityResult {
  enum class Verdict { Admissible, NotAdmissible, Undecided };
  Verdict verdict = Verdict::Undecided;
  std::string reason;
  // face filtrations M(tau, W), aligned with `faces`
  std::vector<ConeGeom> faces;
  std::vector<IncFiltration> face_filtrations;

  bool admissible() const { return verdict == Verdict::Admissible; }

  const IncFiltration& filtration_of(const ConeGeom& face) const {
    for (std::size_t i = 0; i < faces.size(); ++i)
      if (faces[i] == face) return face_filtrations[i];
    throw error("face not in certificate");
  }
};

// Conditions on the family (M(tau, W)) over the faces of the cone:
//   (1) the minimal face carries W itself,
//   (2) every cone generator preserves each M(tau),
//   (3) every tau-generator shifts M(tau) by -2,
//   (4) M(tau') = M(act(N), M(tau)) for tau' the smallest face containing
//       tau and the generator N.
inline AdmissibilityResult check_admissible(const ConeAction& ca,
                                            const IncFiltration& w) {
  AdmissibilityResult out;
  for (const auto& g : ca.cone.rays()) {
    QMatrix m = ca.apply(g);
    if (!is_nilpotent(m)) throw NotNilpotent("cone action image");
    for (int k = w.lo(); k <= w.hi(); ++k)
      if (!w.step(k).contains(w.step(k).image_under(m)))
        throw error("cone action does not preserve the filtration");
  }
  for (std::size_t i = 0; i < ca.cone.rays().size(); ++i)
    for (std::size_t j = i + 1; j < ca.cone.rays().size(); ++j)
      if (!commute(ca.apply(ca.cone.rays()[i]), ca.apply(ca.cone.rays()[j])))
        throw NonCommuting("cone action images");

  std::vector<ConeGeom> faces = ca.cone.faces();
  // order faces by dimension so smallest-face lookups see subfaces first
  std::sort(faces.begin(), faces.end(),
            [](const ConeGeom& a, const ConeGeom& b) {
              return a.rays().size() < b.rays().size();
            });
  std::vector<IncFiltration> filts;
  for (const auto& tau : faces) {
    QVec interior(ca.cone.ambient(), Rational(0));
    for (const auto& r : tau.rays())
      for (std::size_t i = 0; i < r.size(); ++i) interior[i] += r[i];
    QMatrix n_tau = ca.apply(interior);
    RMFResult r = relative_monodromy(FilteredNilp(w, n_tau));
    if (!r.exists()) {
      out.verdict = r.verdict == RMFResult::Verdict::NotExists
                        ? AdmissibilityResult::Verdict::NotAdmissible
                        : AdmissibilityResult::Verdict::Undecided;
      out.reason = "M(tau, W) unavailable for a face: " + r.witness;
      if (out.verdict == AdmissibilityResult::Verdict::Undecided)
        throw UndecidedRMF(out.reason);
      return out;
    }
    filts.push_back(r.filtration->normalized());
  }

  // (1): minimal face is first after sorting; for sharp cones it is {0}
  if (filts.front() != w.normalized()) {
    out.verdict = AdmissibilityResult::Verdict::NotAdmissible;
    out.reason = "M({0}, W) differs from W";
    return out;
  }

  for (std::size_t fi = 0; fi < faces.size(); ++fi) {
    const ConeGeom& tau = faces[fi];
    const IncFiltration& mt = filts[fi];
    for (const auto& g : ca.cone.rays()) {
      QMatrix ng = ca.apply(g);
      for (int k = mt.lo(); k <= mt.hi(); ++k)
        if (!mt.step(k).contains(mt.step(k).image_under(ng))) {
          out.verdict = AdmissibilityResult::Verdict::NotAdmissible;
          out.reason = "a cone generator does not preserve M(tau, W)";
          return out;
        }
    }
    for (const auto& g : tau.rays()) {
      QMatrix ng = ca.apply(g);
      for (int k = mt.lo(); k <= mt.hi() + 1; ++k)
        if (!mt.step(k - 2).contains(mt.step(k).image_under(ng))) {
          out.verdict = AdmissibilityResult::Verdict::NotAdmissible;
          out.reason = "a face generator does not shift M(tau, W) by -2";
          return out;
        }
    }
    for (const auto& g : ca.cone.rays()) {
      // smallest face containing tau and g
      std::size_t ti = faces.size();
      for (std::size_t fj = 0; fj < faces.size(); ++fj) {
        if (!faces[fj].contains(tau)) continue;
        if (!faces[fj].contains(g)) continue;
        ti = fj;
        break;
      }
      require(ti < faces.size(), "smallest face lookup");
      RMFResult rel =
          relative_monodromy(FilteredNilp(mt, ca.apply(g)));
      if (!rel.exists()) {
        if (rel.verdict == RMFResult::Verdict::Undecided)
          throw UndecidedRMF("condition (4) relative filtration undecided");
        out.verdict = AdmissibilityResult::Verdict::NotAdmissible;
        out.reason = "M(N, M(tau, W)) does not exist for a generator";
        return out;
      }
      if (rel.filtration->normalized() != filts[ti]) {
        out.verdict = AdmissibilityResult::Verdict::NotAdmissible;
        out.reason = "M(N, M(tau, W)) differs from M(tau', W)";
        return out;
      }
    }
  }

  out.verdict = AdmissibilityResult::Verdict::Admissible;
  out.faces = std::move(faces);
  out.face_filtrations = std::move(filts);
  return out;
}

inline AdmissibilityResult check_admissible(const Cone& c,
                                            const IncFiltration& w) {
  return check_admissible(ConeAction::of_matrix_cone(c), w);
}

// W^(j) = M(N_1 + ... + N_j, W), each certified.
inline std::vector<RMFResult> successive_filtrations(
    const std::vector<QMatrix>& ns, const IncFiltration& w) {
  for (std::size_t i = 0; i < ns.size(); ++i)
    for (std::size_t j = i + 1; j < ns.size(); ++j)
      if (!commute(ns[i], ns[j])) throw NonCommuting("successive_filtrations");
  std::vector<RMFResult> out;
  QMatrix acc(w.ambient(), w.ambient());
  for (const auto& n : ns) {
    acc = acc + n;
    out.push_back(relative_monodromy(FilteredNilp(w, acc)));
  }
  return out;
}

}  // namespace lmh
