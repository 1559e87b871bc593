#pragma once

// Finitely generated rational polyhedral cones: canonical extreme rays,
// face lattices through exact dual descriptions, intersections, sharpness
// and relative-interior queries.  Cones of commuting nilpotent matrices
// and the marked variant living over a monoid cone are wrappers around the
// same vector-level geometry.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "lmh/errors.hpp"
#include "lmh/lp.hpp"
#include "lmh/matrix.hpp"
#include "lmh/scalars.hpp"
#include "lmh/subspace.hpp"

namespace lmh {

using QVec = std::vector<Rational>;

inline bool vec_is_zero(const QVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

// Scale to integer entries with content 1; direction (sign) preserved.
inline QVec primitive(const QVec& v) {
  Int l = 1;
  for (const auto& x : v) l = lcm(l, den(x));
  Int g = 0;
  for (const auto& x : v) g = gcd(g, num(x) * (l / den(x)));
  if (g == 0) return QVec(v.size(), Rational(0));
  QVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i] * Rational(l, g);
  return r;
}

inline bool lex_less(const QVec& a, const QVec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

// A finitely generated cone of vectors in Q^d.
class ConeGeom {
public:
  ConeGeom() = default;

  static ConeGeom from_generators(std::size_t ambient_dim,
                                  std::vector<QVec> gens) {
    ConeGeom c;
    c.ambient_ = ambient_dim;
    for (auto& g : gens) {
      if (g.size() != ambient_dim) throw DimensionMismatch("cone generator");
      if (!vec_is_zero(g)) c.generators_.push_back(std::move(g));
    }
    c.finish();
    return c;
  }

  static ConeGeom zero(std::size_t ambient_dim) {
    return from_generators(ambient_dim, {});
  }

  std::size_t ambient() const { return ambient_; }
  const std::vector<QVec>& generators() const { return generators_; }
  const std::vector<QVec>& rays() const { return rays_; }  // canonical extreme rays
  std::size_t dim() const { return span_.dim(); }
  const QSubspace& span() const { return span_; }
  bool is_zero_cone() const { return rays_.empty() && sharp_; }

  bool is_sharp() const { return sharp_; }

  bool contains(const QVec& v) const {
    if (v.size() != ambient_) throw DimensionMismatch("cone contains");
    if (!span_.contains(v)) return false;
    return in_nonneg_span(generators_, v);
  }

  bool contains(const ConeGeom& other) const {
    return std::all_of(other.rays_.begin(), other.rays_.end(),
                       [&](const QVec& r) { return contains(r); });
  }

  friend bool operator==(const ConeGeom& a, const ConeGeom& b) {
    if (a.ambient_ != b.ambient_) return false;
    if (a.sharp_ && b.sharp_) return a.rays_ == b.rays_;
    return a.contains(b) && b.contains(a);
  }
  friend bool operator!=(const ConeGeom& a, const ConeGeom& b) {
    return !(a == b);
  }

  // All faces, as cones; the zero face and the cone itself included.
  // Requires sharpness.
  std::vector<ConeGeom> faces() const {
    if (!sharp_) throw error("face lattice requires a sharp cone");
    std::vector<std::vector<std::size_t>> sets = face_ray_sets();
    std::vector<ConeGeom> out;
    out.reserve(sets.size());
    for (const auto& s : sets) {
      std::vector<QVec> gens;
      for (auto i : s) gens.push_back(rays_[i]);
      out.push_back(from_generators(ambient_, std::move(gens)));
    }
    return out;
  }

  // v must lie in the cone; unique face with v in its relative interior.
  ConeGeom smallest_face_containing(const QVec& v) const {
    if (!contains(v)) throw NotInCone("smallest_face_containing");
    if (vec_is_zero(v)) return zero(ambient_);
    std::vector<QVec> normals = facet_normals();
    std::vector<QVec> gens;
    for (const auto& r : rays_) {
      bool keep = true;
      for (const auto& y : normals) {
        if (dot(y, v) == 0 && dot(y, r) != 0) {
          keep = false;
          break;
        }
      }
      if (keep) gens.push_back(r);
    }
    return from_generators(ambient_, std::move(gens));
  }

  friend bool relative_interiors_meet(const ConeGeom& a, const ConeGeom& b) {
    if (a.ambient_ != b.ambient_)
      throw DimensionMismatch("relative_interiors_meet");
    if (a.is_zero_cone() || b.is_zero_cone())
      return a.is_zero_cone() && b.is_zero_cone();
    // interior points are strictly positive combinations of extreme rays:
    // solve sum (1+p_i) r_i = sum (1+q_j) s_j with p, q >= 0
    std::size_t m = a.rays_.size(), k = b.rays_.size();
    QMatrix mat(a.ambient_, m + k);
    QVec rhs(a.ambient_, Rational(0));
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t i = 0; i < a.ambient_; ++i) mat(i, j) = a.rays_[j][i];
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t i = 0; i < a.ambient_; ++i)
        mat(i, m + j) = -b.rays_[j][i];
    for (std::size_t i = 0; i < a.ambient_; ++i) {
      for (std::size_t j = 0; j < m; ++j) rhs[i] -= a.rays_[j][i];
      for (std::size_t j = 0; j < k; ++j) rhs[i] += b.rays_[j][i];
    }
    return solve_eq_nonneg(mat, rhs).has_value();
  }

  friend ConeGeom intersect(const ConeGeom& a, const ConeGeom& b) {
    if (a.ambient_ != b.ambient_) throw DimensionMismatch("cone intersect");
    std::size_t m = a.rays_.size(), k = b.rays_.size();
    if (m == 0 || k == 0) return zero(a.ambient_);
    // extreme rays of {z >= 0 : M z = 0}, M = [rays(a) | -rays(b)]
    QMatrix mat(a.ambient_, m + k);
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t i = 0; i < a.ambient_; ++i) mat(i, j) = a.rays_[j][i];
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t i = 0; i < a.ambient_; ++i)
        mat(i, m + j) = -b.rays_[j][i];
    std::size_t r = rank(mat);
    std::vector<QVec> gens;
    std::vector<std::size_t> cols(m + k);
    for (std::size_t i = 0; i < m + k; ++i) cols[i] = i;
    std::vector<std::size_t> subset;
    enumerate_supports(mat, cols, subset, 0, r + 1, a, m, gens);
    return from_generators(a.ambient_, std::move(gens));
  }

  // Face test via the lattice (canonical compare).
  bool has_face(const ConeGeom& f) const {
    for (const auto& face : faces())
      if (face == f) return true;
    return false;
  }

  static Rational dot(const QVec& a, const QVec& b) {
    Rational s(0);
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
  }

  // Supporting facet normals in the ambient (zero on span-orthogonal part).
  std::vector<QVec> facet_normals() const {
    std::size_t s = span_.dim();
    std::vector<QVec> out;
    if (s <= 1) return out;  // a ray or the origin: no proper facets needed
    // candidates: normals of hyperplanes spanned by (s-1)-subsets of rays,
    // inside span coordinates
    std::vector<QVec> coords;  // rays in span coordinates
    QMatrix bt = span_.basis().transpose();
    for (const auto& r : rays_) {
      auto c = solve(bt, r);
      require(c.has_value(), "ray outside its span");
      coords.push_back(*c);
    }
    std::vector<std::size_t> idx;
    std::set<QVec> seen;
    collect_normals(coords, s, idx, 0, seen, out);
    return out;
  }

private:
  void finish() {
    // span and lineality
    std::vector<std::vector<Rational>> rows = generators_;
    span_ = QSubspace::span_of(rows, ambient_);
    sharp_ = true;
    for (const auto& g : generators_) {
      QVec neg(g.size());
      for (std::size_t i = 0; i < g.size(); ++i) neg[i] = -g[i];
      if (in_nonneg_span(generators_, neg)) {
        sharp_ = false;
        break;
      }
    }
    // canonical rays: primitive, deduped, irredundant
    std::vector<QVec> prim;
    for (const auto& g : generators_) {
      QVec p = primitive(g);
      if (std::find(prim.begin(), prim.end(), p) == prim.end())
        prim.push_back(p);
    }
    if (sharp_) {
      bool removed = true;
      while (removed) {
        removed = false;
        for (std::size_t i = 0; i < prim.size(); ++i) {
          std::vector<QVec> others;
          for (std::size_t j = 0; j < prim.size(); ++j)
            if (j != i) others.push_back(prim[j]);
          if (in_nonneg_span(others, prim[i])) {
            prim.erase(prim.begin() + i);
            removed = true;
            break;
          }
        }
      }
    }
    std::sort(prim.begin(), prim.end(), lex_less);
    rays_ = std::move(prim);
  }

  std::vector<std::vector<std::size_t>> face_ray_sets() const {
    std::vector<QVec> normals = facet_normals();
    std::set<std::vector<std::size_t>> sets;
    std::vector<std::size_t> all(rays_.size());
    for (std::size_t i = 0; i < rays_.size(); ++i) all[i] = i;
    sets.insert(all);
    sets.insert(std::vector<std::size_t>{});  // the zero face
    for (const auto& y : normals) {
      std::vector<std::size_t> s;
      for (std::size_t i = 0; i < rays_.size(); ++i)
        if (dot(y, rays_[i]) == 0) s.push_back(i);
      sets.insert(s);
    }
    if (rays_.size() == 1) sets.insert({0});
    // close under intersection
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<std::vector<std::size_t>> cur(sets.begin(), sets.end());
      for (std::size_t i = 0; i < cur.size(); ++i)
        for (std::size_t j = i + 1; j < cur.size(); ++j) {
          std::vector<std::size_t> meet;
          std::set_intersection(cur[i].begin(), cur[i].end(), cur[j].begin(),
                                cur[j].end(), std::back_inserter(meet));
          if (sets.insert(meet).second) grew = true;
        }
    }
    return {sets.begin(), sets.end()};
  }

  void collect_normals(const std::vector<QVec>& coords, std::size_t s,
                       std::vector<std::size_t>& idx, std::size_t start,
                       std::set<QVec>& seen, std::vector<QVec>& out) const {
    if (idx.size() == s - 1) {
      QMatrix m(idx.size(), s);
      for (std::size_t i = 0; i < idx.size(); ++i) m.set_row(i, coords[idx[i]]);
      QMatrix k = kernel(m);
      if (k.rows() != 1) return;
      QVec y_span = k.row(0);
      // back to ambient coordinates: y = sum y_span_i * basis_row_i works
      // because the form restricted to the span stays the coordinate pairing
      // only after orthogonalization; instead evaluate directly in span coords.
      for (int sign = 0; sign < 2; ++sign) {
        bool ok = true;
        bool strict = false;
        for (const auto& c : coords) {
          Rational d = dot(y_span, c);
          if (sign) d = -d;
          if (d < 0) {
            ok = false;
            break;
          }
          if (d > 0) strict = true;
        }
        if (ok && strict) {
          QVec y = ambient_normal(sign ? negate(y_span) : y_span);
          y = primitive(y);
          if (seen.insert(y).second) out.push_back(y);
        }
      }
      return;
    }
    for (std::size_t i = start; i + (s - 1 - idx.size()) <= coords.size(); ++i) {
      idx.push_back(i);
      collect_normals(coords, s, idx, i + 1, seen, out);
      idx.pop_back();
    }
  }

  static QVec negate(const QVec& v) {
    QVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = -v[i];
    return r;
  }

  // Lift a span-coordinate functional to an ambient vector y with
  // y . r = functional(coords(r)) for all rays r.
  QVec ambient_normal(const QVec& y_span) const {
    // Solve B y = y_span' where B = span basis rows and the functional acts
    // through the coordinates: want y with (B y)_i matching the pairing of
    // y_span against coordinates; since coords(r) = solve(B^T, r), we need
    // y = B^T g where g solves (B B^T) g = y_span.
    QMatrix b = span_.basis();
    QMatrix gram = b * b.transpose();
    auto g = solve(gram, y_span);
    require(g.has_value(), "gram solve");
    QVec y(ambient_, Rational(0));
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < ambient_; ++j) y[j] += (*g)[i] * b(i, j);
    return y;
  }

  static void enumerate_supports(const QMatrix& mat,
                                 const std::vector<std::size_t>& cols,
                                 std::vector<std::size_t>& subset,
                                 std::size_t start, std::size_t max_size,
                                 const ConeGeom& a, std::size_t m,
                                 std::vector<QVec>& gens) {
    if (!subset.empty()) {
      QMatrix sub(mat.rows(), subset.size());
      for (std::size_t j = 0; j < subset.size(); ++j)
        for (std::size_t i = 0; i < mat.rows(); ++i)
          sub(i, j) = mat(i, subset[j]);
      QMatrix k = kernel(sub);
      if (k.rows() == 1) {
        QVec z = k.row(0);
        bool pos = true, neg = true, full = true;
        for (const auto& x : z) {
          if (x == 0) full = false;
          if (x > 0) neg = false;
          if (x < 0) pos = false;
        }
        if (full && (pos || neg)) {
          QVec x(a.ambient_, Rational(0));
          for (std::size_t j = 0; j < subset.size(); ++j) {
            if (subset[j] >= m) continue;
            Rational lam = neg ? -z[j] : z[j];
            for (std::size_t i = 0; i < a.ambient_; ++i)
              x[i] += lam * a.rays_[subset[j]][i];
          }
          if (!vec_is_zero(x)) gens.push_back(primitive(x));
        }
      }
    }
    if (subset.size() == max_size) return;
    for (std::size_t i = start; i < cols.size(); ++i) {
      subset.push_back(cols[i]);
      enumerate_supports(mat, cols, subset, i + 1, max_size, a, m, gens);
      subset.pop_back();
    }
  }

  std::size_t ambient_ = 0;
  std::vector<QVec> generators_;
  std::vector<QVec> rays_;
  QSubspace span_;
  bool sharp_ = true;
};

inline bool is_face_of(const ConeGeom& f, const ConeGeom& c) {
  if (!c.contains(f)) return false;
  return c.has_face(f);
}

// Cone of commuting nilpotent rational matrices acting on Q^n.
class Cone {
public:
  Cone() = default;

  Cone(std::size_t space_dim, std::vector<QMatrix> generators)
      : space_dim_(space_dim), gen_mats_(std::move(generators)) {
    std::vector<QVec> vecs;
    for (const auto& g : gen_mats_) {
      if (g.rows() != space_dim_ || g.cols() != space_dim_)
        throw DimensionMismatch("cone generator shape");
      if (!is_nilpotent(g)) throw NotNilpotent("cone generator");
      vecs.push_back(vectorize(g));
    }
    for (std::size_t i = 0; i < gen_mats_.size(); ++i)
      for (std::size_t j = i + 1; j < gen_mats_.size(); ++j)
        if (!commute(gen_mats_[i], gen_mats_[j]))
          throw NonCommuting("cone generators");
    geom_ = ConeGeom::from_generators(space_dim_ * space_dim_, std::move(vecs));
  }

  static Cone zero(std::size_t space_dim) { return Cone(space_dim, {}); }

  std::size_t space_dim() const { return space_dim_; }
  const std::vector<QMatrix>& generator_matrices() const { return gen_mats_; }
  const ConeGeom& geom() const { return geom_; }

  std::vector<QMatrix> ray_matrices() const {
    std::vector<QMatrix> out;
    for (const auto& r : geom_.rays())
      out.push_back(unvectorize(r, space_dim_, space_dim_));
    return out;
  }

  bool is_sharp() const { return geom_.is_sharp(); }

  bool contains(const QMatrix& n) const {
    return geom_.contains(vectorize(n));
  }

  // Sum of the canonical rays: a deterministic rational interior point.
  QMatrix interior_point() const {
    QMatrix s(space_dim_, space_dim_);
    for (const auto& r : ray_matrices()) s = s + r;
    return s;
  }

  std::vector<Cone> faces() const {
    std::vector<Cone> out;
    for (const auto& f : geom_.faces()) out.push_back(from_geom(space_dim_, f));
    return out;
  }

  Cone smallest_face_containing(const QMatrix& n) const {
    return from_geom(space_dim_, geom_.smallest_face_containing(vectorize(n)));
  }

  friend Cone intersect(const Cone& a, const Cone& b) {
    if (a.space_dim_ != b.space_dim_) throw DimensionMismatch("cone intersect");
    return from_geom(a.space_dim_, intersect(a.geom_, b.geom_));
  }

  friend bool relative_interiors_meet(const Cone& a, const Cone& b) {
    return relative_interiors_meet(a.geom_, b.geom_);
  }

  friend bool is_face_of(const Cone& f, const Cone& c) {
    return is_face_of(f.geom_, c.geom_);
  }

  friend bool operator==(const Cone& a, const Cone& b) {
    return a.space_dim_ == b.space_dim_ && a.geom_ == b.geom_;
  }
  friend bool operator!=(const Cone& a, const Cone& b) { return !(a == b); }

  Cone transformed(const QMatrix& g, const QMatrix& g_inv) const {
    std::vector<QMatrix> gens;
    for (const auto& n : gen_mats_) gens.push_back(g * n * g_inv);
    return Cone(space_dim_, std::move(gens));
  }

private:
  static Cone from_geom(std::size_t space_dim, const ConeGeom& g) {
    std::vector<QMatrix> gens;
    for (const auto& r : g.rays())
      gens.push_back(unvectorize(r, space_dim, space_dim));
    return Cone(space_dim, std::move(gens));
  }

  std::size_t space_dim_ = 0;
  std::vector<QMatrix> gen_mats_;
  ConeGeom geom_;
};

inline Cone ad_cone(const Cone& c, const QMatrix& g) {
  auto gi = inverse(g);
  require(gi.has_value(), "Ad by a singular matrix");
  return c.transformed(g, *gi);
}

// Cone in the fiber product of a monoid cone (coordinates Q^r) with the
// matrices inducing the prescribed graded action.
class MarkedCone {
public:
  MarkedCone() = default;

  // proj: image matrix of each of the r ray coordinates in End(Q^n).
  MarkedCone(std::size_t r, std::size_t space_dim, std::vector<QMatrix> proj,
             std::vector<std::pair<QVec, QMatrix>> pairs,
             const std::vector<std::pair<std::size_t, std::size_t>>& weight_blocks)
      : r_(r), space_dim_(space_dim), proj_(std::move(proj)),
        pairs_(std::move(pairs)) {
    if (proj_.size() != r_) throw DimensionMismatch("marked cone proj arity");
    std::vector<QVec> vecs;
    for (const auto& [x, n] : pairs_) {
      if (x.size() != r_) throw DimensionMismatch("marked cone x size");
      for (const auto& c : x)
        if (c < 0) throw NotInCone("marked cone x must be nonnegative");
      if (n.rows() != space_dim_ || n.cols() != space_dim_)
        throw DimensionMismatch("marked cone matrix shape");
      if (!is_nilpotent(n)) throw NotNilpotent("marked cone matrix");
      // fiber condition: the block-diagonal part of n equals proj(x)
      QMatrix px(space_dim_, space_dim_);
      for (std::size_t i = 0; i < r_; ++i) px = px + x[i] * proj_[i];
      if (block_diagonal_part(n, weight_blocks) != px)
        throw error("marked cone fiber condition violated");
      QVec v = x;
      auto nv = vectorize(n);
      v.insert(v.end(), nv.begin(), nv.end());
      vecs.push_back(std::move(v));
    }
    for (std::size_t i = 0; i < pairs_.size(); ++i)
      for (std::size_t j = i + 1; j < pairs_.size(); ++j)
        if (!commute(pairs_[i].second, pairs_[j].second))
          throw NonCommuting("marked cone matrices");
    geom_ = ConeGeom::from_generators(r_ + space_dim_ * space_dim_,
                                      std::move(vecs));
  }

  static QMatrix block_diagonal_part(
      const QMatrix& n,
      const std::vector<std::pair<std::size_t, std::size_t>>& blocks) {
    QMatrix r(n.rows(), n.cols());
    for (const auto& [lo, hi] : blocks)
      for (std::size_t i = lo; i < hi; ++i)
        for (std::size_t j = lo; j < hi; ++j) r(i, j) = n(i, j);
    return r;
  }

  std::size_t r() const { return r_; }
  std::size_t space_dim() const { return space_dim_; }
  const std::vector<std::pair<QVec, QMatrix>>& pairs() const { return pairs_; }
  const std::vector<QMatrix>& proj() const { return proj_; }
  const ConeGeom& geom() const { return geom_; }

  // The image cone in End(Q^n) (matrix components of the generators).
  Cone matrix_cone() const {
    std::vector<QMatrix> gens;
    for (const auto& [x, n] : pairs_) gens.push_back(n);
    return Cone(space_dim_, std::move(gens));
  }

  bool is_sharp() const { return geom_.is_sharp(); }

  friend bool operator==(const MarkedCone& a, const MarkedCone& b) {
    return a.r_ == b.r_ && a.space_dim_ == b.space_dim_ && a.geom_ == b.geom_;
  }
  friend bool operator!=(const MarkedCone& a, const MarkedCone& b) {
    return !(a == b);
  }

private:
  std::size_t r_ = 0;
  std::size_t space_dim_ = 0;
  std::vector<QMatrix> proj_;
  std::vector<std::pair<QVec, QMatrix>> pairs_;
  ConeGeom geom_;
};

}  // namespace lmh
