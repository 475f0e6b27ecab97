#ifndef CORNERCUT_TILTING_HPP_
#define CORNERCUT_TILTING_HPP_

#include <optional>
#include <string>
#include <vector>

#include "cornercut/blocking.hpp"
#include "cornercut/bodies.hpp"
#include "cornercut/lattice2d.hpp"

namespace cornercut {

// Y_i: the lattice points of facet i that a tilt must keep on that facet.
using FacetPoints = std::vector<std::vector<Vec2>>;

// Unknowns are the entries of A = (a^1; ...; a^n) flattened row by row, so
// a^i occupies columns 2i and 2i+1.
struct TiltingSystem {
  Body body;
  FacetPoints Y;
  std::vector<RayHit> incidence;
  QMat equalities;
  QVec rhs;
  QMat strict;  // strict.row(t) . A > 0
  std::vector<QVec> null_basis;
  std::size_t dimension = 0;

  std::size_t unknowns() const { return 2 * body.n(); }
};

namespace detail {

inline QVec flatten(const std::vector<Vec2>& rows) {
  QVec v;
  for (const auto& r : rows) {
    v.push_back(r.x);
    v.push_back(r.y);
  }
  return v;
}

inline std::vector<Vec2> unflatten(const QVec& v) {
  std::vector<Vec2> rows;
  for (std::size_t i = 0; i + 1 < v.size(); i += 2) rows.push_back({v[i], v[i + 1]});
  return rows;
}

inline QVec row_selector(std::size_t n, std::size_t i, const Vec2& w) {
  QVec e(2 * n, Rational(0));
  e[2 * i] = w.x;
  e[2 * i + 1] = w.y;
  return e;
}

inline std::vector<std::vector<std::size_t>> tight_sets(const std::vector<Vec2>& rows,
                                                        const std::vector<Vec2>& rays) {
  std::vector<std::vector<std::size_t>> out;
  for (const auto& r : rays) {
    Rational best = dot(rows[0], r);
    for (const auto& b : rows) best = std::max(best, Rational(dot(b, r)));
    std::vector<std::size_t> t;
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (dot(rows[i], r) == best) t.push_back(i);
    out.push_back(std::move(t));
  }
  return out;
}

inline QVec row_gauges(const std::vector<Vec2>& rows, const std::vector<Vec2>& rays) {
  QVec g;
  for (const auto& r : rays) {
    Rational best = dot(rows[0], r);
    for (const auto& b : rows) best = std::max(best, Rational(dot(b, r)));
    g.push_back(best);
  }
  return g;
}

// Lattice points of a bounded polygon (closed).
inline std::vector<Vec2> lattice_points_of(const Polygon& p) {
  if (!p.bounded() || p.vertices.empty())
    throw DomainError("lattice_points_of: region is not a bounded polygon");
  Rational x0 = p.vertices[0].x, x1 = x0;
  for (const auto& v : p.vertices) {
    x0 = std::min(x0, v.x);
    x1 = std::max(x1, v.x);
  }
  std::vector<Vec2> out;
  for (Integer x = ceil(x0); Rational(x) <= x1; ++x) {
    std::optional<Rational> lo, hi;
    bool empty = false;
    for (const auto& e : p.edges) {
      // a.x * x + a.y * y <= b
      Rational rest = e.h.b - e.h.a.x * Rational(x);
      if (sgn(e.h.a.y) == 0) {
        if (sgn(rest) < 0) empty = true;
        continue;
      }
      Rational bound = rest / e.h.a.y;
      if (sgn(e.h.a.y) > 0) {
        if (!hi || bound < *hi) hi = bound;
      } else if (!lo || bound > *lo) {
        lo = bound;
      }
    }
    if (empty || !lo || !hi) continue;
    for (Integer y = ceil(*lo); Rational(y) <= *hi; ++y)
      out.push_back({Rational(x), Rational(y)});
  }
  return out;
}

}  // namespace detail

inline TiltingSystem build_tilting_system(const Body& body, const FacetPoints& Y,
                                          const CornerInstance& inst) {
  const std::size_t n = body.n();
  if (Y.size() != n)
    throw UsageError("build_tilting_system: expected " + std::to_string(n) +
                     " point sets, got " + std::to_string(Y.size()));
  TiltingSystem sys;
  sys.body = body;
  sys.Y = Y;
  const Vec2& f = body.f();
  std::vector<QVec> eq, strict;
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& y : Y[i]) {
      if (!y.is_integral())
        throw DomainError("build_tilting_system: " + to_string(y) + " is not a lattice point");
      if (dot(body.rows()[i], y - f) != 1 || !body.polygon().contains(y))
        throw DomainError("build_tilting_system: " + to_string(y) + " is not on facet " +
                          std::to_string(i + 1));
      eq.push_back(detail::row_selector(n, i, y - f));
      sys.rhs.push_back(1);
    }
  }
  sys.incidence = ray_incidence(body, inst.rays, false);
  for (std::size_t j = 0; j < inst.k(); ++j) {
    const auto& I = sys.incidence[j].tight;
    const Vec2& r = inst.rays[j];
    for (std::size_t t = 1; t < I.size(); ++t) {
      QVec row = detail::row_selector(n, I[0], r);
      QVec other = detail::row_selector(n, I[t], r);
      for (std::size_t c = 0; c < row.size(); ++c) row[c] -= other[c];
      eq.push_back(std::move(row));
      sys.rhs.push_back(0);
    }
    for (std::size_t i2 = 0; i2 < n; ++i2) {
      if (std::find(I.begin(), I.end(), i2) != I.end()) continue;
      QVec row = detail::row_selector(n, I[0], r);
      QVec other = detail::row_selector(n, i2, r);
      for (std::size_t c = 0; c < row.size(); ++c) row[c] -= other[c];
      strict.push_back(std::move(row));
    }
  }
  sys.equalities = QMat::from_rows(eq, 2 * n);
  sys.strict = QMat::from_rows(strict, 2 * n);
  sys.null_basis = null_space(sys.equalities);
  sys.dimension = sys.null_basis.size();
  return sys;
}

// ---------------------------------------------------------------------------
// Witnesses.

struct TiltWitness {
  std::vector<Vec2> direction;  // A-bar
  Rational epsilon;
  Body plus, minus;             // B + eps A-bar, B - eps A-bar
  QVec gamma, gamma_plus, gamma_minus;
  std::size_t basis_index = 0;
};

namespace detail {

inline bool changes_gauge(const TiltingSystem& sys, const std::vector<Vec2>& abar,
                          const CornerInstance& inst) {
  for (std::size_t j = 0; j < inst.k(); ++j) {
    const auto& I = sys.incidence[j].tight;
    if (sgn(dot(abar[I[0]], inst.rays[j])) != 0) return true;
  }
  return false;
}

// Lattice points of M(A) all lie in M(B); only meaningful for bounded B.
inline bool keeps_lattice_points(const Body& tilted, const std::vector<Vec2>& ybody) {
  if (!tilted.bounded()) return false;
  for (const auto& y : lattice_points_of(tilted.polygon()))
    if (std::find(ybody.begin(), ybody.end(), y) == ybody.end()) return false;
  return true;
}

}  // namespace detail

inline std::optional<TiltWitness> tilt_witness(const Body& body, const FacetPoints& Y,
                                               const CornerInstance& inst) {
  TiltingSystem sys = build_tilting_system(body, Y, inst);
  if (sys.dimension == 0) return std::nullopt;
  const auto& rows = body.rows();
  const std::size_t n = body.n();
  auto base_tight = detail::tight_sets(rows, inst.rays);
  QVec gamma = detail::row_gauges(rows, inst.rays);
  std::vector<Vec2> ybody;
  // S(B) is only a neighbourhood of B for bounded bodies
  if (body.bounded()) ybody = detail::lattice_points_of(body.polygon());
  BlockingSystem blocking = build_blocking_system(inst);

  for (std::size_t b = 0; b < sys.null_basis.size(); ++b) {
    auto abar = detail::unflatten(sys.null_basis[b]);
    if (!detail::changes_gauge(sys, abar, inst)) continue;
    Rational eps(1, 2);
    for (int iter = 0; iter < 64; ++iter, eps /= 2) {
      std::vector<Vec2> plus(n), minus(n);
      for (std::size_t i = 0; i < n; ++i) {
        plus[i] = rows[i] + eps * abar[i];
        minus[i] = rows[i] - eps * abar[i];
      }
      if (detail::tight_sets(plus, inst.rays) != base_tight ||
          detail::tight_sets(minus, inst.rays) != base_tight)
        continue;
      QVec gp = detail::row_gauges(plus, inst.rays);
      QVec gm = detail::row_gauges(minus, inst.rays);
      bool negative = false;
      for (std::size_t j = 0; j < gp.size(); ++j)
        if (sgn(gp[j]) < 0 || sgn(gm[j]) < 0) negative = true;
      // the sign of a changed zero coefficient does not depend on eps
      if (negative) break;
      Body bp(body.f(), plus), bm(body.f(), minus);
      if (body.bounded() && (!detail::keeps_lattice_points(bp, ybody) ||
                             !detail::keeps_lattice_points(bm, ybody)))
        continue;
      if (!separate(blocking, gp).valid || !separate(blocking, gm).valid) continue;
      TiltWitness w;
      w.direction = abar;
      w.epsilon = eps;
      w.plus = std::move(bp);
      w.minus = std::move(bm);
      w.gamma = gamma;
      w.gamma_plus = std::move(gp);
      w.gamma_minus = std::move(gm);
      w.basis_index = b;
      return w;
    }
  }
  return std::nullopt;
}

// One lattice point per facet, or every lattice point on each facet.
enum class Covering { Singleton, Full };

inline FacetPoints facet_covering(const Body& body, Covering kind) {
  FacetPoints Y(body.n());
  for (std::size_t i = 0; i < body.n(); ++i) {
    auto e = body.facet_edge(i);
    if (!e) continue;
    if (kind == Covering::Singleton || e->kind != Edge::Segment) {
      // unbounded facets contribute two points so the line stays fixed
      std::size_t want = (kind == Covering::Singleton) ? 1 : 2;
      Y[i] = lattice_points_on_edge(*e, want);
    } else {
      Y[i] = lattice_points_on_segment(e->origin, e->end());
    }
  }
  return Y;
}

// Tries the singleton covering, then the full one.
inline std::optional<TiltWitness> find_tilt_witness(const Body& body,
                                                    const CornerInstance& inst) {
  for (Covering c : {Covering::Singleton, Covering::Full}) {
    auto w = tilt_witness(body, facet_covering(body, c), inst);
    if (w) return w;
  }
  return std::nullopt;
}

inline std::optional<TiltWitness> simple_tilt_check(const Body& body, std::size_t facet,
                                                    const CornerInstance& inst) {
  if (facet >= body.n()) throw UsageError("simple_tilt_check: facet index out of range");
  if (!body.bounded()) throw DomainError("simple_tilt_check: M(B) must be a polytope");
  auto e = body.facet_edge(facet);
  if (!e) throw DomainError("simple_tilt_check: row " + std::to_string(facet + 1) +
                            " does not define a facet");
  auto relint = lattice_points_on_edge(*e, 2);
  if (relint.size() != 1)
    throw DomainError("simple_tilt_check: facet " + std::to_string(facet + 1) +
                      " must carry exactly one lattice point in its relative interior");
  auto hits = ray_incidence(body, inst.rays, false);
  bool off_lattice = false;
  for (std::size_t j = 0; j < hits.size(); ++j) {
    const auto& I = hits[j].tight;
    if (std::find(I.begin(), I.end(), facet) == I.end()) continue;
    if (I.size() > 1)
      throw DomainError("simple_tilt_check: ray " + std::to_string(j + 1) +
                        " meets an endpoint of facet " + std::to_string(facet + 1));
    if (!hits[j].point->is_integral()) off_lattice = true;
  }
  if (!off_lattice) return std::nullopt;
  FacetPoints Y = facet_covering(body, Covering::Full);
  Y[facet] = relint;
  return tilt_witness(body, Y, inst);
}

// ---------------------------------------------------------------------------
// Explicit lattice-free sets for tilted bodies.

// Adds the row c with c.(y4 - f) = 1, y4 = y + v or y - v the first lattice
// point of the facet line that the tilt pulled into the interior.
inline Body complete_with_edge(const Body& tilted, const CornerInstance& inst,
                               std::size_t facet, const Vec2& y, const Vec2& v,
                               const std::vector<Vec2>& anchors = {}) {
  if (facet >= tilted.n()) throw UsageError("complete_with_edge: facet index out of range");
  if (is_lattice_free(tilted).lattice_free) return tilted;
  const Polygon& poly = tilted.polygon();
  std::optional<Vec2> y4;
  for (const Vec2& cand : {y + v, y - v})
    if (poly.contains_strict(cand)) y4 = cand;
  if (!y4)
    throw DomainError("complete_with_edge: neither " + to_string(y + v) + " nor " +
                      to_string(y - v) + " is interior to the tilted body");
  const Vec2& f = tilted.f();
  Vec2 d = *y4 - f;
  Vec2 c0 = d / dot(d, d), w = perp(d);
  QVec psi = detail::row_gauges(tilted.rows(), inst.rays);
  // constraints (lin, rhs): c0.u + s w.u < rhs
  std::vector<std::pair<Rational, Rational>> cons;
  for (std::size_t j = 0; j < inst.k(); ++j)
    cons.push_back({dot(w, inst.rays[j]), psi[j] - dot(c0, inst.rays[j])});
  std::vector<Vec2> keep = anchors;
  keep.push_back(y);
  for (const auto& a : keep)
    cons.push_back({dot(w, a - f), Rational(1) - dot(c0, a - f)});
  std::optional<Rational> lo, hi;
  for (const auto& [a, b] : cons) {
    if (sgn(a) == 0) {
      if (sgn(b) <= 0)
        throw DomainError("complete_with_edge: no halfspace through " + to_string(*y4) +
                          " keeps the ray intersections");
      continue;
    }
    Rational t = b / a;
    if (sgn(a) > 0) {
      if (!hi || t < *hi) hi = t;
    } else if (!lo || t > *lo) {
      lo = t;
    }
  }
  if (lo && hi && *lo >= *hi)
    throw DomainError("complete_with_edge: no halfspace through " + to_string(*y4) +
                      " keeps the ray intersections and anchors");
  std::vector<Rational> tries;
  if (lo && hi) {
    for (int m = 1; m <= 6; ++m) {
      Rational den = Rational(1 << m);
      for (int k = 1; k < (1 << m); k += 2) tries.push_back(*lo + (*hi - *lo) * Rational(k) / den);
    }
  } else {
    Rational base = lo ? *lo : (hi ? *hi : Rational(0));
    int side = lo ? 1 : (hi ? -1 : 1);
    for (int m = -6; m <= 10; ++m) {
      Rational step = m < 0 ? Rational(1, 1 << -m) : Rational(1 << m);
      tries.push_back(base + side * step);
      if (!lo && !hi) tries.push_back(base - step);
    }
    if (!lo && !hi) tries.insert(tries.begin(), Rational(0));
  }
  for (const auto& s : tries) {
    std::vector<Vec2> rows = tilted.rows();
    rows.push_back(c0 + s * w);
    Body cand(f, rows);
    if (!is_lattice_free(cand).lattice_free) continue;
    if (cand.full_dimensional_recession()) continue;
    if (detail::row_gauges(rows, inst.rays) != psi) continue;
    return cand;
  }
  throw DomainError("complete_with_edge: no tried halfspace through " + to_string(*y4) +
                    " yields a lattice-free set");
}

// Lattice-free sets realizing the two halves of a witness, completing a
// tilted body with an extra edge where it picked up interior lattice points.
inline std::pair<Body, Body> explicit_bodies(const TiltWitness& w, const Body& original,
                                             const FacetPoints& Y,
                                             const CornerInstance& inst) {
  auto complete = [&](const Body& t) {
    auto lf = is_lattice_free(t);
    if (lf.lattice_free) return t;
    std::string why;
    for (std::size_t i = 0; i < original.n(); ++i) {
      if (Y[i].size() != 1) continue;
      auto e = original.facet_edge(i);
      if (!e || dot(original.rows()[i], *lf.witness - original.f()) != 1) continue;
      std::vector<Vec2> anchors;
      for (const auto& ys : Y)
        for (const auto& p : ys) anchors.push_back(p);
      // anchors keep the other facet points on the new body; retry with y alone
      for (const auto& keep : {anchors, std::vector<Vec2>{}}) {
        try {
          return complete_with_edge(t, inst, i, Y[i][0], primitive_direction(e->dir), keep);
        } catch (const DomainError& ex) {
          why = ex.what();
        }
      }
    }
    throw DomainError("explicit_bodies: cannot complete tilted body with interior point " +
                      to_string(*lf.witness) + (why.empty() ? "" : ": " + why));
  };
  return {complete(w.plus), complete(w.minus)};
}

// ---------------------------------------------------------------------------
// Ratio condition for quadrilaterals.

struct RatioCondition {
  bool holds = true;
  Rational alpha, beta, gamma, delta;  // |y^i - p^i| / |y^i - p^{i+1}|
  Rational product;
  Rational t;      // the common ratio when the pattern t, 1/t, t, 1/t occurs
  Rational det_t;  // delta / (1 + delta), the singular-block scalar
  std::vector<Vec2> p, y;
  std::vector<std::size_t> corner_rays;
};

inline RatioCondition ratio_condition(const Body& body, const CornerInstance& inst) {
  const Polygon& poly = body.polygon();
  if (!poly.bounded() || poly.vertices.size() != 4)
    throw DomainError("ratio_condition: M(B) is not a quadrilateral");
  RatioCondition rc;
  rc.p = poly.vertices;
  auto hits = ray_incidence(body, inst.rays, false);
  for (const auto& v : rc.p) {
    std::optional<std::size_t> ray;
    for (std::size_t j = 0; j < hits.size() && !ray; ++j)
      if (hits[j].point && *hits[j].point == v) ray = j;
    if (!ray) throw DomainError("ratio_condition: no corner ray at vertex " + to_string(v));
    rc.corner_rays.push_back(*ray);
  }
  std::vector<Rational> ratios;
  for (std::size_t i = 0; i < 4; ++i) {
    const Vec2& a = rc.p[i];
    const Vec2& b = rc.p[(i + 1) % 4];
    Edge e;
    e.origin = a;
    e.dir = b - a;
    auto pts = lattice_points_on_edge(e, 2);
    if (pts.size() != 1)
      throw DomainError("ratio_condition: facet " + to_string(a) + " -- " + to_string(b) +
                        " must carry exactly one relative-interior lattice point");
    rc.y.push_back(pts[0]);
    Rational lambda = dot(pts[0] - a, b - a) / dot(b - a, b - a);
    ratios.push_back(lambda / (Rational(1) - lambda));
  }
  rc.alpha = ratios[0];
  rc.beta = ratios[1];
  rc.gamma = ratios[2];
  rc.delta = ratios[3];
  rc.product = rc.alpha * rc.beta * rc.gamma * rc.delta;
  rc.holds = rc.product != 1;
  rc.t = rc.alpha;
  rc.det_t = rc.delta / (Rational(1) + rc.delta);
  return rc;
}

// Singleton covering matching ratio_condition's facet points, in row order.
inline FacetPoints ratio_covering(const Body& body, const RatioCondition& rc) {
  FacetPoints Y(body.n());
  for (const auto& y : rc.y)
    for (std::size_t i = 0; i < body.n(); ++i)
      if (dot(body.rows()[i], y - body.f()) == 1) Y[i] = {y};
  return Y;
}

// ---------------------------------------------------------------------------
// Polygons from corner rays and facet points.

namespace detail {

// y^i lies on the facet between corner rays i and i+1.
inline std::optional<Body> solve_corner_polygon(const Vec2& f, const std::vector<Vec2>& dirs,
                                                const std::vector<Vec2>& pts,
                                                const char* what) {
  const std::size_t n = dirs.size();
  if (pts.size() != n)
    throw UsageError(std::string(what) + ": expected " + std::to_string(n) + " points");
  int orient = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = dirs[i];
    const Vec2& b = dirs[(i + 1) % n];
    if (a.is_zero()) throw DomainError(std::string(what) + ": zero direction");
    int s = sgn(cross(a, b));
    if (s == 0)
      throw DomainError(std::string(what) + ": directions " + std::to_string(i + 1) + " and " +
                        std::to_string((i + 1) % n + 1) + " are parallel");
    if (orient == 0) orient = s;
    if (s != orient)
      throw DomainError(std::string(what) + ": directions are not in cyclic order");
    Vec2 yb = pts[i] - f;
    Rational det = cross(a, b);
    Rational ca = cross(yb, b) / det, cb = cross(a, yb) / det;
    if (sgn(ca) <= 0 || sgn(cb) <= 0)
      throw DomainError(std::string(what) + ": point " + std::to_string(i + 1) +
                        " does not lie between directions " + std::to_string(i + 1) +
                        " and " + std::to_string((i + 1) % n + 1));
  }
  QMat m(2 * n, 2 * n);
  QVec rhs(2 * n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t i1 = (i + 1) % n;
    Vec2 yb = pts[i] - f;
    m(2 * i, 2 * i) = yb.x;
    m(2 * i, 2 * i + 1) = yb.y;
    rhs[2 * i] = 1;
    const Vec2& r = dirs[i1];
    m(2 * i + 1, 2 * i) = r.x;
    m(2 * i + 1, 2 * i + 1) = r.y;
    m(2 * i + 1, 2 * i1) -= r.x;
    m(2 * i + 1, 2 * i1 + 1) -= r.y;
  }
  auto sol = solve_linear(m, rhs);
  if (!sol) return std::nullopt;
  auto rows = unflatten(*sol);
  for (const auto& r : rows)
    if (r.is_zero()) return std::nullopt;
  Body body(f, rows);
  const Polygon& p = body.polygon();
  if (!p.bounded() || p.vertices.size() != n) return std::nullopt;
  // every direction must be a corner ray on facets i-1 and i
  auto tight = tight_sets(rows, dirs);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> want{(i + n - 1) % n, i};
    std::sort(want.begin(), want.end());
    if (tight[i] != want || dot(rows[i], dirs[i]) <= 0) return std::nullopt;
  }
  for (std::size_t i = 0; i < n; ++i)
    if (!p.contains(pts[i])) return std::nullopt;
  return body;
}

}  // namespace detail

inline std::optional<Body> solve_triangle(const Vec2& f, const std::vector<Vec2>& dirs,
                                          const std::vector<Vec2>& pts) {
  if (dirs.size() != 3) throw UsageError("solve_triangle: expected 3 directions");
  return detail::solve_corner_polygon(f, dirs, pts, "solve_triangle");
}

inline std::optional<Body> solve_quadrilateral(const Vec2& f, const std::vector<Vec2>& dirs,
                                               const std::vector<Vec2>& pts) {
  if (dirs.size() != 4) throw UsageError("solve_quadrilateral: expected 4 directions");
  return detail::solve_corner_polygon(f, dirs, pts, "solve_quadrilateral");
}

}  // namespace cornercut

#endif  // CORNERCUT_TILTING_HPP_
