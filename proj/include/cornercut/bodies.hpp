#ifndef CORNERCUT_BODIES_HPP_
#define CORNERCUT_BODIES_HPP_

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "cornercut/hull2d.hpp"
#include "cornercut/instance.hpp"
#include "cornercut/lattice2d.hpp"

namespace cornercut {

// M(B) = {x : b^i.(x - f) <= 1 for all rows b^i}.
class Body {
 public:
  Body() = default;
  Body(Vec2 f, std::vector<Vec2> rows) : f_(std::move(f)), rows_(std::move(rows)) {
    poly_ = polygon_from_hrep(halfplanes(), f_);
  }

  const Vec2& f() const { return f_; }
  const std::vector<Vec2>& rows() const { return rows_; }
  std::size_t n() const { return rows_.size(); }
  const Polygon& polygon() const { return poly_; }
  bool bounded() const { return poly_.bounded(); }
  bool full_dimensional_recession() const {
    return poly_.full_dimensional_recession();
  }

  HalfPlane halfplane(std::size_t i) const {
    return {rows_[i], Rational(1) + dot(rows_[i], f_)};
  }
  std::vector<HalfPlane> halfplanes() const {
    std::vector<HalfPlane> h;
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (!rows_[i].is_zero()) h.push_back(halfplane(i));
    return h;
  }

  // Polygon edge supported by row i, if the row is not redundant.
  std::optional<Edge> facet_edge(std::size_t i) const {
    const Vec2& a = rows_[i];
    if (a.is_zero()) return std::nullopt;
    Rational b = Rational(1) + dot(a, f_);
    for (const auto& e : poly_.edges) {
      if (sgn(cross(e.h.a, a)) != 0 || sgn(dot(e.h.a, a)) <= 0) continue;
      if (e.h.b * a.x == b * e.h.a.x && e.h.b * a.y == b * e.h.a.y) return e;
    }
    return std::nullopt;
  }

  // Rows in lexicographic order; two bodies are equal iff these agree.
  std::vector<Vec2> normalized_rows() const {
    std::vector<Vec2> r = rows_;
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    return r;
  }
  friend bool operator==(const Body& a, const Body& b) {
    return a.f_ == b.f_ && a.normalized_rows() == b.normalized_rows();
  }

 private:
  Vec2 f_;
  std::vector<Vec2> rows_;
  Polygon poly_;
};

// Row max_i b^i.r without the recession check.
inline Rational row_gauge(const Body& body, const Vec2& r) {
  if (body.rows().empty()) throw DomainError("gauge: body has no rows");
  Rational m = dot(body.rows()[0], r);
  for (const auto& b : body.rows()) {
    Rational v = dot(b, r);
    if (v > m) m = v;
  }
  return m;
}

inline Rational gauge(const Body& body, const Vec2& r) {
  if (body.full_dimensional_recession())
    throw DomainError("gauge: recession cone of M(B) is full-dimensional");
  return row_gauge(body, r);
}

struct RayHit {
  Rational psi;
  std::optional<Vec2> point;       // f + r/psi when psi > 0
  std::vector<std::size_t> tight;  // argmax rows (0-based)
  bool corner = false;
};

inline std::vector<RayHit> ray_incidence(const Body& body,
                                         const std::vector<Vec2>& rays,
                                         bool check = true) {
  if (check && body.full_dimensional_recession())
    throw DomainError("ray_incidence: recession cone of M(B) is full-dimensional");
  std::vector<RayHit> out;
  for (const auto& r : rays) {
    RayHit h;
    h.psi = row_gauge(body, r);
    for (std::size_t i = 0; i < body.n(); ++i)
      if (dot(body.rows()[i], r) == h.psi) h.tight.push_back(i);
    if (sgn(h.psi) > 0) h.point = body.f() + r / h.psi;
    h.corner = h.tight.size() >= 2;
    out.push_back(std::move(h));
  }
  return out;
}

inline std::vector<RayHit> ray_incidence(const Body& body,
                                         const CornerInstance& inst) {
  return ray_incidence(body, inst.rays);
}

// ---------------------------------------------------------------------------
// Lattice-freeness.

struct LatticeFreeness {
  bool lattice_free = true;
  std::optional<Vec2> witness;
};

// Like interior_lattice_point, but also accepts regions with a
// full-dimensional recession cone (which always contain lattice points).
inline std::optional<Vec2> find_interior_lattice_point(const Polygon& p) {
  if (!p.full_dimensional_recession()) return interior_lattice_point(p);
  Vec2 base, dir;
  if (!p.vertices.empty()) base = p.vertices[0];
  else if (!p.edges.empty()) base = p.edges[0].origin;
  if (p.recession == RecessionKind::PointedCone) {
    dir = p.rays[0] + p.rays[1];
  } else if (p.recession == RecessionKind::HalfPlane) {
    dir = -p.edges[0].h.a;
  } else {
    dir = Vec2(1, 0);
  }
  // walk into the cone until a rounded point falls strictly inside
  for (Rational t = 1;; t *= 2) {
    Vec2 c = base + t * dir;
    for (int dx = 0; dx <= 1; ++dx)
      for (int dy = 0; dy <= 1; ++dy) {
        Vec2 x{Rational(floor(c.x) + dx), Rational(floor(c.y) + dy)};
        if (p.contains_strict(x)) return x;
      }
  }
}

inline LatticeFreeness is_lattice_free(const Polygon& p) {
  auto w = find_interior_lattice_point(p);
  return {!w.has_value(), w};
}

inline LatticeFreeness is_lattice_free(const Body& b) {
  return is_lattice_free(b.polygon());
}

inline LatticeFreeness is_lattice_free(const std::vector<Vec2>& points,
                                       const std::vector<Vec2>& rays) {
  return is_lattice_free(polygon_from_vrep(points, rays));
}

// ---------------------------------------------------------------------------
// Cuts and bodies.

// Generators of M_gamma = conv{f + r^j/gamma_j : gamma_j > 0} + cone{r^j : gamma_j = 0}.
struct GammaBody {
  std::vector<Vec2> points;
  std::vector<Vec2> rays;
  Polygon polygon() const {
    if (points.empty()) throw DomainError("M_gamma has no generating point");
    return polygon_from_vrep(points, rays);
  }
};

inline GammaBody body_from_cut(const QVec& gamma, const CornerInstance& inst,
                               bool check = true) {
  if (gamma.size() != inst.k())
    throw UsageError("gamma has " + std::to_string(gamma.size()) +
                     " entries, expected " + std::to_string(inst.k()));
  if (check && !inst.spans_plane())
    throw PreconditionError("body_from_cut: the rays must positively span the plane");
  GammaBody g;
  for (std::size_t j = 0; j < gamma.size(); ++j) {
    if (sgn(gamma[j]) < 0) throw DomainError("gamma must be nonnegative");
    if (sgn(gamma[j]) > 0)
      g.points.push_back(inst.f + inst.rays[j] / gamma[j]);
    else
      g.rays.push_back(inst.rays[j]);
  }
  // with spanning rays and gamma = 0 everywhere the set is the plane
  if (g.points.empty()) g.points.push_back(inst.f);
  return g;
}

inline QVec cut_from_body(const Body& body, const CornerInstance& inst) {
  auto lf = is_lattice_free(body);
  if (!lf.lattice_free)
    throw DomainError("cut_from_body: M(B) contains the interior lattice point " +
                      to_string(*lf.witness));
  QVec g;
  for (const auto& r : inst.rays) {
    Rational psi = gauge(body, r);
    g.push_back(sgn(psi) > 0 ? psi : Rational(0));
  }
  return g;
}

// Rows b with M = {x : b.(x - f) <= 1} for a polygon with f in its interior.
inline std::vector<Vec2> rows_from_polygon(const Polygon& p, const Vec2& f) {
  std::vector<Vec2> rows;
  for (const auto& e : p.edges) {
    Rational slack = e.h.b - dot(e.h.a, f);
    if (sgn(slack) <= 0) throw DomainError("f is not interior to the region");
    rows.push_back(e.h.a / slack);
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Classification.

enum class BodyTag {
  Split,
  TriangleType1,
  TriangleType2,
  TriangleType3,
  Quadrilateral,
  NotMaximal,
  NotLatticeFree
};

inline const char* to_string(BodyTag t) {
  switch (t) {
    case BodyTag::Split: return "Split";
    case BodyTag::TriangleType1: return "TriangleType1";
    case BodyTag::TriangleType2: return "TriangleType2";
    case BodyTag::TriangleType3: return "TriangleType3";
    case BodyTag::Quadrilateral: return "Quadrilateral";
    case BodyTag::NotMaximal: return "NotMaximal";
    case BodyTag::NotLatticeFree: return "NotLatticeFree";
  }
  return "?";
}

inline bool is_maximal_tag(BodyTag t) {
  return t != BodyTag::NotMaximal && t != BodyTag::NotLatticeFree;
}

struct BodyClass {
  BodyTag tag = BodyTag::NotMaximal;
  // Lattice points in the relative interior of the facet of each row (at most
  // a few per facet; empty for redundant rows).
  std::vector<std::vector<Vec2>> facet_points;
  std::optional<Vec2> witness;  // NotLatticeFree
  Vec2 split_normal;            // Split: c <= n.x <= c + 1
  Integer split_offset = 0;
  std::string anomaly;
};

namespace detail {

inline bool unit_parallelogram(std::vector<Vec2> pts) {
  if (pts.size() != 4) return false;
  auto hull = convex_hull_points(pts);
  if (hull.size() != 4) return false;
  if (hull[0] + hull[2] != hull[1] + hull[3]) return false;
  Rational area = cross(hull[1] - hull[0], hull[3] - hull[0]);
  return abs(area) == 1;
}

}  // namespace detail

inline BodyClass classify(const Body& body) {
  BodyClass c;
  const Polygon& p = body.polygon();
  auto lf = is_lattice_free(p);
  if (!lf.lattice_free) {
    c.tag = BodyTag::NotLatticeFree;
    c.witness = lf.witness;
    return c;
  }
  c.facet_points.resize(body.n());
  bool every_facet = true;
  for (std::size_t i = 0; i < body.n(); ++i) {
    auto e = body.facet_edge(i);
    if (e) c.facet_points[i] = lattice_points_on_edge(*e, 8);
  }
  for (const auto& e : p.edges)
    if (lattice_points_on_edge(e, 1).empty()) every_facet = false;
  if (!every_facet || p.edges.empty()) {
    c.tag = BodyTag::NotMaximal;
    return c;
  }
  if (p.recession == RecessionKind::Line) {
    Vec2 n = primitive_direction(p.edges[0].h.a);
    Rational lo = dot(n, p.edges[0].origin), hi = dot(n, p.edges[1].origin);
    if (lo > hi) std::swap(lo, hi);
    // both lines carry lattice points and the strip is lattice-free, so the
    // offsets are consecutive integers
    c.tag = BodyTag::Split;
    c.split_normal = n;
    c.split_offset = floor(lo);
    if (hi - lo != 1) c.anomaly = "split lines are not consecutive lattice lines";
    return c;
  }
  if (!p.bounded()) {
    c.tag = BodyTag::NotMaximal;
    c.anomaly = "lattice-free unbounded body with lattice points on every facet "
                "but no line in its recession cone";
    return c;
  }
  const auto& v = p.vertices;
  if (v.size() == 3) {
    bool integral = std::all_of(v.begin(), v.end(),
                                [](const Vec2& x) { return x.is_integral(); });
    bool long_edge = false;
    for (std::size_t i = 0; i < 3; ++i)
      if (lattice_points_on_segment(v[i], v[(i + 1) % 3]).size() >= 2)
        long_edge = true;
    c.tag = integral ? BodyTag::TriangleType1
                     : (long_edge ? BodyTag::TriangleType2 : BodyTag::TriangleType3);
    return c;
  }
  if (v.size() == 4) {
    std::vector<Vec2> boundary;
    for (std::size_t i = 0; i < 4; ++i)
      for (const auto& x : lattice_points_on_segment(v[i], v[(i + 1) % 4]))
        if (std::find(boundary.begin(), boundary.end(), x) == boundary.end())
          boundary.push_back(x);
    if (detail::unit_parallelogram(boundary)) {
      c.tag = BodyTag::Quadrilateral;
      return c;
    }
    c.tag = BodyTag::NotMaximal;
    c.anomaly = "quadrilateral whose boundary lattice points do not form a "
                "unit parallelogram";
    return c;
  }
  c.tag = BodyTag::NotMaximal;
  c.anomaly = "lattice-free polygon with " + std::to_string(v.size()) +
              " facets, each carrying a lattice point";
  return c;
}

// ---------------------------------------------------------------------------
// Maximal lattice-free supersets.

namespace detail {

// Smallest lattice point on the line n.x = h strictly inside all halfplanes.
inline std::optional<Vec2> lattice_point_on_level(const Vec2& n, const Integer& h,
                                                  const std::vector<HalfPlane>& hs) {
  LatticeLine ll = lattice_line((Rational(h) / dot(n, n)) * n, perp(n));
  std::vector<std::pair<Rational, Rational>> cs;
  for (const auto& q : hs)
    cs.push_back({dot(q.a, ll.dir), q.b - dot(q.a, ll.base)});
  OpenRange r;
  if (!open_interval(cs, r)) return std::nullopt;
  auto t = first_integer(r);
  if (!t) return std::nullopt;
  return ll.base + Rational(*t) * ll.dir;
}

// Vertices of the closure of {x : a.x < b for all halfplanes}, assumed bounded.
inline std::vector<Vec2> closure_vertices(const std::vector<HalfPlane>& hs) {
  std::vector<Vec2> out;
  for (std::size_t i = 0; i < hs.size(); ++i)
    for (std::size_t j = i + 1; j < hs.size(); ++j) {
      const Vec2 &a = hs[i].a, &b = hs[j].a;
      Rational det = cross(a, b);
      if (sgn(det) == 0) continue;
      Vec2 x{(hs[i].b * b.y - a.y * hs[j].b) / det, (a.x * hs[j].b - hs[i].b * b.x) / det};
      bool ok = true;
      for (const auto& q : hs)
        if (dot(q.a, x) > q.b) ok = false;
      if (ok) out.push_back(x);
    }
  return out;
}

// Lowest level h in [lo, hi] whose line n.x = h has a lattice point strictly
// inside the halfplanes. The slab must cut out a bounded region.
inline std::optional<Integer> lowest_level(const Vec2& n, const Integer& lo, const Integer& hi,
                                           const std::vector<HalfPlane>& others) {
  if (lo > hi) return std::nullopt;
  std::vector<HalfPlane> hs = others;
  hs.push_back({n, Rational(hi) + Rational(1, 2)});
  hs.push_back({-n, Rational(1, 2) - Rational(lo)});
  auto vs = closure_vertices(hs);
  if (vs.empty()) return std::nullopt;
  Vec2 w = narrow_direction(vs, Rational(3));
  Rational wd = width_along(w, vs);
  if (wd > 3 && lo < hi) {
    // wide enough to hold a lattice point; bisect the levels
    Integer mid = floor(Rational(lo + hi) / 2);
    if (auto r = lowest_level(n, lo, mid, others)) return r;
    return lowest_level(n, mid + 1, hi, others);
  }
  Rational mn = dot(w, vs[0]);
  for (const auto& v : vs) mn = std::min(mn, Rational(dot(w, v)));
  std::optional<Integer> best;
  for (Integer k = ceil(mn); Rational(k) <= mn + wd; ++k) {
    LatticeLine ll = lattice_line((Rational(k) / dot(w, w)) * w, perp(w));
    if (!ll.has_points) continue;
    std::vector<std::pair<Rational, Rational>> cs;
    for (const auto& q : hs) cs.push_back({dot(q.a, ll.dir), q.b - dot(q.a, ll.base)});
    OpenRange r;
    if (!open_interval(cs, r)) continue;
    if (!r.lo || !r.hi) throw DomainError("push_level: unbounded slab");
    Integer t = sgn(dot(n, ll.dir)) >= 0 ? Integer(floor(*r.lo) + 1) : Integer(ceil(*r.hi) - 1);
    if (Rational(t) <= *r.lo || Rational(t) >= *r.hi) continue;
    Integer h = dot(n, ll.base + Rational(t) * ll.dir).get_num();
    if (!best || h < *best) best = h;
  }
  return best;
}

// Push the facet n.x <= c outward to the first lattice level whose line meets
// the interior of the other halfplanes in a lattice point. Empty when no
// such level exists (the facet can be dropped).
inline std::optional<Integer> push_level(const Vec2& n, const Rational& c,
                                         const std::vector<HalfPlane>& others,
                                         const Vec2& interior) {
  Polygon rest = polygon_from_hrep(others, interior);
  Rational top = c;
  for (const auto& v : rest.vertices) top = std::max(top, Rational(dot(n, v)));
  for (const auto& e : rest.edges) top = std::max(top, Rational(dot(n, e.origin)));
  bool bounded_above = true;
  std::optional<Vec2> up;
  // levels with an unbounded cross-section hold lattice points right away
  bool flat = false, below = false;
  switch (rest.recession) {
    case RecessionKind::Plane:
      bounded_above = false;
      flat = below = true;
      break;
    case RecessionKind::HalfPlane: {
      const Vec2& a = rest.edges[0].h.a;
      bounded_above = sgn(cross(a, n)) == 0 && sgn(dot(a, n)) > 0;
      flat = below = true;
      break;
    }
    default:
      for (const auto& d : rest.rays) {
        int s = sgn(dot(n, d));
        if (s > 0) up = d, bounded_above = false;
        if (s == 0) flat = true;
        if (s < 0) below = true;
      }
  }
  std::optional<Integer> limit;
  if (bounded_above) {
    limit = floor(top);
  } else if (up && (rest.recession == RecessionKind::Ray ||
                    rest.recession == RecessionKind::Line)) {
    // cross-sections beyond the vertices are translates with period n.P
    Vec2 pd = primitive_direction(*up);
    limit = ceil(top) + Integer(dot(n, pd).get_num());
  }
  Integer h = ceil(c);
  if (!below) {
    std::optional<Rational> bottom;
    for (const auto& v : rest.vertices)
      if (!bottom || dot(n, v) < *bottom) bottom = dot(n, v);
    for (const auto& e : rest.edges)
      if (!bottom || dot(n, e.origin) < *bottom) bottom = dot(n, e.origin);
    if (bottom && ceil(*bottom) > h) h = ceil(*bottom);
  }
  for (int i = 0; i < 32 || flat; ++i, ++h) {
    if (limit && h > *limit) return std::nullopt;
    if (lattice_point_on_level(n, h, others)) return h;
  }
  if (limit) return lowest_level(n, h, *limit, others);
  for (Integer span = 64; span < Integer(1) << 40; span *= 2) {
    if (auto r = lowest_level(n, h, h + span, others)) return r;
    h += span + 1;
  }
  throw DomainError("maximal_superset: no lattice level found while pushing a facet");
}

inline Polygon fatten_lowdim(const Polygon& p, const Vec2& f) {
  std::vector<Vec2> pts = p.lowdim_points;
  if (!p.lowdim_rays.empty())
    throw DomainError("maximal_superset: unbounded lower-dimensional input");
  auto hull = convex_hull_points(pts);
  std::vector<Vec2> base;
  Vec2 dir;
  if (hull.size() <= 1) {
    base = {};
    dir = Vec2(1, 0);
  } else {
    base = hull;
    dir = hull[1] - hull[0];
  }
  Vec2 nrm = perp(dir);
  for (Rational eps(1, 2); eps > Rational(1, 1000000); eps /= 2) {
    std::vector<Vec2> cand = base;
    Vec2 m = f;
    cand.push_back(m + eps * nrm);
    cand.push_back(m - eps * nrm);
    if (hull.size() <= 1) {
      cand.push_back(m + eps * dir);
      cand.push_back(m - eps * dir);
    }
    Polygon q = polygon_from_vrep(cand, {});
    if (q.dimension == 2 && q.contains_strict(f) && is_lattice_free(q).lattice_free)
      return q;
  }
  throw DomainError("maximal_superset: could not thicken the input around f");
}

}  // namespace detail

// A maximal lattice-free body containing the given lattice-free region, by
// pushing facets outward in their listed order.
inline Body maximal_superset(const Polygon& input, const Vec2& f) {
  Polygon p = input.dimension < 2 ? detail::fatten_lowdim(input, f) : input;
  if (!p.contains_strict(f))
    throw DomainError("maximal_superset: f must be interior to the input");
  if (!is_lattice_free(p).lattice_free)
    throw DomainError("maximal_superset: input is not lattice-free");
  // integer normals n with n.x <= c
  std::vector<Vec2> normals;
  std::vector<Rational> offsets;
  for (const auto& e : p.edges) {
    Vec2 n = primitive_direction(e.h.a);
    Rational scale = dot(n, e.h.a) / dot(e.h.a, e.h.a);  // n = scale * a
    normals.push_back(n);
    offsets.push_back(e.h.b * scale);
  }
  std::vector<bool> alive(normals.size(), true);
  for (std::size_t i = 0; i < normals.size(); ++i) {
    std::vector<HalfPlane> others;
    for (std::size_t j = 0; j < normals.size(); ++j)
      if (j != i && alive[j]) others.push_back({normals[j], offsets[j]});
    auto h = detail::push_level(normals[i], offsets[i], others, f);
    if (h)
      offsets[i] = Rational(*h);
    else
      alive[i] = false;
  }
  std::vector<Vec2> rows;
  for (std::size_t i = 0; i < normals.size(); ++i)
    if (alive[i]) rows.push_back(normals[i] / (offsets[i] - dot(normals[i], f)));
  return Body(f, rows);
}

inline Body maximal_superset(const Body& b) {
  return maximal_superset(b.polygon(), b.f());
}

inline Body maximal_superset(const std::vector<Vec2>& points,
                             const std::vector<Vec2>& rays, const Vec2& f) {
  return maximal_superset(polygon_from_vrep(points, rays), f);
}

}  // namespace cornercut

#endif  // CORNERCUT_BODIES_HPP_
