#ifndef CORNERCUT_LATTICE2D_HPP_
#define CORNERCUT_LATTICE2D_HPP_

#include <algorithm>
#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "cornercut/hull2d.hpp"
#include "cornercut/instance.hpp"
#include "cornercut/vec2.hpp"

namespace cornercut {

// Integer 2x2 matrix with determinant +-1.
struct Unimodular {
  Integer a, b, c, d;  // [[a, b], [c, d]]

  Vec2 apply(const Vec2& v) const {
    return {Rational(a) * v.x + Rational(b) * v.y,
            Rational(c) * v.x + Rational(d) * v.y};
  }
  Unimodular inverse() const {
    Integer det = a * d - b * c;  // +-1
    return {d * det, -b * det, -c * det, a * det};
  }
  // Row vector times the inverse: transforms a normal a.x into a'.u with
  // u = apply(x).
  Vec2 pull_normal(const Vec2& n) const {
    Unimodular inv = inverse();
    return {n.x * Rational(inv.a) + n.y * Rational(inv.c),
            n.x * Rational(inv.b) + n.y * Rational(inv.d)};
  }
};

// Unimodular map sending the primitive vector p to (1, 0).
inline Unimodular unimodular_to_e1(const Vec2& p) {
  if (!p.is_integral()) throw UsageError("unimodular_to_e1: non-integral");
  Integer px = p.x.get_num(), py = p.y.get_num();
  Integer s, t;
  Integer g = ext_gcd(px, py, s, t);
  if (g != 1) throw UsageError("unimodular_to_e1: vector is not primitive");
  return {s, t, -py, px};
}

// Lattice structure of the line through `point` with direction `dir`.
struct LatticeLine {
  bool has_points = false;
  Vec2 base;       // a lattice point on the line
  Vec2 dir;        // primitive direction
  Rational param;  // point = base + param * dir
};

inline LatticeLine lattice_line(const Vec2& point, const Vec2& dir) {
  LatticeLine ll;
  ll.dir = primitive_direction(dir);
  Vec2 n{-ll.dir.y, ll.dir.x};
  Rational h = dot(n, point);
  if (!is_integer(h)) return ll;
  Integer nx = n.x.get_num(), ny = n.y.get_num(), s, t;
  ext_gcd(nx, ny, s, t);
  Integer hv = h.get_num();
  ll.base = {Rational(s * hv), Rational(t * hv)};
  ll.param = dot(point - ll.base, ll.dir) / dot(ll.dir, ll.dir);
  ll.has_points = true;
  return ll;
}

// Lattice points base + t*dir with lo < t < hi; infinite ends allowed.
// At most `limit` points are listed, in increasing t.
struct OpenRange {
  std::optional<Rational> lo, hi;
};

inline std::vector<Vec2> lattice_points_in_range(const LatticeLine& ll,
                                                 const OpenRange& r,
                                                 std::size_t limit) {
  std::vector<Vec2> out;
  if (!ll.has_points || limit == 0) return out;
  Integer start;
  if (r.lo)
    start = floor(*r.lo) + 1;
  else if (r.hi)
    start = ceil(*r.hi) - Integer(static_cast<long>(limit));
  else
    start = 0;
  for (Integer t = start; out.size() < limit; ++t) {
    if (r.hi && Rational(t) >= *r.hi) break;
    out.push_back(ll.base + Rational(t) * ll.dir);
  }
  return out;
}

// Lattice points in the relative interior of a polygon edge.
inline std::vector<Vec2> lattice_points_on_edge(const Edge& e,
                                                std::size_t limit) {
  LatticeLine ll = lattice_line(e.origin, e.dir);
  if (!ll.has_points) return {};
  Rational scale = dot(e.dir, ll.dir) / dot(ll.dir, ll.dir);  // e.dir = scale*dir
  OpenRange r;
  if (e.kind == Edge::Line) return lattice_points_in_range(ll, r, limit);
  Rational t0 = ll.param;
  Rational t1 = ll.param + scale;
  if (e.kind == Edge::Segment) {
    r.lo = std::min(t0, t1);
    r.hi = std::max(t0, t1);
  } else if (sgn(scale) > 0) {
    r.lo = t0;
  } else {
    r.hi = t0;
  }
  return lattice_points_in_range(ll, r, limit);
}

// Lattice points on a closed segment [a, b].
inline std::vector<Vec2> lattice_points_on_segment(const Vec2& a,
                                                   const Vec2& b) {
  if (a == b) return a.is_integral() ? std::vector<Vec2>{a} : std::vector<Vec2>{};
  LatticeLine ll = lattice_line(a, b - a);
  if (!ll.has_points) return {};
  Rational scale = dot(b - a, ll.dir) / dot(ll.dir, ll.dir);
  Rational t0 = ll.param, t1 = ll.param + scale;
  Rational lo = std::min(t0, t1), hi = std::max(t0, t1);
  std::vector<Vec2> out;
  for (Integer t = ceil(lo); Rational(t) <= hi; ++t)
    out.push_back(ll.base + Rational(t) * ll.dir);
  return out;
}

// Integer vector with coprime coordinates parallel to the facet [a, b],
// oriented lexicographically positive.
inline Vec2 primitive_facet_vector(const Vec2& a, const Vec2& b) {
  Vec2 d = b - a;
  if (d.is_zero()) throw DomainError("primitive_facet_vector: zero direction");
  Vec2 p = primitive_direction(d);
  if (sgn(p.x) < 0 || (sgn(p.x) == 0 && sgn(p.y) < 0)) p = -p;
  return p;
}

// ---------------------------------------------------------------------------
// Integer hulls of translated cones.

struct ConeHull {
  Vec2 apex;
  Vec2 r1, r2;
  std::vector<Vec2> vertices;    // ordered from the r1 side to the r2 side
  std::vector<Vec2> recession;   // {r1, r2}
};

namespace detail {

struct Frac {
  Integer p, q;  // q > 0
};

// Minimum of ceil(beta*q - delta)/q over 1 <= q <= qmax, with beta = c/qmax.
// Monotone queries over the Stern-Brocot tree; each query counts lattice
// points below a line through floor sums.
class NextEdgeSearch {
 public:
  NextEdgeSearch(const Integer& c, const Integer& d, const Rational& delta)
      : c_(c), d_(d), beta_(c, d), delta_(delta) {
    beta_.canonicalize();
  }

  // Is there q in [1, d] with ceil(beta q - delta) <= floor(sigma q)?
  bool query(const Frac& s) const {
    Rational sigma(s.p, s.q);
    sigma.canonicalize();
    if (sigma >= beta_) return true;
    Rational bound = delta_ / (beta_ - sigma);
    Integer n = floor(bound);
    if (n > d_) n = d_;
    if (n < 1) return false;
    // sum floor(sigma q) + sum floor(delta - beta q) + n, q = 1..n
    Integer s1 = floor_sum(n + 1, s.q, s.p, 0);
    Integer dd = lcm(delta_.get_den(), d_);
    Integer e = delta_.get_num() * (dd / delta_.get_den());
    Integer fcoef = c_ * (dd / d_);
    Integer s2 = floor_sum(n + 1, dd, -fcoef, e) - floor_div(e, dd);
    return s1 + s2 + n > 0;
  }

  Frac minimize() const {
    Integer r0 = ceil(beta_ - delta_);
    Frac lo{r0 - 1, 1}, hi{r0, 1};
    while (true) {
      Frac med{lo.p + hi.p, lo.q + hi.q};
      if (med.q > d_) break;
      if (query(med)) {
        // hi moves towards lo: hi_j = j*lo + hi
        Integer j = largest_step(lo, hi, true);
        hi = {j * lo.p + hi.p, j * lo.q + hi.q};
      } else {
        Integer j = largest_step(hi, lo, false);
        lo = {lo.p + j * hi.p, lo.q + j * hi.q};
      }
    }
    return hi;
  }

 private:
  // Largest j >= 1 with denominator <= d and query(j*a + b) == want.
  Integer largest_step(const Frac& a, const Frac& b, bool want) const {
    auto cand = [&](const Integer& j) { return Frac{j * a.p + b.p, j * a.q + b.q}; };
    auto ok = [&](const Integer& j) {
      Frac f = cand(j);
      return f.q <= d_ && query(f) == want;
    };
    Integer good = 1, bad = 2;
    while (ok(bad)) {
      good = bad;
      bad *= 2;
    }
    while (bad - good > 1) {
      Integer mid = (good + bad) / 2;
      if (ok(mid))
        good = mid;
      else
        bad = mid;
    }
    return good;
  }

  Integer c_, d_;
  Rational beta_, delta_;
};

}  // namespace detail

// Vertices of conv({f + s1 r1 + s2 r2 : s >= 0} ∩ Z^2).
inline ConeHull cone_integer_hull(const Vec2& f, const Vec2& r1,
                                  const Vec2& r2) {
  if (sgn(cross(r1, r2)) == 0)
    throw DomainError("cone_integer_hull: generators are linearly dependent");
  ConeHull hull{f, r1, r2, {}, {r1, r2}};
  Vec2 p1 = primitive_direction(r1), p2 = primitive_direction(r2);
  Unimodular u = unimodular_to_e1(p1);
  Vec2 q2 = u.apply(p2);
  if (sgn(q2.y) < 0) {
    u = {u.a, u.b, -u.c, -u.d};
    q2 = u.apply(p2);
  }
  Vec2 F = u.apply(f);
  Integer c = q2.x.get_num(), d = q2.y.get_num();
  Rational beta(c, d);
  beta.canonicalize();
  Rational alpha = F.x - beta * F.y;
  Integer h = ceil(F.y);
  Integer x = ceil(alpha + beta * Rational(h));
  Rational delta = Rational(x) - alpha - beta * Rational(h);
  std::vector<Vec2> verts{{Rational(x), Rational(h)}};
  while (sgn(delta) > 0) {
    detail::NextEdgeSearch search(c, d, delta);
    detail::Frac s = search.minimize();
    Rational sigma(s.p, s.q);
    sigma.canonicalize();
    if (sigma >= beta) break;
    Rational rho = beta * Rational(s.q) - Rational(s.p);
    Integer steps = floor(delta / rho);
    x += steps * s.p;
    h += steps * s.q;
    delta -= Rational(steps) * rho;
    verts.push_back({Rational(x), Rational(h)});
  }
  Unimodular inv = u.inverse();
  for (const auto& v : verts) hull.vertices.push_back(inv.apply(v));
  return hull;
}

struct BasisCoeffs {
  std::pair<std::size_t, std::size_t> I;
  Vec2 x;
  Rational s1, s2;  // x - f = s1 r^{I.first} + s2 r^{I.second}
};

// Coefficients of x - f in the basis {r^i, r^j}; empty when one is negative.
inline std::optional<BasisCoeffs> basis_coefficients(
    const Vec2& f, std::pair<std::size_t, std::size_t> I,
    const std::vector<Vec2>& rays, const Vec2& x) {
  const Vec2& ri = rays.at(I.first);
  const Vec2& rj = rays.at(I.second);
  Rational den = cross(ri, rj);
  if (sgn(den) == 0)
    throw DomainError("basis_coefficients: dependent basis");
  Vec2 y = x - f;
  Rational s1 = cross(y, rj) / den;
  Rational s2 = cross(ri, y) / den;
  if (sgn(s1) < 0 || sgn(s2) < 0) return std::nullopt;
  return BasisCoeffs{I, x, s1, s2};
}

inline std::vector<Vec2> ext_XI(const Vec2& f,
                                std::pair<std::size_t, std::size_t> I,
                                const std::vector<Vec2>& rays) {
  return cone_integer_hull(f, rays.at(I.first), rays.at(I.second)).vertices;
}

// ---------------------------------------------------------------------------
// Interior lattice points.

namespace detail {

// Open interval {t : a * t < b for all (a, b)} as optional bounds; returns
// false when some constraint with a == 0 fails.
inline bool open_interval(const std::vector<std::pair<Rational, Rational>>& cs,
                          OpenRange& r) {
  for (const auto& [a, b] : cs) {
    int s = sgn(a);
    if (s == 0) {
      if (sgn(b) <= 0) return false;
      continue;
    }
    Rational t = b / a;
    if (s > 0) {
      if (!r.hi || t < *r.hi) r.hi = t;
    } else {
      if (!r.lo || t > *r.lo) r.lo = t;
    }
  }
  return !(r.lo && r.hi && *r.lo >= *r.hi);
}

inline std::optional<Integer> first_integer(const OpenRange& r) {
  if (!r.lo && !r.hi) return Integer(0);
  if (!r.lo) return ceil(*r.hi) - 1;
  Integer t = floor(*r.lo) + 1;
  if (r.hi && Rational(t) >= *r.hi) return std::nullopt;
  return t;
}

inline Rational width_along(const Vec2& w, const std::vector<Vec2>& vs) {
  Rational lo = dot(w, vs[0]), hi = lo;
  for (const auto& v : vs) {
    Rational t = dot(w, v);
    lo = std::min(lo, t);
    hi = std::max(hi, t);
  }
  return hi - lo;
}

// Integer direction of smallest width (Gauss reduction for the width norm),
// stopping early once the width drops to `enough`.
inline Vec2 narrow_direction(const std::vector<Vec2>& vs, const Rational& enough) {
  Vec2 b1(1, 0), b2(0, 1);
  Rational n1 = width_along(b1, vs), n2 = width_along(b2, vs);
  while (true) {
    if (n1 > n2) std::swap(b1, b2), std::swap(n1, n2);
    if (n1 <= enough) return b1;
    auto g = [&](const Integer& mu) { return width_along(b2 - Rational(mu) * b1, vs); };
    Integer m = ceil(2 * n2 / n1) + 1, lo = -m, hi = m;
    while (lo < hi) {
      Integer mid = floor(Rational(lo + hi) / 2);
      if (g(mid + 1) >= g(mid)) hi = mid; else lo = mid + 1;
    }
    Vec2 r = b2 - Rational(lo) * b1;
    Rational nr = width_along(r, vs);
    if (nr >= n1) return b1;
    b2 = b1, n2 = n1;
    b1 = r, n1 = nr;
  }
}

}  // namespace detail

// An integer point strictly inside the polygon, lexicographically smallest
// among the scanned candidates; empty when the interior is lattice-free.
inline std::optional<Vec2> interior_lattice_point(const Polygon& poly) {
  if (poly.dimension < 2) return std::nullopt;
  if (poly.full_dimensional_recession())
    throw DomainError(
        "interior_lattice_point: recession cone is full-dimensional");
  if (poly.bounded()) {
    Rational xmin = poly.vertices[0].x, xmax = xmin;
    for (const auto& v : poly.vertices) {
      if (v.x < xmin) xmin = v.x;
      if (v.x > xmax) xmax = v.x;
    }
    if (xmax - xmin <= 64) {
      for (Integer i = floor(xmin) + 1; Rational(i) < xmax; ++i) {
        std::vector<std::pair<Rational, Rational>> cs;
        for (const auto& e : poly.edges)
          cs.push_back({e.h.a.y, e.h.b - e.h.a.x * Rational(i)});
        OpenRange r;
        if (!detail::open_interval(cs, r)) continue;
        auto y = detail::first_integer(r);
        if (y) return Vec2{Rational(i), Rational(*y)};
      }
      return std::nullopt;
    }
    // long and thin: scan lattice lines across the narrowest direction,
    // middle first
    Vec2 w = detail::narrow_direction(poly.vertices, Rational(3));
    Unimodular u = unimodular_to_e1(primitive_direction(perp(w)));
    Unimodular inv = u.inverse();
    Rational lo = u.apply(poly.vertices[0]).y, hi = lo;
    for (const auto& v : poly.vertices) {
      Rational c = u.apply(v).y;
      lo = std::min(lo, c);
      hi = std::max(hi, c);
    }
    Integer first = floor(lo) + 1, last = ceil(hi) - 1;
    if (first > last) return std::nullopt;
    Integer mid = floor(Rational(first + last) / 2);
    for (Integer step = 0; mid - step >= first || mid + step <= last; ++step) {
      for (const Integer& c : {Integer(mid - step), Integer(mid + step)}) {
        if (c < first || c > last) continue;
        std::vector<std::pair<Rational, Rational>> cs;
        for (const auto& e : poly.edges) {
          Vec2 a = u.pull_normal(e.h.a);
          cs.push_back({a.x, e.h.b - a.y * Rational(c)});
        }
        OpenRange r;
        if (!detail::open_interval(cs, r)) continue;
        if (auto t = detail::first_integer(r)) return inv.apply(Vec2{Rational(*t), Rational(c)});
      }
    }
    return std::nullopt;
  }
  // One-dimensional recession: map its primitive direction to e1.
  Vec2 d = primitive_direction(poly.rays[0]);
  Unimodular u = unimodular_to_e1(d);
  Unimodular inv = u.inverse();
  std::optional<Rational> lo, hi;
  for (const auto& e : poly.edges) {
    if (e.kind == Edge::Segment) continue;
    Rational c = u.apply(e.origin).y;
    if (!lo || c < *lo) lo = c;
    if (!hi || c > *hi) hi = c;
  }
  if (!lo || *lo == *hi) return std::nullopt;
  std::optional<Vec2> best;
  for (Integer c = floor(*lo) + 1; Rational(c) < *hi; ++c) {
    std::vector<std::pair<Rational, Rational>> cs;
    for (const auto& e : poly.edges) {
      Vec2 a = u.pull_normal(e.h.a);
      cs.push_back({a.x, e.h.b - a.y * Rational(c)});
    }
    OpenRange r;
    if (!detail::open_interval(cs, r)) continue;
    Integer t;
    if (!r.lo && !r.hi) {
      // whole line: the lattice point closest to the origin
      Vec2 base = inv.apply(Vec2{Rational(0), Rational(c)});
      Vec2 step = inv.apply(Vec2{Rational(1), Rational(0)});
      t = floor(-dot(base, step) / dot(step, step) + Rational(1, 2));
    } else {
      auto ft = detail::first_integer(r);
      if (!ft) continue;
      t = *ft;
    }
    Vec2 x = inv.apply(Vec2{Rational(t), Rational(c)});
    if (!best || x < *best) best = x;
  }
  return best;
}

inline std::optional<Vec2> interior_lattice_point(
    const std::vector<Vec2>& points, const std::vector<Vec2>& rays) {
  return interior_lattice_point(polygon_from_vrep(points, rays));
}

}  // namespace cornercut

#endif  // CORNERCUT_LATTICE2D_HPP_
