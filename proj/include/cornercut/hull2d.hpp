#ifndef CORNERCUT_HULL2D_HPP_
#define CORNERCUT_HULL2D_HPP_

#include <algorithm>
#include <optional>
#include <vector>

#include "cornercut/vec2.hpp"

namespace cornercut {

// The closed half-plane a.x <= b.
struct HalfPlane {
  Vec2 a;
  Rational b;
  bool contains(const Vec2& x) const { return dot(a, x) <= b; }
  bool contains_strict(const Vec2& x) const { return dot(a, x) < b; }
  bool on_boundary(const Vec2& x) const { return dot(a, x) == b; }
};

enum class RecessionKind { None, Ray, Line, PointedCone, HalfPlane, Plane };

struct Edge {
  enum Kind { Segment, Ray, Line };
  HalfPlane h;
  Vec2 origin;   // segment start, ray apex, or any point of the line
  Vec2 dir;      // segment: end - origin; ray/line: direction
  Kind kind = Segment;

  Vec2 end() const { return origin + dir; }
};

// Closed convex polygon conv(vertices) + cone(rays) with its edge
// description. Vertices are listed counter-clockwise along the boundary.
struct Polygon {
  int dimension = 2;
  std::vector<Vec2> vertices;
  std::vector<Vec2> rays;  // extreme recession directions
  RecessionKind recession = RecessionKind::None;
  std::vector<Edge> edges;

  bool bounded() const { return recession == RecessionKind::None; }
  bool full_dimensional_recession() const {
    return recession == RecessionKind::PointedCone ||
           recession == RecessionKind::HalfPlane ||
           recession == RecessionKind::Plane;
  }
  bool contains(const Vec2& x) const {
    if (dimension < 2) return contains_lowdim(x);
    for (const auto& e : edges)
      if (!e.h.contains(x)) return false;
    return true;
  }
  bool contains_strict(const Vec2& x) const {
    if (dimension < 2) return false;
    for (const auto& e : edges)
      if (!e.h.contains_strict(x)) return false;
    return true;
  }
  std::vector<HalfPlane> halfplanes() const {
    std::vector<HalfPlane> h;
    for (const auto& e : edges) h.push_back(e.h);
    return h;
  }

  std::vector<Vec2> lowdim_points;  // generating points when dimension < 2
  std::vector<Vec2> lowdim_rays;

 private:
  bool contains_lowdim(const Vec2& x) const;
};

namespace detail {

// Andrew's monotone chain; strictly convex CCW output.
inline std::vector<Vec2> convex_hull_points(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() <= 2) return pts;
  std::vector<Vec2> h(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && sgn(cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2])) <= 0)
      --k;
    h[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && sgn(cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2])) <= 0)
      --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

inline HalfPlane edge_halfplane(const Vec2& from, const Vec2& to) {
  Vec2 d = to - from;
  Vec2 a{d.y, -d.x};
  return {a, dot(a, from)};
}

struct RecessionInfo {
  RecessionKind kind = RecessionKind::None;
  std::vector<Vec2> extreme;  // Ray: {d}; Line: {d,-d}; Pointed: {d1,d2}
  Vec2 normal;                // HalfPlane: recession is {x : normal.x <= 0}
};

inline RecessionInfo analyze_recession(const std::vector<Vec2>& rays_in) {
  RecessionInfo info;
  std::vector<Vec2> rays;
  for (const auto& r : rays_in)
    if (!r.is_zero()) rays.push_back(primitive_direction(r));
  std::sort(rays.begin(), rays.end(), angle_less);
  rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
  if (rays.empty()) return info;
  if (rays.size() == 1) {
    info.kind = RecessionKind::Ray;
    info.extreme = {rays[0]};
    return info;
  }
  // Classify the cyclic angular gaps.
  int n = static_cast<int>(rays.size());
  int gaps_over_pi = 0, gaps_pi = 0, big = -1;
  for (int i = 0; i < n; ++i) {
    const Vec2& u = rays[i];
    const Vec2& v = rays[(i + 1) % n];
    int c = sgn(cross(u, v));
    if (c < 0) {
      ++gaps_over_pi;
      big = i;
    } else if (c == 0) {
      // distinct primitive directions with zero cross product are opposite
      ++gaps_pi;
      if (big < 0) big = i;
    }
  }
  if (n == 2 && gaps_pi == 2) {
    info.kind = RecessionKind::Line;
    info.extreme = {rays[0], rays[1]};
    return info;
  }
  if (gaps_over_pi == 1) {
    info.kind = RecessionKind::PointedCone;
    info.extreme = {rays[(big + 1) % n], rays[big]};
    return info;
  }
  if (gaps_pi >= 1) {
    info.kind = RecessionKind::HalfPlane;
    const Vec2& u = rays[big];
    info.normal = {u.y, -u.x};  // u -> v turns by pi counter-clockwise
    for (const auto& r : rays)
      if (sgn(dot(info.normal, r)) > 0) info.normal = -info.normal;
    return info;
  }
  info.kind = RecessionKind::Plane;
  return info;
}

}  // namespace detail

inline bool Polygon::contains_lowdim(const Vec2& x) const {
  // Points, segments and rays: check collinearity and parameter range.
  if (lowdim_points.empty()) return false;
  if (dimension == 0 && lowdim_rays.empty()) return x == lowdim_points[0];
  Vec2 base = lowdim_points[0];
  Vec2 dir;
  if (!lowdim_rays.empty())
    dir = lowdim_rays[0];
  else
    for (const auto& p : lowdim_points)
      if (p != base) dir = p - base;
  if (dir.is_zero()) return x == base;
  if (sgn(cross(dir, x - base)) != 0) return false;
  Rational t = dot(x - base, dir) / dot(dir, dir);
  Rational lo = 0, hi = 0;
  for (const auto& p : lowdim_points) {
    Rational s = dot(p - base, dir) / dot(dir, dir);
    if (s < lo) lo = s;
    if (s > hi) hi = s;
  }
  bool up = false, down = false;
  for (const auto& r : lowdim_rays) {
    if (sgn(dot(r, dir)) > 0) up = true;
    if (sgn(dot(r, dir)) < 0) down = true;
  }
  return (down || t >= lo) && (up || t <= hi);
}

// Exact polygon from a V-representation (points plus recession directions).
inline Polygon polygon_from_vrep(const std::vector<Vec2>& points,
                                 const std::vector<Vec2>& rays) {
  if (points.empty()) throw UsageError("polygon_from_vrep: no points");
  Polygon poly;
  auto rec = detail::analyze_recession(rays);
  poly.recession = rec.kind;
  poly.rays = rec.extreme;

  // Affine dimension of points + rays.
  {
    Vec2 base = points[0];
    std::vector<Vec2> dirs;
    for (const auto& p : points)
      if (p != base) dirs.push_back(p - base);
    for (const auto& r : rays)
      if (!r.is_zero()) dirs.push_back(r);
    int dim = 0;
    Vec2 first;
    for (const auto& d : dirs) {
      if (dim == 0) {
        first = d;
        dim = 1;
      } else if (sgn(cross(first, d)) != 0) {
        dim = 2;
        break;
      }
    }
    poly.dimension = dim;
    if (dim < 2) {
      poly.lowdim_points = points;
      for (const auto& r : rays)
        if (!r.is_zero()) poly.lowdim_rays.push_back(r);
      auto hull = detail::convex_hull_points(points);
      poly.vertices = hull;
      if (dim == 1 && hull.size() == 2 && !poly.rays.empty()) {
        // one endpoint absorbed by the ray direction
        std::vector<Vec2> keep;
        for (const auto& v : hull) {
          bool absorbed = false;
          for (const auto& r : poly.rays)
            for (const auto& w : hull)
              if (w != v && same_direction(v - w, r)) absorbed = true;
          if (!absorbed) keep.push_back(v);
        }
        poly.vertices = keep;
      }
      if (rec.kind == RecessionKind::Line) poly.vertices.clear();
      return poly;
    }
  }

  switch (rec.kind) {
    case RecessionKind::None: {
      poly.vertices = detail::convex_hull_points(points);
      const auto& v = poly.vertices;
      for (std::size_t i = 0; i < v.size(); ++i) {
        const Vec2& a = v[i];
        const Vec2& b = v[(i + 1) % v.size()];
        poly.edges.push_back({detail::edge_halfplane(a, b), a, b - a,
                              Edge::Segment});
      }
      return poly;
    }
    case RecessionKind::Plane:
      return poly;
    case RecessionKind::HalfPlane: {
      Rational m = dot(rec.normal, points[0]);
      for (const auto& p : points) m = std::max(m, Rational(dot(rec.normal, p)));
      Vec2 dir = perp(rec.normal);
      // point on the boundary line
      Rational nn = dot(rec.normal, rec.normal);
      Vec2 o = (m / nn) * rec.normal;
      poly.edges.push_back({{rec.normal, m}, o, dir, Edge::Line});
      return poly;
    }
    default:
      break;
  }

  // Truncate the unbounded polygon by one or two auxiliary lines, take the
  // bounded hull and discard everything lying on the auxiliary lines.
  Vec2 w;
  if (rec.kind == RecessionKind::Ray || rec.kind == RecessionKind::Line) {
    w = rec.extreme[0];
  } else {
    const Vec2& d1 = rec.extreme[0];
    const Vec2& d2 = rec.extreme[1];
    Vec2 a1{-d1.y, d1.x}, a2{d2.y, -d2.x};
    w = a1 + a2;
  }
  Rational hi = dot(w, points[0]), lo = hi;
  for (const auto& p : points) {
    Rational s = dot(w, p);
    if (s > hi) hi = s;
    if (s < lo) lo = s;
  }
  hi += 1;
  lo -= 1;
  std::vector<Vec2> pts = points;
  for (const auto& p : points) {
    for (const auto& d : rec.extreme) {
      Rational wd = dot(w, d);
      Rational target = sgn(wd) > 0 ? hi : lo;
      pts.push_back(p + ((target - dot(w, p)) / wd) * d);
    }
  }
  auto hull = detail::convex_hull_points(pts);
  auto on_aux = [&](const Vec2& x) {
    Rational s = dot(w, x);
    return s == hi || (rec.kind == RecessionKind::Line && s == lo);
  };
  std::size_t n = hull.size();
  // rotate so that hull[0] is the first real vertex after an auxiliary one
  std::size_t start = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (on_aux(hull[(i + n - 1) % n]) && !on_aux(hull[i])) {
      start = i;
      break;
    }
  }
  std::rotate(hull.begin(), hull.begin() + start, hull.end());
  for (const auto& v : hull)
    if (!on_aux(v)) poly.vertices.push_back(v);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = hull[i];
    const Vec2& b = hull[(i + 1) % n];
    bool aa = on_aux(a), ab = on_aux(b);
    if (aa && ab) {
      // an edge between auxiliary points is genuine only if it joins the
      // two different auxiliary lines (the sides of a strip)
      if (rec.kind == RecessionKind::Line && dot(w, a) != dot(w, b)) {
        poly.edges.push_back({detail::edge_halfplane(a, b), a,
                              sgn(dot(w, b - a)) > 0 ? rec.extreme[0]
                                                     : rec.extreme[1],
                              Edge::Line});
      }
      continue;
    }
    HalfPlane h = detail::edge_halfplane(a, b);
    if (!aa && !ab) {
      poly.edges.push_back({h, a, b - a, Edge::Segment});
    } else if (!aa && ab) {
      poly.edges.push_back({h, a, b - a, Edge::Ray});
    } else {
      poly.edges.push_back({h, b, a - b, Edge::Ray});
    }
  }
  return poly;
}

// Polygon {x : h.a.x <= h.b for all h}. The hint must be a feasible point;
// it is used to locate a boundary point when the region has no vertex.
inline Polygon polygon_from_hrep(const std::vector<HalfPlane>& hs,
                                 const Vec2& hint) {
  auto feasible = [&](const Vec2& x) {
    for (const auto& h : hs)
      if (!h.contains(x)) return false;
    return true;
  };
  std::vector<Vec2> pts;
  for (std::size_t i = 0; i < hs.size(); ++i)
    for (std::size_t j = i + 1; j < hs.size(); ++j) {
      Rational d = cross(hs[i].a, hs[j].a);
      if (sgn(d) == 0) continue;
      Vec2 x{(hs[i].b * hs[j].a.y - hs[j].b * hs[i].a.y) / d,
             (hs[i].a.x * hs[j].b - hs[j].a.x * hs[i].b) / d};
      if (feasible(x)) pts.push_back(x);
    }
  std::vector<Vec2> rays;
  auto rec_ok = [&](const Vec2& d) {
    for (const auto& h : hs)
      if (sgn(dot(h.a, d)) > 0) return false;
    return true;
  };
  if (hs.empty()) {
    rays = {Vec2(1, 0), Vec2(0, 1), Vec2(-1, 0), Vec2(0, -1)};
  } else {
    for (const auto& h : hs) {
      Vec2 d = perp(h.a);
      if (rec_ok(d)) rays.push_back(d);
      if (rec_ok(-d)) rays.push_back(-d);
      if (rec_ok(-h.a)) rays.push_back(-h.a);
    }
  }
  if (pts.empty()) {
    if (!feasible(hint)) throw DomainError("polygon_from_hrep: infeasible hint");
    pts.push_back(hint);
    for (const auto& h : hs) {
      Rational nn = dot(h.a, h.a);
      Vec2 q = hint + ((h.b - dot(h.a, hint)) / nn) * h.a;
      if (feasible(q)) pts.push_back(q);
    }
  }
  return polygon_from_vrep(pts, rays);
}

}  // namespace cornercut

#endif  // CORNERCUT_HULL2D_HPP_
