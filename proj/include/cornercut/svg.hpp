#ifndef CORNERCUT_SVG_HPP_
#define CORNERCUT_SVG_HPP_

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cornercut/bodies.hpp"
#include "cornercut/instance.hpp"

namespace cornercut {

struct Window {
  Integer x0, x1, y0, y1;
};

struct SvgOptions {
  std::optional<Window> window;  // default: fit f, ray points and vertices
  double scale = 60;             // pixels per unit
  long margin = 1;
  long max_extent = 40;          // cap on the automatic window, in units
};

namespace detail {

inline Window fit_window(const std::vector<Vec2>& pts, const SvgOptions& o) {
  Rational x0 = pts[0].x, x1 = x0, y0 = pts[0].y, y1 = y0;
  for (const auto& p : pts) {
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  }
  Window w{floor(x0) - o.margin, ceil(x1) + o.margin, floor(y0) - o.margin,
           ceil(y1) + o.margin};
  // keep huge bodies readable: clamp around f
  const Vec2& f = pts[0];
  auto clamp = [&](Integer& lo, Integer& hi, const Rational& c) {
    Integer half = o.max_extent / 2;
    if (hi - lo <= 2 * half) return;
    lo = std::max(lo, Integer(floor(c) - half));
    hi = std::min(hi, Integer(ceil(c) + half));
  };
  clamp(w.x0, w.x1, f.x);
  clamp(w.y0, w.y1, f.y);
  return w;
}

inline std::vector<HalfPlane> box(const Window& w) {
  return {{Vec2(1, 0), Rational(w.x1)},
          {Vec2(-1, 0), -Rational(w.x0)},
          {Vec2(0, 1), Rational(w.y1)},
          {Vec2(0, -1), -Rational(w.y0)}};
}

class SvgCanvas {
 public:
  SvgCanvas(const Window& w, double scale) : w_(w), s_(scale) {}

  double X(const Rational& x) const { return (to_double(x) - w_.x0.get_d()) * s_ + pad_; }
  double Y(const Rational& y) const { return (w_.y1.get_d() - to_double(y)) * s_ + pad_; }
  double width() const { return Integer(w_.x1 - w_.x0).get_d() * s_ + 2 * pad_; }
  double height() const { return Integer(w_.y1 - w_.y0).get_d() * s_ + 2 * pad_; }

  std::ostringstream body;

  void circle(const Vec2& p, double r, const std::string& style) {
    body << "  <circle cx=\"" << X(p.x) << "\" cy=\"" << Y(p.y) << "\" r=\"" << r << "\" "
         << style << "/>\n";
  }
  void line(const Vec2& a, const Vec2& b, const std::string& style) {
    body << "  <line x1=\"" << X(a.x) << "\" y1=\"" << Y(a.y) << "\" x2=\"" << X(b.x)
         << "\" y2=\"" << Y(b.y) << "\" " << style << "/>\n";
  }
  void polygon(const std::vector<Vec2>& vs, const std::string& style) {
    body << "  <polygon points=\"";
    for (std::size_t i = 0; i < vs.size(); ++i)
      body << (i ? " " : "") << X(vs[i].x) << "," << Y(vs[i].y);
    body << "\" " << style << "/>\n";
  }
  void text(const Vec2& p, const std::string& t, double dx, double dy) {
    body << "  <text x=\"" << X(p.x) + dx << "\" y=\"" << Y(p.y) + dy
         << "\" font-size=\"12\" font-family=\"sans-serif\">" << t << "</text>\n";
  }

  std::string finish() const {
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width()
       << "\" height=\"" << height() << "\" viewBox=\"0 0 " << width() << " " << height()
       << "\">\n"
       << "  <defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" "
          "markerWidth=\"6\" markerHeight=\"6\" orient=\"auto\"><path d=\"M0,0 L10,5 "
          "L0,10 z\" fill=\"#1f5fbf\"/></marker></defs>\n"
       << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
       << body.str() << "</svg>\n";
    return os.str();
  }

 private:
  Window w_;
  double s_;
  double pad_ = 20;
};

}  // namespace detail

// The instance with an optional body: lattice points in the window, the body
// clipped to it, rays as arrows from f, the intersections f + r/psi(r) and the
// lattice points on the body's facets.
inline std::string render_svg(const CornerInstance& inst, const std::optional<Body>& body,
                              const SvgOptions& opt = {}) {
  const Vec2& f = inst.f;
  std::vector<Vec2> hits(inst.k());
  std::vector<bool> bounded_hit(inst.k(), false);
  std::vector<Vec2> fit{f};
  for (std::size_t j = 0; j < inst.k(); ++j) {
    const Vec2& r = inst.rays[j];
    if (body) {
      Rational g = gauge(*body, r);
      if (sgn(g) > 0) {
        hits[j] = f + r / g;
        bounded_hit[j] = true;
        fit.push_back(hits[j]);
        continue;
      }
    }
    fit.push_back(f + r);
  }
  if (body)
    for (const auto& v : body->polygon().vertices) fit.push_back(v);
  Window w = opt.window ? *opt.window : detail::fit_window(fit, opt);
  if (Rational(w.x0) >= f.x || Rational(w.x1) <= f.x || Rational(w.y0) >= f.y ||
      Rational(w.y1) <= f.y)
    throw UsageError("plot window must contain f in its interior");
  detail::SvgCanvas c(w, opt.scale);

  if (body) {
    auto hs = body->halfplanes();
    for (const auto& h : detail::box(w)) hs.push_back(h);
    Polygon clipped = polygon_from_hrep(hs, f);
    if (clipped.vertices.size() >= 3)
      c.polygon(clipped.vertices,
                "fill=\"#f3d9a4\" fill-opacity=\"0.6\" stroke=\"#a0522d\" stroke-width=\"2\"");
  }
  for (Integer x = w.x0; x <= w.x1; ++x)
    for (Integer y = w.y0; y <= w.y1; ++y)
      c.circle(Vec2(Rational(x), Rational(y)), 2.5, "fill=\"#777777\"");

  // rays clipped to the window
  for (std::size_t j = 0; j < inst.k(); ++j) {
    const Vec2& r = inst.rays[j];
    Vec2 end;
    if (bounded_hit[j]) {
      end = hits[j];
    } else {
      std::optional<Rational> t;
      for (const auto& h : detail::box(w)) {
        Rational d = dot(h.a, r);
        if (sgn(d) <= 0) continue;
        Rational s = (h.b - dot(h.a, f)) / d;
        if (!t || s < *t) t = s;
      }
      end = f + *t * r;
    }
    c.line(f, end, "stroke=\"#1f5fbf\" stroke-width=\"1.5\" marker-end=\"url(#arrow)\"");
    c.text(end, "r" + std::to_string(j + 1), 4, -4);
  }
  if (body) {
    for (std::size_t j = 0; j < inst.k(); ++j)
      if (bounded_hit[j]) c.circle(hits[j], 4, "fill=\"#1f5fbf\"");
    BodyClass cls = classify(*body);
    for (const auto& ys : cls.facet_points)
      for (const auto& y : ys) c.circle(y, 5, "fill=\"none\" stroke=\"#2e8b57\" stroke-width=\"2\"");
    if (cls.witness) c.circle(*cls.witness, 5, "fill=\"#c00000\"");
  }
  c.circle(f, 4.5, "fill=\"#d62728\"");
  c.text(f, "f", 6, 14);
  return c.finish();
}

}  // namespace cornercut

#endif  // CORNERCUT_SVG_HPP_
