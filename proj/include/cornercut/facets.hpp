#ifndef CORNERCUT_FACETS_HPP_
#define CORNERCUT_FACETS_HPP_

#include <algorithm>
#include <cstddef>
#include <functional>
#include <future>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cornercut/blocking.hpp"
#include "cornercut/bodies.hpp"
#include "cornercut/lattice2d.hpp"
#include "cornercut/tilting.hpp"

namespace cornercut {

enum class Family { SplitRayParallel, SplitHullFacet, Type1, Type2b, Type2c, Type3, Quad, PIntegral };

inline const char* to_string(Family f) {
  switch (f) {
    case Family::SplitRayParallel: return "SplitRayParallel";
    case Family::SplitHullFacet: return "SplitHullFacet";
    case Family::Type1: return "Type1";
    case Family::Type2b: return "Type2b";
    case Family::Type2c: return "Type2c";
    case Family::Type3: return "Type3";
    case Family::Quad: return "Quad";
    case Family::PIntegral: return "PIntegral";
  }
  return "?";
}

inline bool family_matches(Family f, BodyTag t) {
  switch (f) {
    case Family::SplitRayParallel:
    case Family::SplitHullFacet: return t == BodyTag::Split;
    case Family::Type1: return t == BodyTag::TriangleType1;
    case Family::Type2b:
    case Family::Type2c: return t == BodyTag::TriangleType2;
    case Family::Type3: return t == BodyTag::TriangleType3;
    case Family::Quad: return t == BodyTag::Quadrilateral;
    case Family::PIntegral: return is_maximal_tag(t);
  }
  return false;
}

struct Candidate {
  Body body;
  Family family;
  BodyTag tag = BodyTag::NotMaximal;
  std::string choices;
};

// Generator bookkeeping: `tried` counts the configurations examined,
// `kept` the emitted candidates.
struct CandidateCounts {
  std::map<Family, std::size_t> tried, kept;
  std::size_t max_hull_vertices = 0;
  std::size_t max_hull_edges = 0;
  std::size_t base_lines = 0;
};

struct Facet {
  Cut cut;
  Family family;
  std::size_t rank = 0;
  std::vector<std::size_t> tight_rows;
  std::vector<Candidate> sources;
};

struct FacetList {
  std::vector<Facet> facets;
  CandidateCounts counts;
  std::size_t distinct_cuts = 0;

  std::vector<QVec> gammas() const {
    std::vector<QVec> g;
    for (const auto& f : facets) g.push_back(f.cut.gamma);
    return g;
  }
};

namespace detail {

inline std::string point_list(const std::vector<Vec2>& pts) {
  std::string s;
  for (const auto& p : pts) s += (s.empty() ? "" : " ") + to_string(p);
  return s;
}

// Body {x : a.(x - f) <= 1} from halfplanes with f strictly inside.
inline std::optional<std::vector<Vec2>> rows_from_halfplanes(const std::vector<HalfPlane>& hs,
                                                             const Vec2& f) {
  std::vector<Vec2> rows;
  for (const auto& h : hs) {
    Rational slack = h.b - dot(h.a, f);
    if (sgn(slack) <= 0) return std::nullopt;
    rows.push_back(h.a / slack);
  }
  return rows;
}

// Halfplane bounded by the line through a and b on the side of f; empty when
// f is on the line.
inline std::optional<HalfPlane> side_of(const Vec2& a, const Vec2& b, const Vec2& f) {
  Vec2 n = perp(b - a);
  if (n.is_zero()) return std::nullopt;
  Rational c = dot(n, a), t = dot(n, f);
  if (t == c) return std::nullopt;
  if (t > c) return HalfPlane{-n, -c};
  return HalfPlane{n, c};
}

// First lattice point f + t r with t > 0, if any.
inline std::optional<Vec2> integer_hit(const Vec2& f, const Vec2& r) {
  LatticeLine ll = lattice_line(f, r);
  if (!ll.has_points) return std::nullopt;
  Rational c = sgn(ll.dir.x) != 0 ? r.x / ll.dir.x : r.y / ll.dir.y;
  Integer k = sgn(c) > 0 ? Integer(floor(ll.param) + 1) : Integer(ceil(ll.param) - 1);
  return ll.base + Rational(k) * ll.dir;
}

struct Context {
  const CornerInstance& inst;
  std::vector<std::size_t> order;               // ray indices by angle
  std::vector<std::optional<Vec2>> hits;        // first lattice point on each ray
  std::map<std::pair<std::size_t, std::size_t>, ConeHull> hulls;  // cross(r_a, r_b) > 0
  CandidateCounts counts;
  std::vector<Candidate> out;

  explicit Context(const CornerInstance& in) : inst(in) {
    for (std::size_t j = 0; j < inst.k(); ++j) order.push_back(j);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return angle_less(inst.rays[a], inst.rays[b]);
    });
    for (const auto& r : inst.rays) hits.push_back(integer_hit(inst.f, r));
    for (std::size_t a = 0; a < inst.k(); ++a)
      for (std::size_t b = 0; b < inst.k(); ++b)
        if (sgn(cross(inst.rays[a], inst.rays[b])) > 0) {
          auto h = cone_integer_hull(inst.f, inst.rays[a], inst.rays[b]);
          counts.max_hull_vertices = std::max(counts.max_hull_vertices, h.vertices.size());
          counts.max_hull_edges = std::max(counts.max_hull_edges, h.vertices.size() + 1);
          hulls.emplace(std::make_pair(a, b), std::move(h));
        }
  }

  // Hull vertices strictly inside the cone spanned by r_a, r_b.
  std::vector<Vec2> inner_vertices(std::size_t a, std::size_t b) const {
    std::vector<Vec2> v;
    for (const auto& p : hulls.at({a, b}).vertices) {
      Vec2 d = p - inst.f;
      if (sgn(cross(inst.rays[a], d)) > 0 && sgn(cross(d, inst.rays[b])) > 0) v.push_back(p);
    }
    return v;
  }

  void emit(Body body, Family fam, std::string choices) {
    BodyClass c = classify(body);
    if (!family_matches(fam, c.tag)) return;
    ++counts.kept[fam];
    out.push_back({std::move(body), fam, c.tag, std::move(choices)});
  }
};

inline void split_candidate(Context& cx, const Vec2& dir, Family fam, const std::string& why) {
  ++cx.counts.tried[fam];
  Vec2 n = primitive_direction(perp(dir));
  Rational h = dot(n, cx.inst.f);
  if (is_integer(h)) return;
  Integer lo = floor(h);
  cx.emit(Body(cx.inst.f, {n / (Rational(lo + 1) - h), -n / (h - Rational(lo))}), fam, why);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Candidate families.

inline void candidates_split(detail::Context& cx) {
  const auto& rays = cx.inst.rays;
  for (std::size_t j = 0; j < rays.size(); ++j)
    detail::split_candidate(cx, rays[j], Family::SplitRayParallel,
                            "direction of ray " + std::to_string(j + 1));
  for (const auto& [ab, hull] : cx.hulls) {
    const auto& v = hull.vertices;
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
      detail::split_candidate(cx, v[i + 1] - v[i], Family::SplitHullFacet,
                              "hull facet of rays " + std::to_string(ab.first + 1) + "," +
                                  std::to_string(ab.second + 1));
  }
}

inline std::optional<Candidate> candidate_p_integral(detail::Context& cx) {
  ++cx.counts.tried[Family::PIntegral];
  std::vector<Vec2> pts;
  for (const auto& h : cx.hits) {
    if (!h) return std::nullopt;
    pts.push_back(*h);
  }
  pts.push_back(cx.inst.f);
  if (!is_lattice_free(pts, {}).lattice_free) return std::nullopt;
  std::size_t before = cx.out.size();
  cx.emit(maximal_superset(pts, {}, cx.inst.f), Family::PIntegral, "closest lattice points");
  if (cx.out.size() == before) return std::nullopt;
  return cx.out.back();
}

inline void candidates_type1(detail::Context& cx) {
  const Vec2& f = cx.inst.f;
  for (std::size_t i = 0; i < cx.inst.k(); ++i)
    for (std::size_t j = i + 1; j < cx.inst.k(); ++j) {
      if (!cx.hits[i] || !cx.hits[j] || *cx.hits[i] == *cx.hits[j]) continue;
      const Vec2 &q1 = *cx.hits[i], &q2 = *cx.hits[j];
      Vec2 d = q2 - q1;
      if (!(d / 2).is_integral()) continue;
      Vec2 u = d / 2;
      if (primitive_direction(u) != u) continue;
      Vec2 w = unimodular_to_e1(u).inverse().apply(Vec2(0, 1));
      // f - q1 = a u + b w
      Vec2 g = f - q1;
      Rational det = cross(u, w);
      Rational a = cross(g, w) / det, b = cross(u, g) / det;
      if (sgn(b) == 0) continue;
      if (sgn(b) < 0) w = -w, b = -b, a = cross(g, w) / cross(u, w);
      // triangle q1, q1 + 2u, q1 + 2(w + t u) holds f iff (a+b-2)/b < t < a/b
      Rational lo = (a + b - 2) / b, hi = a / b;
      for (Integer t = floor(lo) + 1; Rational(t) < hi; ++t) {
        ++cx.counts.tried[Family::Type1];
        Vec2 apex = q1 + 2 * (w + Rational(t) * u);
        Polygon p = polygon_from_vrep({q1, q2, apex}, {});
        cx.emit(Body(f, rows_from_polygon(p, f)), Family::Type1,
                "rays " + std::to_string(i + 1) + "," + std::to_string(j + 1) + " apex " +
                    to_string(apex));
      }
    }
}

namespace detail {

// Cyclic tuples of rays (in angular order) whose consecutive members span
// pointed cones.
inline void cyclic_tuples(const Context& cx, std::size_t n,
                          const std::function<void(const std::vector<std::size_t>&)>& visit) {
  const auto& o = cx.order;
  std::vector<std::size_t> pick;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (pick.size() == n) {
      std::vector<std::size_t> t;
      for (auto p : pick) t.push_back(o[p]);
      for (std::size_t i = 0; i < n; ++i)
        if (sgn(cross(cx.inst.rays[t[i]], cx.inst.rays[t[(i + 1) % n]])) <= 0) return;
      visit(t);
      return;
    }
    for (std::size_t p = from; p < o.size(); ++p) {
      pick.push_back(p);
      rec(p + 1);
      pick.pop_back();
    }
  };
  rec(0);
}

inline void corner_polygons(Context& cx, std::size_t n, Family fam) {
  const Vec2& f = cx.inst.f;
  cyclic_tuples(cx, n, [&](const std::vector<std::size_t>& t) {
    std::vector<std::vector<Vec2>> choices;
    std::vector<Vec2> dirs;
    for (std::size_t i = 0; i < n; ++i) {
      dirs.push_back(cx.inst.rays[t[i]]);
      choices.push_back(cx.inner_vertices(t[i], t[(i + 1) % n]));
      if (choices.back().empty()) return;
    }
    // the facet points span an empty lattice polygon: a unimodular
    // triangle or a unimodular parallelogram
    auto unimodular = [](const Vec2& a, const Vec2& b, const Vec2& c) {
      return abs(cross(b - a, c - a)) == 1;
    };
    std::vector<Vec2> pts(n);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == 3 && !unimodular(pts[0], pts[1], pts[2])) return;
      if (i == 3 && n == 4) {
        pts[3] = pts[0] + pts[2] - pts[1];
        if (std::find(choices[3].begin(), choices[3].end(), pts[3]) == choices[3].end()) return;
        ++i;
      }
      if (i == n) {
        ++cx.counts.tried[fam];
        auto body = n == 3 ? solve_triangle(f, dirs, pts) : solve_quadrilateral(f, dirs, pts);
        if (!body) return;
        if (fam == Family::Quad) {
          BodyClass c = classify(*body);
          if (c.tag != BodyTag::Quadrilateral) return;
          if (!ratio_condition(*body, cx.inst).holds) return;
        }
        std::string why = "rays";
        for (auto j : t) why += " " + std::to_string(j + 1);
        cx.emit(*body, fam, why + " points " + point_list(pts));
        return;
      }
      for (const auto& y : choices[i]) {
        pts[i] = y;
        rec(i + 1);
      }
    };
    rec(0);
  });
}

}  // namespace detail

inline void candidates_type3(detail::Context& cx) { detail::corner_polygons(cx, 3, Family::Type3); }

inline void candidates_quad(detail::Context& cx) { detail::corner_polygons(cx, 4, Family::Quad); }

namespace detail {

// Type-2 triangles over a base lattice line. Coordinates are (a, l) with the
// base at l = 0, f above it and lattice points exactly the integer pairs.
// The side through y1 = (a1, 1) is anchored at the foot of a ray on the base;
// the side through y2 = (a1 + 1, 1) also ends at a ray foot, meets the first
// side on a ray, or is any position that no other ray reaches.
class Type2Builder {
 public:
  Type2Builder(Context& cx, const Vec2& n, const Integer& h0, bool mirrored)
      : cx_(cx), n_(n), h0_(h0), mirrored_(mirrored) {
    u_ = unimodular_to_e1(perp(n));
    if (u_.pull_normal(n).y < 0) u_ = {u_.a, u_.b, -u_.c, -u_.d};
    if (mirrored) u_ = {-u_.a, -u_.b, u_.c, u_.d};
    inv_ = u_.inverse();
    F_ = to_local(cx.inst.f);
    for (const auto& r : cx.inst.rays) R_.push_back(u_.apply(r));
  }

  void run() {
    std::set<Integer> starts;
    for (const auto& r : R_) {
      if (sgn(r.y) == 0) continue;
      Rational t = (1 - F_.y) / r.y;
      if (sgn(t) <= 0) continue;
      Rational q = F_.x + t * r.x;
      if (!is_integer(q)) starts.insert(floor(q));
    }
    if (F_.y == 1) starts.insert(floor(F_.x));
    std::vector<Rational> feet;
    for (const auto& r : R_) {
      if (sgn(r.y) >= 0) continue;
      Rational foot = F_.x - F_.y / r.y * r.x;
      if (std::find(feet.begin(), feet.end(), foot) == feet.end()) feet.push_back(foot);
    }
    for (const auto& a1 : starts)
      for (const auto& p : feet) build_from(Rational(a1), p, feet);
  }

 private:
  Vec2 to_local(const Vec2& x) const {
    Vec2 u = u_.apply(x);
    return {u.x, u.y - Rational(h0_)};
  }
  Vec2 to_global(const Vec2& a) const { return inv_.apply({a.x, a.y + Rational(h0_)}); }

  void build_from(const Rational& a1, const Rational& p, const std::vector<Rational>& feet) {
    Vec2 y1(a1, 1), y2(a1 + 1, 1), foot1(p, 0);
    Rational ds1 = a1 - p;
    // f strictly right of the first side
    if (F_.x - p - ds1 * F_.y <= 0) return;
    if (!mirrored_)
      for (const auto& q : feet) attempt(y1, foot1, y2, Vec2(q, 0), "feet");
    for (std::size_t c = 0; c < R_.size(); ++c) {
      // apex on ray c along the first side: a = p + l ds1
      const Vec2& r = R_[c];
      Rational den = r.x - ds1 * r.y;
      if (sgn(den) == 0) continue;
      Rational t = (p + ds1 * F_.y - F_.x) / den;
      if (sgn(t) <= 0) continue;
      Vec2 apex = F_ + t * r;
      if (apex.y <= 1) continue;
      attempt(y1, foot1, y2, apex, "apex on ray " + std::to_string(c + 1));
    }
    if (auto s = free_side(a1, p, ds1)) attempt(y1, foot1, y2, Vec2(a1 + 1 + *s, 0), "free side");
  }

  // Parameter s of a side through y2 with foot (a1 + 1 + s, 0) that no ray
  // other than those aimed at y2 reaches.
  std::optional<Rational> free_side(const Rational& a1, const Rational& p, const Rational& ds1) {
    struct Bound {
      Rational v;
      bool strict;
    };
    std::optional<Bound> lo, hi;
    auto lower = [&](Rational v, bool strict) {
      if (!lo || v > lo->v || (v == lo->v && strict)) lo = Bound{v, strict};
    };
    auto upper = [&](Rational v, bool strict) {
      if (!hi || v < hi->v || (v == hi->v && strict)) hi = Bound{v, strict};
    };
    const Rational &fa = F_.x, &fl = F_.y;
    lower(-ds1, true);  // apex above the adjacent line
    if (fl < 1) lower((fa - a1 - 1) / (1 - fl), true);
    else if (fl > 1) upper((a1 + 1 - fa) / (fl - 1), true);
    else if (fa >= a1 + 1) return std::nullopt;
    Vec2 row1 = Vec2(-1, ds1) / (fa - p - ds1 * fl);
    Vec2 row3(0, -1 / fl);
    Vec2 to_y2 = Vec2(a1 + 1, 1) - F_;
    for (const auto& r : R_) {
      if (sgn(cross(r, to_y2)) == 0 && sgn(dot(r, to_y2)) > 0) continue;
      Rational M = std::max(dot(row1, r), dot(row3, r));
      Rational A = r.y - M * (1 - fl), B = M * (a1 + 1 - fa) - r.x;
      int s = sgn(A);
      if (s > 0) upper(B / A, false);
      else if (s < 0) lower(B / A, false);
      else if (sgn(B) < 0) return std::nullopt;
    }
    // lattice points above the adjacent line must stay outside
    for (long l = 2; l < 4096; ++l) {
      Rational gap = Rational(1, l - 1);
      if (gap - ds1 <= lo->v) break;
      Integer z = floor(p + Rational(l) * ds1) + 1;
      lower((a1 + 1 - Rational(z)) / Rational(l - 1), false);
    }
    if (hi) {
      if (lo->v > hi->v) return std::nullopt;
      if (lo->v == hi->v) {
        if (lo->strict || hi->strict) return std::nullopt;
        return lo->v;
      }
      return (lo->v + hi->v) / 2;
    }
    return lo->v + 1;
  }

  void attempt(const Vec2& y1, const Vec2& foot1, const Vec2& y2, const Vec2& anchor2,
               const std::string& how) {
    ++cx_.counts.tried[Family::Type2b];
    const Vec2& f = cx_.inst.f;
    Vec2 Y1 = to_global(y1), P1 = to_global(foot1), Y2 = to_global(y2), A2 = to_global(anchor2);
    auto s1 = side_of(P1, Y1, f), s2 = side_of(Y2, A2, f);
    if (!s1 || !s2) return;
    HalfPlane base{-n_, -Rational(h0_)};
    if (dot(n_, f) < Rational(h0_)) base = {n_, Rational(h0_)};
    auto rows = rows_from_halfplanes({base, *s1, *s2}, f);
    if (!rows) return;
    Body body(f, *rows);
    if (!body.bounded() || body.polygon().vertices.size() != 3) return;
    Family fam = base_is_long_edge(body) ? Family::Type2b : Family::Type2c;
    cx_.emit(std::move(body), fam,
             "base " + to_string(n_) + "=" + h0_.get_str() + " y " + to_string(Y1) + " " +
                 to_string(Y2) + " foot " + to_string(P1) + " " + how);
  }

  bool base_is_long_edge(const Body& body) const {
    const auto& v = body.polygon().vertices;
    std::size_t base_count = 0, best = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const Vec2 &a = v[i], &b = v[(i + 1) % v.size()];
      std::size_t c = lattice_points_on_segment(a, b).size();
      best = std::max(best, c);
      if (dot(n_, a) == Rational(h0_) && dot(n_, b) == Rational(h0_)) base_count = c;
    }
    return base_count == best;
  }

  Context& cx_;
  Vec2 n_;
  Integer h0_;
  bool mirrored_;
  Unimodular u_, inv_;
  Vec2 F_;
  std::vector<Vec2> R_;
};

}  // namespace detail

inline void candidates_type2(detail::Context& cx) {
  const Vec2& f = cx.inst.f;
  // base lines: lines of integer hull edges of the pair cones, oriented so
  // that f lies on the side n.x > h0
  std::set<std::pair<Vec2, Integer>> lines;
  auto add = [&](const Vec2& a, const Vec2& dir) {
    Vec2 n = primitive_direction(perp(dir));
    Rational h = dot(n, a);
    if (dot(n, f) < h) n = -n, h = -h;
    if (dot(n, f) == h) return;
    lines.insert({n, h.get_num()});
  };
  for (const auto& [ab, hull] : cx.hulls) {
    const auto& v = hull.vertices;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) add(v[i], v[i + 1] - v[i]);
    add(v.front(), hull.r1);
    add(v.back(), hull.r2);
  }
  cx.counts.base_lines = lines.size();
  for (const auto& [n, h0] : lines)
    for (bool mirrored : {false, true}) detail::Type2Builder(cx, n, h0, mirrored).run();
}

// ---------------------------------------------------------------------------
// Enumeration.

// Families run concurrently on private copies of the shared context; the
// merge is in a fixed family order so the result does not depend on timing.
inline std::vector<Candidate> all_candidates(const CornerInstance& inst,
                                             CandidateCounts* counts = nullptr,
                                             bool parallel = true) {
  inst.require_full("enumerate_facets");
  const detail::Context base(inst);
  const std::vector<std::function<void(detail::Context&)>> gens{
      [](detail::Context& cx) { candidate_p_integral(cx); },
      candidates_split, candidates_type1, candidates_type2, candidates_type3, candidates_quad};
  std::vector<detail::Context> parts(gens.size(), base);
  if (parallel) {
    std::vector<std::future<void>> running;
    for (std::size_t i = 0; i < gens.size(); ++i)
      running.push_back(std::async(std::launch::async, gens[i], std::ref(parts[i])));
    for (auto& r : running) r.get();
  } else {
    for (std::size_t i = 0; i < gens.size(); ++i) gens[i](parts[i]);
  }
  CandidateCounts total = base.counts;
  std::vector<Candidate> out;
  for (auto& part : parts) {
    for (const auto& [fam, n] : part.counts.tried) total.tried[fam] += n;
    for (const auto& [fam, n] : part.counts.kept) total.kept[fam] += n;
    total.base_lines = std::max(total.base_lines, part.counts.base_lines);
    for (auto& c : part.out) out.push_back(std::move(c));
  }
  if (counts) *counts = total;
  return out;
}

inline FacetList enumerate_facets(const CornerInstance& inst, bool parallel = true) {
  FacetList res;
  auto cands = all_candidates(inst, &res.counts, parallel);
  BlockingSystem sys = build_blocking_system(inst);
  std::map<QVec, std::vector<Candidate>> by_cut;
  for (auto& c : cands) by_cut[cut_from_body(c.body, inst)].push_back(std::move(c));
  res.distinct_cuts = by_cut.size();
  for (auto& [gamma, srcs] : by_cut) {
    if (!sys.satisfied(gamma))
      throw std::logic_error("enumerate_facets: a lattice-free candidate gave an invalid cut");
    Extremality e = is_extreme(sys, gamma);
    if (!e.extreme) continue;
    Facet fct;
    fct.cut = {gamma, srcs.front().body, std::string("facet:") + to_string(srcs.front().family)};
    fct.family = srcs.front().family;
    fct.rank = e.rank;
    fct.tight_rows = e.tight_rows;
    fct.sources = std::move(srcs);
    res.facets.push_back(std::move(fct));
  }
  return res;
}

}  // namespace cornercut

#endif  // CORNERCUT_FACETS_HPP_
