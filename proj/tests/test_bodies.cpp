#include <gtest/gtest.h>

#include <set>

#include "cornercut/bodies.hpp"
#include "support/random_instances.hpp"

using namespace cornercut;
using cornercut::testing::Rng;

namespace {

Rational q(const char* s) { return parse_rational(s); }
Vec2 v(const char* a, const char* b) { return {q(a), q(b)}; }
const Vec2 kHalf = v("1/2", "1/2");

Body split_x() { return Body(kHalf, {Vec2(2, 0), Vec2(-2, 0)}); }
Body triangle() { return Body(kHalf, {Vec2(1, 1), Vec2(-2, 0), Vec2(0, -2)}); }
Body square() { return Body(kHalf, {Vec2(2, 0), Vec2(0, 2), Vec2(-2, 0), Vec2(0, -2)}); }
CornerInstance axis_instance() {
  return CornerInstance(kHalf, {Vec2(1, 0), Vec2(0, 1), Vec2(-1, 0), Vec2(0, -1)});
}

QVec qv(std::initializer_list<long> xs) {
  QVec g;
  for (long x : xs) g.push_back(Rational(x));
  return g;
}

std::set<std::pair<std::string, std::string>> as_set(const std::vector<Vec2>& pts) {
  std::set<std::pair<std::string, std::string>> s;
  for (const auto& p : pts) s.insert({to_string(p.x), to_string(p.y)});
  return s;
}

// A small random lattice-free polygon around f.
Polygon random_small_region(Rng& rng, const Vec2& f) {
  while (true) {
    std::vector<Vec2> pts;
    int n = rng.uniform(3, 6);
    for (int i = 0; i < n; ++i)
      pts.push_back(f + Vec2{make_rational(rng.uniform(-6, 6), 8),
                             make_rational(rng.uniform(-6, 6), 8)});
    Polygon p = polygon_from_vrep(pts, {});
    if (p.dimension == 2 && p.contains_strict(f) && is_lattice_free(p).lattice_free)
      return p;
  }
}

}  // namespace

TEST(Gauge, Examples) {
  EXPECT_EQ(gauge(split_x(), Vec2(1, 0)), 2);
  EXPECT_EQ(gauge(split_x(), Vec2(0, 1)), 0);
  EXPECT_EQ(gauge(triangle(), Vec2(1, 0)), 1);
  Body cone(kHalf, {Vec2(-1, 0), Vec2(0, -1)});
  EXPECT_THROW(gauge(cone, Vec2(1, 0)), DomainError);
}

TEST(RayIncidence, Examples) {
  auto hits = ray_incidence(split_x(), {Vec2(1, 0), Vec2(0, 1)});
  EXPECT_EQ(hits[0].psi, 2);
  ASSERT_TRUE(hits[0].point);
  EXPECT_EQ(*hits[0].point, v("1", "1/2"));
  EXPECT_EQ(hits[0].tight, std::vector<std::size_t>{0});
  EXPECT_FALSE(hits[0].corner);
  EXPECT_EQ(hits[1].psi, 0);
  EXPECT_FALSE(hits[1].point);
  EXPECT_EQ(hits[1].tight, (std::vector<std::size_t>{0, 1}));
  auto t = ray_incidence(triangle(), {Vec2(3, -1)});
  EXPECT_EQ(t[0].psi, 2);
  EXPECT_EQ(*t[0].point, Vec2(2, 0));
  EXPECT_EQ(t[0].tight.size(), 2u);
  EXPECT_TRUE(t[0].corner);
}

TEST(Classify, Examples) {
  EXPECT_EQ(classify(square()).tag, BodyTag::NotMaximal);
  BodyClass c = classify(triangle());
  EXPECT_EQ(c.tag, BodyTag::TriangleType1);
  std::vector<Vec2> ys;
  for (const auto& fp : c.facet_points) {
    ASSERT_EQ(fp.size(), 1u);
    ys.push_back(fp[0]);
  }
  EXPECT_EQ(as_set(ys), as_set({Vec2(1, 0), Vec2(0, 1), Vec2(1, 1)}));
  BodyClass s = classify(split_x());
  EXPECT_EQ(s.tag, BodyTag::Split);
  EXPECT_EQ(s.split_offset, 0);
  // strip -1/2 <= x1 <= 3/2
  BodyClass w = classify(Body(kHalf, {Vec2(1, 0), Vec2(-1, 0)}));
  EXPECT_EQ(w.tag, BodyTag::NotLatticeFree);
  ASSERT_TRUE(w.witness);
}

TEST(Classify, TriangleTypesAndQuadrilateral) {
  // Type 2: vertices (0,0), (3,0), (0,3/2)
  Body t2 = Body(v("1/2", "1/4"),
                 rows_from_polygon(polygon_from_vrep({Vec2(0, 0), Vec2(3, 0), v("0", "3/2")}, {}),
                                   v("1/2", "1/4")));
  EXPECT_EQ(classify(t2).tag, BodyTag::TriangleType2);
  // Type 3: one lattice point in each edge interior
  Vec2 f = v("1/3", "1/3");
  Body t3(f, rows_from_polygon(polygon_from_hrep({{v("-1/3", "-1"), Rational(0)},
                                                  {v("1", "1/3"), Rational(1)},
                                                  {Vec2(-1, 1), Rational(1)}},
                                                 f),
                               f));
  EXPECT_EQ(classify(t3).tag, BodyTag::TriangleType3);
  // the diamond carries (0,0), (1,0), (1,1), (0,1) at its edge midpoints
  Body quad(kHalf, rows_from_polygon(
                       polygon_from_vrep({v("1/2", "-1/2"), v("3/2", "1/2"), v("1/2", "3/2"),
                                          v("-1/2", "1/2")},
                                         {}),
                       kHalf));
  EXPECT_EQ(classify(quad).tag, BodyTag::Quadrilateral);
  // a smaller quadrilateral misses the lattice
  Body q2(kHalf, rows_from_polygon(
                     polygon_from_vrep({v("1/2", "-1/3"), v("4/3", "1/2"), v("1/2", "4/3"),
                                        v("-1/3", "1/2")},
                                       {}),
                     kHalf));
  EXPECT_EQ(classify(q2).tag, BodyTag::NotMaximal);
}

TEST(CutFromBody, Examples) {
  auto inst = axis_instance();
  EXPECT_EQ(cut_from_body(split_x(), inst), qv({2, 0, 2, 0}));
  EXPECT_EQ(cut_from_body(triangle(), inst), qv({1, 1, 2, 2}));
  CornerInstance dup(kHalf, {Vec2(1, 0), Vec2(1, 0), Vec2(0, 1), Vec2(-1, -1)});
  auto g = cut_from_body(triangle(), dup);
  EXPECT_EQ(g[0], g[1]);
  EXPECT_THROW(cut_from_body(Body(kHalf, {Vec2(1, 0), Vec2(-1, 0)}), inst), DomainError);
}

TEST(BodyFromCut, Examples) {
  auto inst = axis_instance();
  GammaBody s = body_from_cut(qv({2, 0, 2, 0}), inst);
  EXPECT_EQ(s.points, (std::vector<Vec2>{v("1", "1/2"), v("0", "1/2")}));
  EXPECT_EQ(s.rays, (std::vector<Vec2>{Vec2(0, 1), Vec2(0, -1)}));
  EXPECT_EQ(s.polygon().recession, RecessionKind::Line);
  Polygon sq = body_from_cut(qv({2, 2, 2, 2}), inst).polygon();
  EXPECT_EQ(sq.vertices.size(), 4u);
  EXPECT_EQ(as_set(sq.vertices),
            as_set({v("1", "1/2"), v("1/2", "1"), v("0", "1/2"), v("1/2", "0")}));
  Polygon dm = body_from_cut(qv({1, 1, 1, 1}), inst).polygon();
  EXPECT_EQ(as_set(dm.vertices),
            as_set({v("3/2", "1/2"), v("1/2", "3/2"), v("-1/2", "1/2"), v("1/2", "-1/2")}));
  CornerInstance half(kHalf, {Vec2(1, 0), Vec2(0, 1)});
  EXPECT_THROW(body_from_cut(qv({1, 1}), half), PreconditionError);
}

TEST(IsLatticeFree, Examples) {
  EXPECT_TRUE(is_lattice_free({Vec2(0, 0), Vec2(1, 0), Vec2(1, 1), Vec2(0, 1)}, {}).lattice_free);
  auto s = is_lattice_free({v("-1/2", "0"), v("3/2", "0")}, {Vec2(0, 1), Vec2(0, -1)});
  EXPECT_FALSE(s.lattice_free);
  ASSERT_TRUE(s.witness);
  EXPECT_TRUE(s.witness->x == 0 || s.witness->x == 1);
  EXPECT_TRUE(is_lattice_free({Vec2(0, 0), Vec2(2, 0), Vec2(0, 2)}, {}).lattice_free);
  auto c = is_lattice_free({kHalf}, {Vec2(1, 0), Vec2(0, 1)});
  EXPECT_FALSE(c.lattice_free);
}

TEST(MaximalSuperset, Examples) {
  Polygon seg = polygon_from_vrep({Vec2(0, 0), Vec2(1, 1), kHalf}, {});
  Body m = maximal_superset(seg, kHalf);
  EXPECT_TRUE(is_maximal_tag(classify(m).tag));
  EXPECT_TRUE(m.polygon().contains(Vec2(0, 0)));
  EXPECT_TRUE(m.polygon().contains(Vec2(1, 1)));

  Body s = maximal_superset({Vec2(0, 0), Vec2(1, 0), Vec2(1, 1), Vec2(0, 1)}, {}, kHalf);
  BodyClass cs = classify(s);
  EXPECT_EQ(cs.tag, BodyTag::Split);
  EXPECT_TRUE(cs.split_normal == Vec2(1, 0) || cs.split_normal == Vec2(0, 1) ||
              cs.split_normal == Vec2(-1, 0) || cs.split_normal == Vec2(0, -1));
  // deterministic
  EXPECT_EQ(s, maximal_superset({Vec2(0, 0), Vec2(1, 0), Vec2(1, 1), Vec2(0, 1)}, {}, kHalf));

  EXPECT_EQ(maximal_superset(triangle()), triangle());
}

TEST(MaximalSuperset, RandomRegionsBecomeMaximal) {
  Rng rng(77);
  std::map<BodyTag, int> seen;
  for (int trial = 0; trial < 150; ++trial) {
    Vec2 f = rng.non_lattice_point(4);
    Polygon p = random_small_region(rng, f);
    Body m = maximal_superset(p, f);
    BodyClass c = classify(m);
    ASSERT_TRUE(is_maximal_tag(c.tag)) << trial << " " << to_string(c.tag) << " " << c.anomaly;
    EXPECT_TRUE(c.anomaly.empty());
    ++seen[c.tag];
    for (const auto& x : p.vertices) EXPECT_TRUE(m.polygon().contains(x));
    for (const auto& e : m.polygon().edges)
      EXPECT_FALSE(lattice_points_on_edge(e, 1).empty());
  }
  EXPECT_GT(seen.size(), 1u);
}

TEST(PushLevel, SlabSearchMatchesLinearScan) {
  Rng rng(31);
  int hits = 0, misses = 0;
  for (int trial = 0; trial < 300; ++trial) {
    Vec2 f = rng.non_lattice_point(4);
    Vec2 n = primitive_direction(rng.nonzero_vec(6));
    // thin strip roughly along n, plus a few random halfplanes through f's side
    std::vector<HalfPlane> hs;
    Vec2 a1 = perp(n) + rng.rational(4) / 64 * n, a2 = -perp(n) + rng.rational(4) / 64 * n;
    hs.push_back({a1, dot(a1, f) + make_rational(rng.uniform(1, 6), 7)});
    hs.push_back({a2, dot(a2, f) + make_rational(rng.uniform(1, 6), 7)});
    for (long extra = rng.uniform(0, 2); extra > 0; --extra) {
      Vec2 a = rng.nonzero_vec(5);
      if (sgn(dot(a, n)) > 0) a = -a;
      hs.push_back({a, dot(a, f) + rng.rational(3) * rng.rational(3) + 3});
    }
    Integer lo = ceil(dot(n, f)), hi = lo + rng.uniform(0, 400);
    std::optional<Integer> expect;
    for (Integer h = lo; h <= hi && !expect; ++h)
      if (detail::lattice_point_on_level(n, h, hs)) expect = h;
    auto got = detail::lowest_level(n, lo, hi, hs);
    ASSERT_EQ(got.has_value(), expect.has_value()) << trial;
    if (got) {
      EXPECT_EQ(*got, *expect) << trial;
    }
    (got ? hits : misses)++;
  }
  EXPECT_GT(hits, 30);
  EXPECT_GT(misses, 10);
}

TEST(GaugeProperties, HomogeneitySubadditivityUnitLevel) {
  Rng rng(5);
  int checked = 0;
  while (checked < 300) {
    Vec2 f = rng.non_lattice_point(4);
    Body b = maximal_superset(random_small_region(rng, f), f);
    for (int s = 0; s < 5; ++s) {
      Vec2 r = rng.nonzero_vec(), r2 = rng.nonzero_vec();
      Rational lam = abs(rng.rational());
      EXPECT_EQ(gauge(b, lam * r), lam * gauge(b, r));
      EXPECT_LE(gauge(b, r + r2), gauge(b, r) + gauge(b, r2));
      Rational psi = gauge(b, r);
      if (sgn(psi) > 0) {
        Vec2 p = f + r / psi;
        EXPECT_EQ(gauge(b, p - f), 1);
        auto hit = ray_incidence(b, {r})[0];
        for (std::size_t i = 0; i < b.n(); ++i) {
          bool tight = std::find(hit.tight.begin(), hit.tight.end(), i) != hit.tight.end();
          EXPECT_EQ(b.halfplane(i).on_boundary(p), tight);
        }
      }
      ++checked;
    }
  }
}

TEST(CutBodyRoundTrip, MinimalCuts) {
  Rng rng(12);
  for (int trial = 0; trial < 60; ++trial) {
    CornerInstance inst = cornercut::testing::random_instance(rng, rng.uniform(3, 6), 4);
    Body b = maximal_superset(random_small_region(rng, inst.f), inst.f);
    QVec g = cut_from_body(b, inst);
    Polygon mg = body_from_cut(g, inst).polygon();
    Body back(inst.f, rows_from_polygon(mg, inst.f));
    EXPECT_EQ(cut_from_body(back, inst), g);
  }
}
