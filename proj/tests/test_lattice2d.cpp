#include <gtest/gtest.h>

#include <numeric>

#include "cornercut/lattice2d.hpp"
#include "support/oracle.hpp"
#include "support/random_instances.hpp"

using namespace cornercut;
using cornercut::testing::Rng;

namespace {

Rational q(const char* s) { return parse_rational(s); }
Vec2 v(const char* a, const char* b) { return {q(a), q(b)}; }

std::vector<Vec2> sorted(std::vector<Vec2> x) {
  std::sort(x.begin(), x.end());
  return x;
}

}  // namespace

TEST(ConeHull, Examples) {
  EXPECT_EQ(cone_integer_hull(v("1/2", "1/2"), Vec2(1, 0), Vec2(0, 1)).vertices,
            std::vector<Vec2>{Vec2(1, 1)});
  EXPECT_EQ(cone_integer_hull(v("1/2", "1/2"), Vec2(1, 0), Vec2(1, 1)).vertices,
            std::vector<Vec2>{Vec2(1, 1)});
  EXPECT_EQ(cone_integer_hull(v("1/4", "1/4"), Vec2(2, 1), Vec2(1, 2)).vertices,
            std::vector<Vec2>{Vec2(1, 1)});
  EXPECT_THROW(cone_integer_hull(v("1/2", "0"), Vec2(1, 1), Vec2(-2, -2)),
               DomainError);
}

TEST(ConeHull, BoxOracleExample) {
  auto brute = oracle::brute_cone_hull(v("1/2", "1/2"), Vec2(1, 0), Vec2(0, 1));
  EXPECT_EQ(brute, std::vector<Vec2>{Vec2(1, 1)});
}

TEST(ConeHull, MatchesBoxOracleOnRandomCones) {
  Rng rng(2024);
  int done = 0;
  while (done < 300) {
    Vec2 f = rng.vec(8), r1 = rng.nonzero_vec(8), r2 = rng.nonzero_vec(8);
    if (sgn(cross(r1, r2)) == 0) continue;
    auto hull = cone_integer_hull(f, r1, r2);
    EXPECT_EQ(sorted(hull.vertices), sorted(oracle::brute_cone_hull(f, r1, r2)))
        << "f=" << to_string(f) << " r1=" << to_string(r1)
        << " r2=" << to_string(r2);
    // ordered from the r1 side to the r2 side: distance to the r1 line grows
    int o = sgn(cross(r1, r2));
    for (std::size_t i = 1; i < hull.vertices.size(); ++i)
      EXPECT_GT(o * cross(r1, hull.vertices[i] - hull.vertices[i - 1]), 0);
    ++done;
  }
}

TEST(ConeHull, LongThinCones) {
  Rng rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    Vec2 f = rng.vec(30);
    Vec2 r1 = rng.integer_vec(40), r2 = rng.integer_vec(40);
    if (r1.is_zero() || r2.is_zero() || sgn(cross(r1, r2)) == 0) continue;
    EXPECT_EQ(sorted(cone_integer_hull(f, r1, r2).vertices),
              sorted(oracle::brute_cone_hull(f, r1, r2)));
  }
}

TEST(BasisCoefficients, Examples) {
  std::vector<Vec2> rays{Vec2(1, 0), Vec2(0, 1)};
  auto s = basis_coefficients(v("1/2", "1/2"), {0, 1}, rays, Vec2(1, 1));
  ASSERT_TRUE(s);
  EXPECT_EQ(s->s1, q("1/2"));
  EXPECT_EQ(s->s2, q("1/2"));
  EXPECT_FALSE(basis_coefficients(v("1/2", "1/2"), {0, 1}, rays, Vec2(0, 1)));
  EXPECT_FALSE(basis_coefficients(v("1/2", "1/2"), {0, 1}, rays, Vec2(1, 0)));
  std::vector<Vec2> dep{Vec2(1, 0), Vec2(-2, 0)};
  EXPECT_THROW(basis_coefficients(v("1/2", "1/2"), {0, 1}, dep, Vec2(1, 1)),
               DomainError);
}

TEST(ExtXI, Examples) {
  Vec2 f = v("1/2", "1/2");
  std::vector<Vec2> rays{Vec2(1, 0), Vec2(0, 1), Vec2(-1, 0), Vec2(0, -1)};
  EXPECT_EQ(ext_XI(f, {0, 1}, rays), std::vector<Vec2>{Vec2(1, 1)});
  EXPECT_EQ(ext_XI(f, {2, 3}, rays), std::vector<Vec2>{Vec2(0, 0)});
  EXPECT_EQ(ext_XI(f, {0, 3}, rays), std::vector<Vec2>{Vec2(1, 0)});
}

TEST(ExtXI, VerticesHaveCoefficients) {
  Rng rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    Vec2 f = rng.non_lattice_point();
    std::vector<Vec2> rays{rng.nonzero_vec(), rng.nonzero_vec()};
    if (sgn(cross(rays[0], rays[1])) == 0) continue;
    auto ext = ext_XI(f, {0, 1}, rays);
    ASSERT_FALSE(ext.empty());
    for (const auto& x : ext) {
      auto s = basis_coefficients(f, {0, 1}, rays, x);
      ASSERT_TRUE(s);
      EXPECT_EQ(s->x, x);
      EXPECT_EQ(f + s->s1 * rays[0] + s->s2 * rays[1], x);
      // not in the hull of the others plus the cone
      std::vector<Vec2> others;
      for (const auto& y : ext)
        if (y != x) others.push_back(y);
      if (others.empty()) continue;
      Polygon rest = polygon_from_vrep(others, rays);
      EXPECT_FALSE(rest.contains(x));
    }
  }
}

TEST(InteriorLatticePoint, Examples) {
  Vec2 f = v("1/2", "1/2");
  // diamond
  EXPECT_FALSE(interior_lattice_point(
      {v("3/2", "1/2"), v("1/2", "3/2"), v("-1/2", "1/2"), v("1/2", "-1/2")}, {}));
  // strip -1/2 <= x1 <= 3/2
  auto w = interior_lattice_point({v("-1/2", "0"), v("3/2", "0")},
                                  {Vec2(0, 1), Vec2(0, -1)});
  ASSERT_TRUE(w);
  EXPECT_TRUE(w->x == 0 || w->x == 1);
  EXPECT_TRUE(w->is_integral());
  // unit square
  EXPECT_FALSE(interior_lattice_point(
      {Vec2(0, 0), Vec2(1, 0), Vec2(1, 1), Vec2(0, 1)}, {}));
  EXPECT_THROW(interior_lattice_point({f}, {Vec2(1, 0), Vec2(0, 1)}),
               DomainError);
  (void)f;
}

TEST(InteriorLatticePoint, MatchesBoxScan) {
  Rng rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Vec2> pts;
    int n = rng.uniform(1, 5);
    for (int i = 0; i < n; ++i) pts.push_back(rng.vec(4));
    std::vector<Vec2> rays;
    int mode = trial % 3;  // bounded, ray, line
    Vec2 d = rng.integer_vec(3);
    if (d.is_zero()) d = Vec2(1, 2);
    if (mode >= 1) rays.push_back(d);
    if (mode == 2) rays.push_back(-d);
    Polygon p = polygon_from_vrep(pts, rays);
    auto w = interior_lattice_point(p);
    if (w) {
      EXPECT_TRUE(w->is_integral());
      EXPECT_TRUE(p.contains_strict(*w));
    }
    // box scan: for unbounded regions the box spans one period along d
    std::vector<Vec2> box = pts;
    if (mode >= 1)
      for (const auto& x : pts) box.push_back(x + d), box.push_back(x - d * Rational(mode - 1));
    Rational x0 = box[0].x, x1 = x0, y0 = box[0].y, y1 = y0;
    for (const auto& b : box) {
      x0 = std::min(x0, b.x);
      x1 = std::max(x1, b.x);
      y0 = std::min(y0, b.y);
      y1 = std::max(y1, b.y);
    }
    bool found = false;
    for (Integer x = ceil(x0); Rational(x) <= x1 && !found; ++x)
      for (Integer y = ceil(y0); Rational(y) <= y1 && !found; ++y)
        if (p.contains_strict(Vec2{Rational(x), Rational(y)})) found = true;
    EXPECT_EQ(found, w.has_value()) << trial;
  }
}

TEST(PrimitiveFacetVector, Examples) {
  EXPECT_EQ(primitive_facet_vector(Vec2(0, 0), Vec2(2, 0)), Vec2(1, 0));
  EXPECT_EQ(primitive_facet_vector(Vec2(0, 0), Vec2(2, 4)), Vec2(1, 2));
  EXPECT_EQ(primitive_facet_vector(Vec2(1, 1), Vec2(1, -3)), Vec2(0, 1));
  EXPECT_THROW(primitive_facet_vector(Vec2(1, 1), Vec2(1, 1)), DomainError);
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    Vec2 a = rng.vec(), b = rng.vec();
    if (a == b) continue;
    Vec2 p = primitive_facet_vector(a, b);
    EXPECT_EQ(gcd(p.x.get_num(), p.y.get_num()), 1);
    EXPECT_EQ(sgn(cross(p, b - a)), 0);
  }
}

TEST(LatticePoints, OnSegment) {
  auto pts = lattice_points_on_segment(v("-1/2", "0"), v("5/2", "0"));
  EXPECT_EQ(pts, (std::vector<Vec2>{Vec2(0, 0), Vec2(1, 0), Vec2(2, 0)}));
  EXPECT_TRUE(lattice_points_on_segment(v("0", "1/2"), v("3", "1/2")).empty());
  pts = lattice_points_on_segment(Vec2(0, 0), Vec2(4, 2));
  EXPECT_EQ(pts.size(), 3u);
}
