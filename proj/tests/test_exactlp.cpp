#include <gtest/gtest.h>

#include "cornercut/exactlp.hpp"
#include "support/random_instances.hpp"

using namespace cornercut;
using cornercut::testing::Rng;

namespace {

LinearProgram make_lp(QVec c, QMat a, QVec b) { return {std::move(c), std::move(a), std::move(b)}; }

void expect_feasible_vertex(const LinearProgram& lp, const LpResult& r) {
  QVec ax = lp.A * r.x;
  for (std::size_t i = 0; i < ax.size(); ++i) EXPECT_GE(ax[i], lp.b[i]);
  for (const auto& x : r.x) EXPECT_GE(x, 0);
  EXPECT_EQ(dot(lp.c, r.x), r.value);
  QMat tight(0, 0);
  for (auto i : r.tight_rows) tight.append_row(lp.A.row(i));
  for (auto j : r.tight_bounds) {
    QVec e(lp.A.cols(), Rational(0));
    e[j] = 1;
    tight.append_row(e);
  }
  EXPECT_EQ(rank(tight), lp.A.cols());
}

}  // namespace

TEST(SolveLp, Examples) {
  auto lp = make_lp({Rational(1), Rational(1)}, QMat{{1, 1}}, {Rational(1)});
  auto r = solve_lp(lp);
  ASSERT_EQ(r.status, LpStatus::Optimal);
  EXPECT_EQ(r.value, 1);
  EXPECT_EQ(r.x, (QVec{Rational(1), Rational(0)}));
  expect_feasible_vertex(lp, r);

  auto inf = make_lp({Rational(0)}, QMat{{1}, {-1}}, {Rational(1), Rational(0)});
  EXPECT_EQ(solve_lp(inf).status, LpStatus::Infeasible);

  QMat empty(0, 1);
  auto unb = make_lp({Rational(-1)}, empty, {});
  EXPECT_EQ(solve_lp(unb).status, LpStatus::Unbounded);
  EXPECT_THROW(solve_lp(make_lp({Rational(1)}, QMat{{1, 1}}, {Rational(1)})), UsageError);
}

TEST(SolveLp, DegenerateRows) {
  // duplicated and zero rows
  auto lp = make_lp({Rational(1), Rational(2)},
                    QMat{{1, 1}, {1, 1}, {0, 0}, {2, 2}},
                    {Rational(1), Rational(1), Rational(0), Rational(2)});
  auto r = solve_lp(lp);
  ASSERT_EQ(r.status, LpStatus::Optimal);
  EXPECT_EQ(r.value, 1);
  expect_feasible_vertex(lp, r);
}

TEST(SolveLp, StrongDualityOnRandomInstances) {
  Rng rng(17);
  int optimal = 0;
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t n = rng.uniform(1, 6), m = rng.uniform(1, 12);
    QMat a(m, n);
    QVec b(m), c(n);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) a(i, j) = rng.rational(4);
      b[i] = rng.rational(4);
    }
    for (auto& x : c) x = trial % 2 ? abs(rng.rational(4)) : rng.rational(4);
    LinearProgram lp{c, a, b};
    auto r = solve_lp(lp);
    // dual: max b.y s.t. A^T y <= c, y >= 0, as min -b.y s.t. -A^T y >= -c
    QMat at = a.transpose();
    QMat neg(n, m);
    QVec nb(m), nc(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j) neg(i, j) = -at(i, j);
    for (std::size_t i = 0; i < m; ++i) nb[i] = -b[i];
    for (std::size_t j = 0; j < n; ++j) nc[j] = -c[j];
    auto d = solve_lp({nb, neg, nc});
    if (r.status == LpStatus::Optimal) {
      ++optimal;
      expect_feasible_vertex(lp, r);
      ASSERT_EQ(d.status, LpStatus::Optimal);
      EXPECT_EQ(r.value, -d.value);
      // the returned multipliers certify optimality as well
      EXPECT_EQ(dot(b, r.dual), r.value);
      QVec aty = at * r.dual;
      for (std::size_t j = 0; j < n; ++j) EXPECT_LE(aty[j], c[j]);
      for (const auto& y : r.dual) EXPECT_GE(y, 0);
    } else if (r.status == LpStatus::Unbounded) {
      EXPECT_EQ(d.status, LpStatus::Infeasible);
    } else if (d.status == LpStatus::Optimal) {
      ADD_FAILURE() << "primal infeasible but dual optimal";
    }
  }
  EXPECT_GT(optimal, 50);
}
