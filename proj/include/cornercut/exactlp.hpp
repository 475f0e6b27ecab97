#ifndef CORNERCUT_EXACTLP_HPP_
#define CORNERCUT_EXACTLP_HPP_

#include <cstddef>
#include <optional>
#include <vector>

#include "cornercut/linalg.hpp"

namespace cornercut {

// min c.x  s.t.  A x >= b,  x >= 0.
struct LinearProgram {
  QVec c;
  QMat A;
  QVec b;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  QVec x;
  Rational value;
  std::vector<std::size_t> tight_rows;    // rows with A_i x = b_i
  std::vector<std::size_t> tight_bounds;  // variables at zero
  QVec dual;                              // y >= 0 with A^T y <= c, b.y = value
};

namespace detail {

// Dictionary simplex (maximization) with Bland's rule. Variables 0..n-1 are
// structural, n..n+m-1 slacks, n+m the phase-one artificial.
class Dictionary {
 public:
  Dictionary(const LinearProgram& lp, bool artificial)
      : n_(lp.A.cols()), m_(lp.A.rows()) {
    std::size_t cols = n_ + (artificial ? 1 : 0);
    nonbasic_.resize(cols);
    for (std::size_t j = 0; j < n_; ++j) nonbasic_[j] = j;
    if (artificial) nonbasic_[n_] = n_ + m_;
    basic_.resize(m_);
    konst_.resize(m_);
    coef_.assign(m_, QVec(cols, Rational(0)));
    // w_i = -b_i + sum_j A_ij x_j (+ x0)
    for (std::size_t i = 0; i < m_; ++i) {
      basic_[i] = n_ + i;
      konst_[i] = -lp.b[i];
      for (std::size_t j = 0; j < n_; ++j) coef_[i][j] = lp.A(i, j);
      if (artificial) coef_[i][n_] = 1;
    }
    obj_.assign(cols, Rational(0));
  }

  std::size_t n_, m_;
  std::vector<std::size_t> basic_, nonbasic_;
  QVec konst_;
  std::vector<QVec> coef_;
  Rational obj_const_ = 0;
  QVec obj_;

  void pivot(std::size_t row, std::size_t col) {
    Rational a = coef_[row][col];
    // solve row for the entering variable
    Rational inv = Rational(-1) / a;
    QVec& r = coef_[row];
    konst_[row] *= inv;
    for (std::size_t j = 0; j < r.size(); ++j)
      if (j != col) r[j] *= inv;
    r[col] = Rational(-1) * inv;  // coefficient of the leaving variable
    std::swap(basic_[row], nonbasic_[col]);
    auto substitute = [&](Rational& k, QVec& c) {
      Rational t = c[col];
      if (sgn(t) == 0) return;
      k += t * konst_[row];
      for (std::size_t j = 0; j < c.size(); ++j)
        c[j] = (j == col) ? Rational(t * r[col]) : Rational(c[j] + t * r[j]);
    };
    for (std::size_t i = 0; i < m_; ++i)
      if (i != row) substitute(konst_[i], coef_[i]);
    substitute(obj_const_, obj_);
  }

  // Runs Bland's rule; returns false if unbounded.
  bool optimize() {
    while (true) {
      std::optional<std::size_t> col;
      for (std::size_t j = 0; j < obj_.size(); ++j)
        if (sgn(obj_[j]) > 0 && (!col || nonbasic_[j] < nonbasic_[*col])) col = j;
      if (!col) return true;
      std::optional<std::size_t> row;
      Rational best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (sgn(coef_[i][*col]) >= 0) continue;
        Rational ratio = konst_[i] / -coef_[i][*col];
        if (!row || ratio < best || (ratio == best && basic_[i] < basic_[*row])) {
          row = i;
          best = ratio;
        }
      }
      if (!row) return false;
      pivot(*row, *col);
    }
  }

  QVec structural_values() const {
    QVec x(n_, Rational(0));
    for (std::size_t i = 0; i < m_; ++i)
      if (basic_[i] < n_) x[basic_[i]] = konst_[i];
    return x;
  }
};

}  // namespace detail

inline LpResult solve_lp(const LinearProgram& lp) {
  const std::size_t n = lp.A.cols(), m = lp.A.rows();
  if (lp.c.size() != n || lp.b.size() != m)
    throw UsageError("solve_lp: dimension mismatch");
  LpResult res;
  bool need_phase1 = false;
  for (const auto& bi : lp.b)
    if (sgn(bi) > 0) need_phase1 = true;

  detail::Dictionary d(lp, need_phase1);
  if (need_phase1) {
    // maximize -x0; first pivot makes the dictionary feasible
    d.obj_[n] = -1;
    std::size_t worst = 0;
    for (std::size_t i = 1; i < m; ++i)
      if (d.konst_[i] < d.konst_[worst] ||
          (d.konst_[i] == d.konst_[worst] && d.basic_[i] < d.basic_[worst]))
        worst = i;
    d.pivot(worst, n);
    d.optimize();
    if (sgn(d.obj_const_) < 0) {
      res.status = LpStatus::Infeasible;
      return res;
    }
    // drive x0 out of the basis if it is still basic (at value zero)
    std::size_t art = n + m;
    for (std::size_t i = 0; i < d.basic_.size(); ++i) {
      if (d.basic_[i] != art) continue;
      bool moved = false;
      for (std::size_t j = 0; j < d.nonbasic_.size() && !moved; ++j)
        if (sgn(d.coef_[i][j]) != 0) {
          d.pivot(i, j);
          moved = true;
        }
      if (!moved) {
        // x0 is identically zero here: the row carries no constraint
        d.basic_.erase(d.basic_.begin() + i);
        d.konst_.erase(d.konst_.begin() + i);
        d.coef_.erase(d.coef_.begin() + i);
        --d.m_;
        d.nonbasic_.push_back(art);
        for (auto& row : d.coef_) row.push_back(Rational(0));
      }
      break;
    }
    // drop the x0 column
    std::size_t col = 0;
    while (d.nonbasic_[col] != art) ++col;
    d.nonbasic_.erase(d.nonbasic_.begin() + col);
    for (auto& row : d.coef_) row.erase(row.begin() + col);
    d.obj_.assign(d.nonbasic_.size(), Rational(0));
    d.obj_const_ = 0;
  }
  // objective -c.x in terms of the current nonbasic variables
  std::vector<std::optional<std::size_t>> row_of(n + m + 1);
  for (std::size_t i = 0; i < d.basic_.size(); ++i) row_of[d.basic_[i]] = i;
  for (std::size_t j = 0; j < n; ++j) {
    if (sgn(lp.c[j]) == 0) continue;
    Rational w = -lp.c[j];
    if (row_of[j]) {
      std::size_t i = *row_of[j];
      d.obj_const_ += w * d.konst_[i];
      for (std::size_t t = 0; t < d.nonbasic_.size(); ++t) d.obj_[t] += w * d.coef_[i][t];
    } else {
      for (std::size_t t = 0; t < d.nonbasic_.size(); ++t)
        if (d.nonbasic_[t] == j) d.obj_[t] += w;
    }
  }
  if (!d.optimize()) {
    res.status = LpStatus::Unbounded;
    return res;
  }
  res.status = LpStatus::Optimal;
  res.x = d.structural_values();
  res.value = -d.obj_const_;
  QVec ax = lp.A * res.x;
  for (std::size_t i = 0; i < m; ++i)
    if (ax[i] == lp.b[i]) res.tight_rows.push_back(i);
  for (std::size_t j = 0; j < n; ++j)
    if (sgn(res.x[j]) == 0) res.tight_bounds.push_back(j);
  res.dual.assign(m, Rational(0));
  for (std::size_t t = 0; t < d.nonbasic_.size(); ++t) {
    std::size_t v = d.nonbasic_[t];
    if (v >= n && v < n + m) res.dual[v - n] = -d.obj_[t];
  }
  return res;
}

}  // namespace cornercut

#endif  // CORNERCUT_EXACTLP_HPP_
