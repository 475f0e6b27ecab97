#ifndef CORNERCUT_LINALG_HPP_
#define CORNERCUT_LINALG_HPP_

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cornercut/rational.hpp"

namespace cornercut {

using QVec = std::vector<Rational>;

inline QVec make_qvec(std::initializer_list<const char*> entries) {
  QVec v;
  for (const char* e : entries) v.push_back(parse_rational(e));
  return v;
}

inline Rational dot(const QVec& a, const QVec& b) {
  if (a.size() != b.size()) throw UsageError("dot: dimension mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline bool is_zero(const QVec& v) {
  return std::all_of(v.begin(), v.end(),
                     [](const Rational& x) { return sgn(x) == 0; });
}

inline std::string to_string(const QVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += to_string(v[i]);
  }
  return s + ")";
}

// Dense row-major rational matrix.
class QMat {
 public:
  QMat() = default;
  QMat(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}
  QMat(std::initializer_list<std::initializer_list<Rational>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    for (const auto& row : init) {
      if (row.size() != cols_) throw UsageError("QMat: ragged initializer");
      for (const auto& x : row) data_.push_back(x);
    }
  }
  static QMat from_rows(const std::vector<QVec>& rows, std::size_t cols = 0) {
    std::size_t c = rows.empty() ? cols : rows.front().size();
    QMat m(rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != c) throw UsageError("QMat: ragged rows");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }
  static QMat identity(std::size_t n) {
    QMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  const Rational& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }
  QVec row(std::size_t i) const {
    return QVec(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }
  void set_row(std::size_t i, const QVec& v) {
    if (v.size() != cols_) throw UsageError("QMat::set_row: dimension");
    std::copy(v.begin(), v.end(), data_.begin() + i * cols_);
  }
  void append_row(const QVec& v) {
    if (rows_ == 0 && cols_ == 0) cols_ = v.size();
    if (v.size() != cols_) throw UsageError("QMat::append_row: dimension");
    data_.insert(data_.end(), v.begin(), v.end());
    ++rows_;
  }
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j)
      std::swap(data_[a * cols_ + j], data_[b * cols_ + j]);
  }
  QMat transpose() const {
    QMat t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }
  QVec operator*(const QVec& x) const {
    if (x.size() != cols_) throw UsageError("QMat*QVec: dimension mismatch");
    QVec y(rows_, Rational(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) y[i] += (*this)(i, j) * x[j];
    return y;
  }
  QMat operator*(const QMat& o) const {
    if (o.rows_ != cols_) throw UsageError("QMat*QMat: dimension mismatch");
    QMat p(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        if (sgn((*this)(i, k)) == 0) continue;
        for (std::size_t j = 0; j < o.cols_; ++j)
          p(i, j) += (*this)(i, k) * o(k, j);
      }
    return p;
  }
  bool operator==(const QMat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> data_;
};

namespace detail {

// Clears denominators row by row; returns an integer matrix.
inline std::vector<std::vector<Integer>> integer_rows(const QMat& a,
                                                      Rational* scale) {
  std::vector<std::vector<Integer>> m(a.rows(),
                                      std::vector<Integer>(a.cols()));
  Rational s = 1;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Integer l = 1;
    for (std::size_t j = 0; j < a.cols(); ++j) l = lcm(l, a(i, j).get_den());
    for (std::size_t j = 0; j < a.cols(); ++j)
      m[i][j] = a(i, j).get_num() * (l / a(i, j).get_den());
    s *= l;
  }
  if (scale) *scale = s;
  return m;
}

// Bareiss elimination in place; returns the rank and the sign of the
// row permutation applied. For square full-rank input the last pivot is
// the determinant of the (row-permuted) integer matrix.
inline std::size_t bareiss(std::vector<std::vector<Integer>>& m,
                           std::size_t cols, int* perm_sign,
                           Integer* last_pivot) {
  const std::size_t n = m.size();
  std::size_t r = 0;
  int sign = 1;
  Integer prev = 1;
  for (std::size_t c = 0; c < cols && r < n; ++c) {
    std::size_t p = r;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) continue;
    if (p != r) {
      std::swap(m[p], m[r]);
      sign = -sign;
    }
    for (std::size_t i = r + 1; i < n; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]);
        mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(),
                     prev.get_mpz_t());
      }
      m[i][c] = 0;
    }
    prev = m[r][c];
    ++r;
  }
  if (perm_sign) *perm_sign = sign;
  if (last_pivot) *last_pivot = prev;
  return r;
}

}  // namespace detail

// Exact rank by fraction-free elimination.
inline std::size_t rank(const QMat& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  auto m = detail::integer_rows(a, nullptr);
  return detail::bareiss(m, a.cols(), nullptr, nullptr);
}

inline Rational det(const QMat& a) {
  if (a.rows() != a.cols()) throw UsageError("det: matrix must be square");
  if (a.rows() == 0) return Rational(1);
  Rational scale;
  auto m = detail::integer_rows(a, &scale);
  int sign = 1;
  Integer piv;
  std::size_t r = detail::bareiss(m, a.cols(), &sign, &piv);
  if (r < a.rows()) return Rational(0);
  Rational d(piv);
  d /= scale;
  return sign > 0 ? d : Rational(-d);
}

// Reduced row echelon form; returns pivot columns.
inline std::vector<std::size_t> rref(QMat& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && sgn(m(p, c)) == 0) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(p, r);
    Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || sgn(m(i, c)) == 0) continue;
      Rational f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

// Solution of Ax = b for square nonsingular A; empty when A is singular.
inline std::optional<QVec> solve_linear(const QMat& a, const QVec& b) {
  if (a.rows() != a.cols())
    throw UsageError("solve_linear: matrix must be square");
  if (b.size() != a.rows())
    throw UsageError("solve_linear: right-hand side dimension mismatch");
  const std::size_t n = a.rows();
  QMat aug(n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n) = b[i];
  }
  auto piv = rref(aug);
  if (piv.size() < n || (n > 0 && piv.back() >= n)) return std::nullopt;
  QVec x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = aug(i, n);
  return x;
}

// Basis of {x : Ax = 0}, one vector per free column.
inline std::vector<QVec> null_space(const QMat& a) {
  QMat m = a;
  auto piv = rref(m);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : piv) is_pivot[c] = true;
  std::vector<QVec> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    QVec v(a.cols(), Rational(0));
    v[free] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace cornercut

#endif  // CORNERCUT_LINALG_HPP_
