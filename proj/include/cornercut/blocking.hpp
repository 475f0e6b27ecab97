#ifndef CORNERCUT_BLOCKING_HPP_
#define CORNERCUT_BLOCKING_HPP_

#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cornercut/bodies.hpp"
#include "cornercut/exactlp.hpp"
#include "cornercut/lattice2d.hpp"

namespace cornercut {

// A cut gamma.s >= 1 with gamma >= 0.
struct Cut {
  QVec gamma;
  std::optional<Body> body;
  std::string provenance = "external";
};

// sum_{j in I} gamma_j s_j(x, I) >= 1 for a basis pair I and x in ext(X(I)).
struct BlockingRow {
  std::pair<std::size_t, std::size_t> I;
  Vec2 x;
  Rational s1, s2;

  Rational eval(const QVec& gamma) const {
    return gamma[I.first] * s1 + gamma[I.second] * s2;
  }
  QVec coefficients(std::size_t k) const {
    QVec c(k, Rational(0));
    c[I.first] += s1;
    c[I.second] += s2;
    return c;
  }
};

struct BlockingSystem {
  CornerInstance instance;
  std::vector<BlockingRow> rows;

  std::size_t k() const { return instance.k(); }
  QMat matrix() const {
    QMat a(rows.size(), k());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      a(i, rows[i].I.first) += rows[i].s1;
      a(i, rows[i].I.second) += rows[i].s2;
    }
    return a;
  }
  std::optional<std::size_t> first_violated(const QVec& gamma) const {
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (rows[i].eval(gamma) < 1) return i;
    return std::nullopt;
  }
  bool satisfied(const QVec& gamma) const { return !first_violated(gamma); }
  std::vector<std::size_t> tight_rows(const QVec& gamma) const {
    std::vector<std::size_t> t;
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (rows[i].eval(gamma) == 1) t.push_back(i);
    return t;
  }
};

inline BlockingSystem build_blocking_system(const CornerInstance& inst) {
  inst.require_full("build_blocking_system");
  BlockingSystem sys{inst, {}};
  const auto& r = inst.rays;
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = i + 1; j < r.size(); ++j) {
      if (sgn(cross(r[i], r[j])) == 0) continue;
      auto ext = ext_XI(inst.f, {i, j}, r);
      std::sort(ext.begin(), ext.end());
      for (const auto& x : ext) {
        auto s = basis_coefficients(inst.f, {i, j}, r, x);
        sys.rows.push_back({{i, j}, x, s->s1, s->s2});
      }
    }
  return sys;
}

inline std::string dump(const BlockingSystem& sys) {
  std::ostringstream os;
  for (const auto& row : sys.rows) {
    os << "I=(" << row.I.first + 1 << "," << row.I.second + 1 << ") x="
       << to_string(row.x) << ": " << to_string(row.s1) << "*g" << row.I.first + 1
       << " + " << to_string(row.s2) << "*g" << row.I.second + 1 << " >= 1\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Separation.

struct Separation {
  bool valid = true;
  std::optional<Vec2> x;  // lattice point interior to M_gamma
  std::pair<std::size_t, std::size_t> I{0, 0};
  Rational value;         // sum_{j in I} gamma_j s_j(x, I) < 1
  std::optional<std::size_t> row;  // violated blocking row
};

namespace detail {

inline void check_gamma(const CornerInstance& inst, const QVec& gamma) {
  if (gamma.size() != inst.k())
    throw UsageError("gamma has " + std::to_string(gamma.size()) +
                     " entries, expected " + std::to_string(inst.k()));
  for (const auto& g : gamma)
    if (sgn(g) < 0) throw DomainError("gamma must be nonnegative");
}

}  // namespace detail

inline Separation separate(const BlockingSystem& sys, const QVec& gamma) {
  const CornerInstance& inst = sys.instance;
  detail::check_gamma(inst, gamma);
  Separation out;
  Polygon m = body_from_cut(gamma, inst, false).polygon();
  auto x = find_interior_lattice_point(m);
  if (!x) return out;
  out.valid = false;
  out.x = x;
  // cheapest basis representation of x - f
  bool found = false;
  for (std::size_t i = 0; i < inst.k(); ++i)
    for (std::size_t j = i + 1; j < inst.k(); ++j) {
      if (sgn(cross(inst.rays[i], inst.rays[j])) == 0) continue;
      auto s = basis_coefficients(inst.f, {i, j}, inst.rays, *x);
      if (!s) continue;
      Rational v = gamma[i] * s->s1 + gamma[j] * s->s2;
      if (!found || v < out.value) {
        out.value = v;
        out.I = {i, j};
        found = true;
      }
    }
  if (!found || out.value >= 1)
    throw std::logic_error("separate: interior point without a violated basis");
  // the linear function is minimized over conv(X(I)) at an extreme point
  std::optional<Rational> best;
  for (std::size_t r = 0; r < sys.rows.size(); ++r) {
    if (sys.rows[r].I != out.I) continue;
    Rational v = sys.rows[r].eval(gamma);
    if (!best || v < *best) {
      best = v;
      out.row = r;
    }
  }
  return out;
}

inline Separation separate(const CornerInstance& inst, const QVec& gamma) {
  return separate(build_blocking_system(inst), gamma);
}

// ---------------------------------------------------------------------------
// Minimum-norm cuts.

enum class Norm { L1, LInf };

struct MinNormCut {
  QVec gamma;
  Rational value;
  LpResult lp;
};

inline MinNormCut min_norm_cut(const BlockingSystem& sys, Norm norm) {
  const std::size_t k = sys.k();
  const std::size_t m = sys.rows.size();
  LinearProgram lp;
  if (norm == Norm::L1) {
    lp.A = sys.matrix();
    lp.b.assign(m, Rational(1));
    lp.c.assign(k, Rational(1));
  } else {
    // variables (gamma, t): min t, rows >= 1, t - gamma_j >= 0
    lp.A = QMat(m + k, k + 1);
    for (std::size_t i = 0; i < m; ++i) {
      lp.A(i, sys.rows[i].I.first) += sys.rows[i].s1;
      lp.A(i, sys.rows[i].I.second) += sys.rows[i].s2;
    }
    for (std::size_t j = 0; j < k; ++j) {
      lp.A(m + j, j) = -1;
      lp.A(m + j, k) = 1;
    }
    lp.b.assign(m + k, Rational(0));
    for (std::size_t i = 0; i < m; ++i) lp.b[i] = 1;
    lp.c.assign(k + 1, Rational(0));
    lp.c[k] = 1;
  }
  MinNormCut out;
  out.lp = solve_lp(lp);
  if (out.lp.status != LpStatus::Optimal)
    throw std::logic_error("min_norm_cut: LP did not reach an optimum");
  out.gamma.assign(out.lp.x.begin(), out.lp.x.begin() + k);
  out.value = out.lp.value;
  return out;
}

inline MinNormCut min_norm_cut(const CornerInstance& inst, Norm norm) {
  return min_norm_cut(build_blocking_system(inst), norm);
}

// Largest fraction p/q >= 0 with q <= max_den on which the monotone
// predicate holds (pred(0) true, eventually false).
template <class Pred>
Rational stern_brocot_max(Pred pred, const Integer& max_den) {
  struct F {
    Integer p, q;
  };
  auto holds = [&](const F& f) { return pred(Rational(f.p, f.q)); };
  F lo{0, 1}, hi{1, 0};
  // largest j with den(a + j*b) <= max_den and holds(a + j*b) == want
  auto largest = [&](const F& a, const F& b, bool want) {
    auto ok = [&](const Integer& j) {
      F c{a.p + j * b.p, a.q + j * b.q};
      return c.q <= max_den && holds(c) == want;
    };
    Integer good = 1, bad = 2;
    while (ok(bad)) {
      good = bad;
      bad *= 2;
    }
    while (bad - good > 1) {
      Integer mid = (good + bad) / 2;
      (ok(mid) ? good : bad) = mid;
    }
    return good;
  };
  while (true) {
    F med{lo.p + hi.p, lo.q + hi.q};
    if (med.q > max_den) break;
    if (holds(med)) {
      Integer j = largest(lo, hi, true);
      lo = {lo.p + j * hi.p, lo.q + j * hi.q};
    } else {
      Integer j = largest(hi, lo, false);
      hi = {hi.p + j * lo.p, hi.q + j * lo.q};
    }
  }
  Rational r(lo.p, lo.q);
  r.canonicalize();
  return r;
}

struct LinfSearch {
  Rational alpha;
  QVec gamma;
  Rational value;  // max_j gamma_j
  Integer denominator_bound;
  std::size_t queries = 0;
};

inline LinfSearch linf_search(const CornerInstance& inst) {
  inst.require_full("linf_search");
  Polygon hull = polygon_from_vrep(inst.rays, {});
  // facets a.y <= 1 of conv{r^j}
  std::vector<Vec2> facets;
  for (const auto& e : hull.edges) facets.push_back(e.h.a / e.h.b);
  LinfSearch out;
  out.denominator_bound = 1;
  for (const auto& a : facets) {
    Integer d = lcm(lcm(a.x.get_den(), a.y.get_den()), dot(a, inst.f).get_den());
    if (d > out.denominator_bound) out.denominator_bound = d;
  }
  auto free = [&](const Rational& alpha) {
    ++out.queries;
    if (sgn(alpha) == 0) return true;
    std::vector<Vec2> pts;
    for (const auto& r : inst.rays) pts.push_back(inst.f + alpha * r);
    return !interior_lattice_point(polygon_from_vrep(pts, {})).has_value();
  };
  out.alpha = stern_brocot_max(free, out.denominator_bound);
  for (const auto& r : inst.rays) {
    Rational g = dot(facets[0], r);
    for (const auto& a : facets) g = std::max(g, Rational(dot(a, r)));
    out.gamma.push_back(g / out.alpha);
  }
  out.value = *std::max_element(out.gamma.begin(), out.gamma.end());
  return out;
}

// ---------------------------------------------------------------------------
// Minimality and extremality.

inline bool is_minimal(const BlockingSystem& sys, const QVec& gamma) {
  detail::check_gamma(sys.instance, gamma);
  if (!sys.satisfied(gamma)) throw DomainError("is_minimal: the cut is not valid");
  std::vector<bool> pinned(gamma.size(), false);
  for (const auto& r : sys.rows) {
    if (r.eval(gamma) != 1) continue;
    if (sgn(r.s1) > 0) pinned[r.I.first] = true;
    if (sgn(r.s2) > 0) pinned[r.I.second] = true;
  }
  for (std::size_t j = 0; j < gamma.size(); ++j)
    if (sgn(gamma[j]) > 0 && !pinned[j]) return false;
  return true;
}

inline bool is_minimal(const CornerInstance& inst, const QVec& gamma) {
  return is_minimal(build_blocking_system(inst), gamma);
}

struct Extremality {
  bool extreme = false;
  std::size_t rank = 0;
  std::vector<std::size_t> tight_rows;
  std::vector<std::size_t> tight_bounds;
};

inline Extremality is_extreme(const BlockingSystem& sys, const QVec& gamma) {
  detail::check_gamma(sys.instance, gamma);
  if (!sys.satisfied(gamma)) throw DomainError("is_extreme: the cut is not valid");
  Extremality e;
  e.tight_rows = sys.tight_rows(gamma);
  QMat t(0, 0);
  for (auto i : e.tight_rows) t.append_row(sys.rows[i].coefficients(sys.k()));
  for (std::size_t j = 0; j < gamma.size(); ++j)
    if (sgn(gamma[j]) == 0) {
      e.tight_bounds.push_back(j);
      QVec u(sys.k(), Rational(0));
      u[j] = 1;
      t.append_row(u);
    }
  e.rank = rank(t);
  e.extreme = e.rank == sys.k();
  return e;
}

inline Extremality is_extreme(const CornerInstance& inst, const QVec& gamma) {
  return is_extreme(build_blocking_system(inst), gamma);
}

}  // namespace cornercut

#endif  // CORNERCUT_BLOCKING_HPP_
