#ifndef CORNERCUT_VEC2_HPP_
#define CORNERCUT_VEC2_HPP_

#include <string>
#include <utility>

#include "cornercut/linalg.hpp"
#include "cornercut/rational.hpp"

namespace cornercut {

// A point or direction of the plane with rational coordinates.
struct Vec2 {
  Rational x = 0, y = 0;

  Vec2() = default;
  Vec2(Rational a, Rational b) : x(std::move(a)), y(std::move(b)) {}
  Vec2(long a, long b) : x(a), y(b) {}

  friend Vec2 operator+(const Vec2& a, const Vec2& b) {
    return {a.x + b.x, a.y + b.y};
  }
  friend Vec2 operator-(const Vec2& a, const Vec2& b) {
    return {a.x - b.x, a.y - b.y};
  }
  friend Vec2 operator-(const Vec2& a) { return {-a.x, -a.y}; }
  friend Vec2 operator*(const Rational& t, const Vec2& a) {
    return {t * a.x, t * a.y};
  }
  friend Vec2 operator*(const Vec2& a, const Rational& t) { return t * a; }
  friend Vec2 operator/(const Vec2& a, const Rational& t) {
    return {a.x / t, a.y / t};
  }
  Vec2& operator+=(const Vec2& o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  Vec2& operator-=(const Vec2& o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  friend bool operator==(const Vec2& a, const Vec2& b) {
    return a.x == b.x && a.y == b.y;
  }
  friend bool operator!=(const Vec2& a, const Vec2& b) { return !(a == b); }
  // Lexicographic order, used for deterministic sorting.
  friend bool operator<(const Vec2& a, const Vec2& b) {
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
  }
  bool is_zero() const { return sgn(x) == 0 && sgn(y) == 0; }
  bool is_integral() const { return is_integer(x) && is_integer(y); }
};

inline Rational dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline Rational cross(const Vec2& a, const Vec2& b) {
  return a.x * b.y - a.y * b.x;
}
// Counter-clockwise rotation by a right angle.
inline Vec2 perp(const Vec2& a) { return {-a.y, a.x}; }

inline Vec2 to_vec2(const QVec& v) {
  if (v.size() != 2) throw UsageError("expected a 2-vector");
  return {v[0], v[1]};
}
inline QVec to_qvec(const Vec2& v) { return {v.x, v.y}; }

inline std::string to_string(const Vec2& v) {
  return "(" + to_string(v.x) + "," + to_string(v.y) + ")";
}

// Half-plane index for angular sorting: 0 for angles in [0, pi), 1 otherwise.
inline int angle_half(const Vec2& v) {
  return (sgn(v.y) > 0 || (sgn(v.y) == 0 && sgn(v.x) > 0)) ? 0 : 1;
}

// Strict angular order of nonzero vectors by polar angle in [0, 2pi).
inline bool angle_less(const Vec2& a, const Vec2& b) {
  int ha = angle_half(a), hb = angle_half(b);
  if (ha != hb) return ha < hb;
  return sgn(cross(a, b)) > 0;
}

inline bool same_direction(const Vec2& a, const Vec2& b) {
  return sgn(cross(a, b)) == 0 && sgn(dot(a, b)) > 0;
}

// Integer vector with coprime coordinates and the same direction as v.
inline Vec2 primitive_direction(const Vec2& v) {
  if (v.is_zero()) throw DomainError("primitive direction of the zero vector");
  Integer l = lcm(v.x.get_den(), v.y.get_den());
  Integer a = v.x.get_num() * (l / v.x.get_den());
  Integer b = v.y.get_num() * (l / v.y.get_den());
  Integer g = gcd(a, b);
  return {Rational(a / g), Rational(b / g)};
}

}  // namespace cornercut

#endif  // CORNERCUT_VEC2_HPP_
