#ifndef CORNERCUT_RATIONAL_HPP_
#define CORNERCUT_RATIONAL_HPP_

#include <gmpxx.h>

#include <cstddef>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cornercut {

using Integer = mpz_class;
using Rational = mpq_class;

// Thrown when an operation is called outside its mathematical domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Thrown on malformed arguments (dimension mismatch and the like).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Thrown when textual input cannot be parsed.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Integer ceil_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// Remainder in [0, |m|).
inline Integer mod_floor(const Integer& a, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  if (r < 0) r += abs(m);
  return r;
}

inline Integer floor(const Rational& q) {
  return floor_div(q.get_num(), q.get_den());
}

inline Integer ceil(const Rational& q) {
  return ceil_div(q.get_num(), q.get_den());
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Integer lcm(const Integer& a, const Integer& b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

// Returns g = gcd(a, b) >= 0 and sets s, t with s*a + t*b = g.
inline Integer ext_gcd(const Integer& a, const Integer& b, Integer& s,
                       Integer& t) {
  Integer g;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(),
             b.get_mpz_t());
  return g;
}

// sum_{i=0}^{n-1} floor((a*i + b) / m) for m > 0 and arbitrary signs of a, b.
inline Integer floor_sum(Integer n, Integer m, Integer a, Integer b) {
  if (m <= 0) throw UsageError("floor_sum: modulus must be positive");
  Integer ans = 0;
  if (n <= 0) return ans;
  if (a < 0) {
    Integer a2 = mod_floor(a, m);
    ans -= n * (n - 1) / 2 * ((a2 - a) / m);
    a = a2;
  }
  if (b < 0) {
    Integer b2 = mod_floor(b, m);
    ans -= n * ((b2 - b) / m);
    b = b2;
  }
  while (true) {
    if (a >= m) {
      ans += n * (n - 1) / 2 * (a / m);
      a = a % m;
    }
    if (b >= m) {
      ans += n * (b / m);
      b = b % m;
    }
    Integer y_max = a * n + b;
    if (y_max < m) break;
    n = y_max / m;
    b = y_max % m;
    std::swap(m, a);
  }
  return ans;
}

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw DomainError("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// "p/q" or "p"; q == 1 prints without a slash.
inline std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline double to_double(const Rational& q) { return q.get_d(); }

namespace detail {
// Parses an optionally signed decimal integer. Returns the offset of the
// first offending character, or npos on success.
inline std::size_t parse_integer(std::string_view s, Integer& out) {
  std::size_t i = 0;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) i = 1;
  if (i == s.size()) return i;
  for (std::size_t j = i; j < s.size(); ++j)
    if (s[j] < '0' || s[j] > '9') return j;
  std::string digits(s.substr(s[0] == '+' ? 1 : 0));
  out.set_str(digits, 10);
  return std::string_view::npos;
}
constexpr std::size_t kOk = std::string_view::npos;
}  // namespace detail

// Accepts "p", "p/q" and plain decimals such as "0.25" (converted exactly).
inline Rational parse_rational(std::string_view text) {
  std::size_t b = 0, e = text.size();
  while (b < e && (text[b] == ' ' || text[b] == '\t')) ++b;
  while (e > b && (text[e - 1] == ' ' || text[e - 1] == '\t')) --e;
  std::string_view s = text.substr(b, e - b);
  auto fail = [&](std::size_t pos) -> ParseError {
    std::ostringstream os;
    os << "malformed rational '" << std::string(text) << "' at position "
       << (b + pos);
    return ParseError(os.str());
  };
  if (s.empty()) throw fail(0);
  std::size_t slash = s.find('/');
  if (slash != std::string_view::npos) {
    Integer num, den;
    if (auto p = detail::parse_integer(s.substr(0, slash), num); p != detail::kOk)
      throw fail(p);
    if (auto p = detail::parse_integer(s.substr(slash + 1), den); p != detail::kOk)
      throw fail(slash + 1 + p);
    if (den == 0) throw fail(slash + 1);
    return make_rational(num, den);
  }
  std::size_t dot = s.find('.');
  if (dot != std::string_view::npos) {
    std::string_view ip = s.substr(0, dot), fp = s.substr(dot + 1);
    bool neg = !ip.empty() && ip[0] == '-';
    std::size_t off = 0;
    if (!ip.empty() && (ip[0] == '-' || ip[0] == '+')) ip.remove_prefix(1), off = 1;
    Integer whole = 0, frac = 0;
    if (!ip.empty())
      if (auto p = detail::parse_integer(ip, whole); p != detail::kOk)
        throw fail(off + p);
    if (fp.empty() && ip.empty()) throw fail(dot);
    if (!fp.empty()) {
      if (fp[0] == '-' || fp[0] == '+') throw fail(dot + 1);
      if (auto p = detail::parse_integer(fp, frac); p != detail::kOk)
        throw fail(dot + 1 + p);
    }
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, fp.size());
    Rational q = make_rational(whole * scale + frac, scale);
    return neg ? Rational(-q) : q;
  }
  Integer num;
  if (auto p = detail::parse_integer(s, num); p != detail::kOk) throw fail(p);
  return Rational(num);
}

inline std::size_t hash_value(const Rational& q) {
  std::size_t h1 = std::hash<std::string>{}(q.get_num().get_str(16));
  std::size_t h2 = std::hash<std::string>{}(q.get_den().get_str(16));
  return h1 ^ (h2 + 0x9e3779b97f4a7c15ULL + (h1 << 6) + (h1 >> 2));
}

}  // namespace cornercut

#endif  // CORNERCUT_RATIONAL_HPP_
