#pragma once

// Exact integer, rational and mod-p primitives.

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace fthresh {

using BigInt = boost::multiprecision::cpp_int;

/// Malformed textual input; carries the offending position.
class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t pos)
      : std::invalid_argument(what + " at position " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

/// Exact reduced fraction with a positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(int n) : v_(n) {}
  Rational(unsigned n) : v_(n) {}
  Rational(long n) : v_(n) {}
  Rational(long long n) : v_(n) {}
  Rational(unsigned long n) : v_(n) {}
  Rational(unsigned long long n) : v_(n) {}
  Rational(const BigInt& n) : v_(n) {}
  Rational(const BigInt& n, const BigInt& d) {
    if (d == 0) throw std::domain_error("Rational: zero denominator");
    v_ = d < 0 ? boost::multiprecision::cpp_rational(-n, -d) : boost::multiprecision::cpp_rational(n, d);
  }

  BigInt numerator() const { return boost::multiprecision::numerator(v_); }
  BigInt denominator() const { return boost::multiprecision::denominator(v_); }

  bool is_zero() const { return v_ == 0; }
  bool is_integer() const { return denominator() == 1; }
  int sign() const { return v_.sign(); }

  /// Largest integer <= this.
  BigInt floor() const {
    BigInt n = numerator(), d = denominator();
    BigInt q = n / d;  // truncates toward zero
    if (n < 0 && q * d != n) q -= 1;
    return q;
  }
  /// Smallest integer >= this.
  BigInt ceil() const {
    BigInt n = numerator(), d = denominator();
    BigInt q = n / d;
    if (n > 0 && q * d != n) q += 1;
    return q;
  }

  Rational operator-() const { return Rational(-v_); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
  }
  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (a.v_ < b.v_) return std::strong_ordering::less;
    if (a.v_ > b.v_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  /// "5/6", "-7/6", "3". Never a decimal.
  std::string str() const {
    if (is_integer()) return numerator().str();
    return numerator().str() + "/" + denominator().str();
  }

  /// Accepts "n", "-n", "n/d" (d != 0).
  static Rational parse(std::string_view text) {
    auto trim = [](std::string_view s) {
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
      return s;
    };
    auto parse_int = [&](std::string_view s) -> BigInt {
      s = trim(s);
      bool neg = false;
      if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        neg = s.front() == '-';
        s.remove_prefix(1);
      }
      if (s.empty()) throw ParseError("Rational::parse: empty integer in '" + std::string(text) + "'", 0);
      BigInt v = 0;
      for (char ch : s) {
        if (ch < '0' || ch > '9')
          throw ParseError("Rational::parse: bad digit in '" + std::string(text) + "'", 0);
        v = v * 10 + (ch - '0');
      }
      return neg ? BigInt(-v) : v;
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(text));
    return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
  }

 private:
  explicit Rational(boost::multiprecision::cpp_rational v) : v_(std::move(v)) {}
  boost::multiprecision::cpp_rational v_;
};

inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

/// Half-open interval (lo, hi].
class Interval {
 public:
  Interval(Rational lo, Rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (!(lo_ < hi_)) throw std::invalid_argument("Interval: need lo < hi");
  }
  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  bool contains(const Rational& x) const { return lo_ < x && x <= hi_; }
  Interval shifted(const Rational& d) const { return Interval(lo_ + d, hi_ + d); }
  std::string str() const { return "(" + lo_.str() + ", " + hi_.str() + "]"; }
  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  Rational lo_, hi_;
};

// ---------------------------------------------------------------------------
// Integer helpers

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d : {2u, 3u, 5u, 7u, 11u, 13u}) {
    if (n % d == 0) return n == d;
  }
  for (std::uint64_t d = 17; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

/// Primes in [lo, hi], by sieve.
inline std::vector<std::uint32_t> primes_in_range(std::uint32_t lo, std::uint32_t hi) {
  std::vector<std::uint32_t> out;
  if (hi < 2 || lo > hi) return out;
  std::vector<bool> composite(static_cast<std::size_t>(hi) + 1, false);
  for (std::uint64_t i = 2; i * i <= hi; ++i)
    if (!composite[i])
      for (std::uint64_t j = i * i; j <= hi; j += i) composite[j] = true;
  for (std::uint32_t i = std::max<std::uint32_t>(lo, 2); i <= hi; ++i)
    if (!composite[i]) out.push_back(i);
  return out;
}

/// base^exp, throwing std::overflow_error past `limit`.
inline std::uint64_t checked_pow(std::uint64_t base, unsigned exp,
                                 std::uint64_t limit = std::numeric_limits<std::uint32_t>::max()) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && r > limit / base) throw std::overflow_error("checked_pow: result exceeds limit");
    r *= base;
  }
  return r;
}

/// If q == p^e for some e >= 0, returns e.
inline std::optional<unsigned> log_p(std::uint64_t q, std::uint32_t p) {
  if (q == 0 || p < 2) return std::nullopt;
  unsigned e = 0;
  while (q % p == 0) {
    q /= p;
    ++e;
  }
  if (q != 1) return std::nullopt;
  return e;
}

inline std::uint32_t mul_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p);
}

inline std::uint32_t pow_mod(std::uint32_t a, std::uint64_t n, std::uint32_t p) {
  std::uint64_t r = 1 % p, b = a % p;
  while (n) {
    if (n & 1) r = r * b % p;
    b = b * b % p;
    n >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

/// Inverse mod prime p of a nonzero residue.
inline std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  if (a % p == 0) throw std::domain_error("inv_mod: zero has no inverse");
  std::int64_t t = 0, nt = 1, r = p, nr = a % p;
  while (nr) {
    std::int64_t q = r / nr;
    t = std::exchange(nt, t - q * nt);
    r = std::exchange(nr, r - q * nr);
  }
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

/// Reduce an arbitrary integer into [0, p).
inline std::uint32_t reduce_mod(const BigInt& v, std::uint32_t p) {
  BigInt r = v % p;
  if (r < 0) r += p;
  return r.convert_to<std::uint32_t>();
}

/// C(m, k) mod p by Lucas: the product of digit binomials in base p.
inline std::uint32_t binom_mod_p(std::uint64_t m, std::uint64_t k, std::uint32_t p) {
  if (k > m) return 0;
  std::uint64_t result = 1 % p;
  while (k > 0 || m > 0) {
    auto mi = static_cast<std::uint32_t>(m % p);
    auto ki = static_cast<std::uint32_t>(k % p);
    if (ki > mi) return 0;
    // C(mi, ki) with all factors < p, hence invertible.
    std::uint64_t num = 1, den = 1;
    for (std::uint32_t j = 0; j < ki; ++j) {
      num = num * (mi - j) % p;
      den = den * (j + 1) % p;
    }
    result = result * num % p * inv_mod(static_cast<std::uint32_t>(den), p) % p;
    m /= p;
    k /= p;
  }
  return static_cast<std::uint32_t>(result);
}

// ---------------------------------------------------------------------------
// Rational reconstruction

namespace detail {

// Stern-Brocot-simplest rational in an interval of the non-negative reals.
// hi == nullopt means +infinity.
inline Rational simplest_nonneg(const Rational& lo, bool lo_closed,
                                const std::optional<Rational>& hi, bool hi_closed) {
  BigInt n = lo_closed ? lo.ceil() : BigInt(lo.floor() + 1);
  Rational nr(n);
  if (!hi || nr < *hi || (nr == *hi && hi_closed)) return nr;
  // No integer inside: lo and hi share the integer part fl.
  BigInt fl = lo.floor();
  Rational base(fl);
  Rational y_lo = Rational(1) / (*hi - base);
  std::optional<Rational> y_hi;
  if (lo != base) y_hi = Rational(1) / (lo - base);
  Rational y = simplest_nonneg(y_lo, hi_closed, y_hi, lo_closed && y_hi.has_value());
  return base + Rational(1) / y;
}

}  // namespace detail

/// The rational of least denominator in (lo, hi]; ties broken by least numerator.
inline Rational smallest_denominator_in(const Interval& iv) {
  // Any integer present wins with denominator 1.
  BigInt first_int = iv.lo().floor() + 1;
  if (Rational(first_int) <= iv.hi()) return Rational(first_int);
  if (iv.lo().sign() >= 0) return detail::simplest_nonneg(iv.lo(), false, iv.hi(), true);
  // Entirely negative: mirror to [-hi, -lo).
  return -detail::simplest_nonneg(-iv.hi(), true, -iv.lo(), false);
}

// ---------------------------------------------------------------------------
// Univariate polynomials over Q

/// Horner evaluation; coefficients are in ascending degree.
inline Rational eval_rational_poly(const std::vector<Rational>& coeffs, const Rational& x) {
  if (coeffs.empty()) throw std::invalid_argument("eval_rational_poly: empty coefficient list");
  Rational acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

/// Dense univariate polynomial with rational coefficients (ascending degree).
class RationalPoly {
 public:
  RationalPoly() = default;
  explicit RationalPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
  static RationalPoly constant(Rational c) { return RationalPoly({std::move(c)}); }
  static RationalPoly variable() { return RationalPoly({Rational(0), Rational(1)}); }

  const std::vector<Rational>& coefficients() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  Rational operator()(const Rational& x) const {
    return c_.empty() ? Rational(0) : eval_rational_poly(c_, x);
  }

  friend RationalPoly operator+(const RationalPoly& a, const RationalPoly& b) {
    std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
    return RationalPoly(std::move(r));
  }
  friend RationalPoly operator-(const RationalPoly& a) {
    std::vector<Rational> r;
    for (const auto& c : a.c_) r.push_back(-c);
    return RationalPoly(std::move(r));
  }
  friend RationalPoly operator-(const RationalPoly& a, const RationalPoly& b) { return a + (-b); }
  friend RationalPoly operator*(const RationalPoly& a, const RationalPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return RationalPoly(std::move(r));
  }
  friend bool operator==(const RationalPoly&, const RationalPoly&) = default;

  /// Human form in the given variable, highest degree first: "5/6*t - 7/6".
  std::string str(std::string_view var = "t") const {
    if (c_.empty()) return "0";
    std::string out;
    for (int d = degree(); d >= 0; --d) {
      const Rational& c = c_[d];
      if (c.is_zero()) continue;
      Rational mag = c.sign() < 0 ? -c : c;
      if (out.empty()) {
        if (c.sign() < 0) out += "-";
      } else {
        out += c.sign() < 0 ? " - " : " + ";
      }
      if (d == 0) {
        out += mag.str();
      } else {
        if (mag != 1) out += mag.str() + "*";
        out += var;
        if (d > 1) out += "^" + std::to_string(d);
      }
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<Rational> c_;
};

/// Parses expressions such as "(s+1)*(s+5/6)*(s+7/6)" or "s^2 - 3/2*s + 1"
/// in a single variable. Supports + - * ^ (non-negative integer powers),
/// parentheses and rational literals.
inline RationalPoly parse_rational_poly(std::string_view text, std::string_view var = "s") {
  struct Parser {
    std::string_view s;
    std::string_view var;
    std::size_t i = 0;

    [[noreturn]] void fail(const std::string& what) const {
      throw ParseError("parse_rational_poly: " + what, i);
    }
    void skip() {
      while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eat(char c) {
      skip();
      if (i < s.size() && s[i] == c) {
        ++i;
        return true;
      }
      return false;
    }
    BigInt integer() {
      skip();
      std::size_t start = i;
      BigInt v = 0;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) v = v * 10 + (s[i++] - '0');
      if (i == start) fail("expected integer");
      return v;
    }
    RationalPoly expr() {
      RationalPoly acc;
      bool first = true;
      for (;;) {
        skip();
        bool neg = false;
        if (eat('-')) neg = true;
        else if (!first && !eat('+')) break;
        else if (first) eat('+');
        RationalPoly t = term();
        acc = neg ? acc - t : acc + t;
        first = false;
      }
      return acc;
    }
    RationalPoly term() {
      RationalPoly acc = power();
      for (;;) {
        skip();
        if (eat('*')) {
          acc = acc * power();
        } else if (i < s.size() && (s[i] == '(' || s.compare(i, var.size(), var) == 0)) {
          acc = acc * power();  // implicit multiplication
        } else {
          break;
        }
      }
      return acc;
    }
    RationalPoly power() {
      RationalPoly base = atom();
      if (eat('^')) {
        BigInt n = integer();
        if (n > 1000) fail("exponent too large");
        RationalPoly r = RationalPoly::constant(1);
        for (int k = 0; k < n.convert_to<int>(); ++k) r = r * base;
        return r;
      }
      return base;
    }
    RationalPoly atom() {
      skip();
      if (eat('(')) {
        RationalPoly r = expr();
        if (!eat(')')) fail("expected ')'");
        return r;
      }
      if (i < s.size() && s.compare(i, var.size(), var) == 0) {
        i += var.size();
        return RationalPoly::variable();
      }
      if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        BigInt num = integer();
        skip();
        // A '/' directly after an integer literal forms a rational literal.
        if (i < s.size() && s[i] == '/') {
          ++i;
          BigInt den = integer();
          if (den == 0) fail("zero denominator");
          return RationalPoly::constant(Rational(num, den));
        }
        return RationalPoly::constant(Rational(num));
      }
      fail("unexpected input");
    }
  };
  Parser ps{text, var};
  RationalPoly r = ps.expr();
  ps.skip();
  if (ps.i != text.size()) ps.fail("trailing input");
  return r;
}

}  // namespace fthresh
