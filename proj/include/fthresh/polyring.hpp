#pragma once

// Sparse multivariate polynomials over a prime field F_p.

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fthresh/exactnum.hpp"

namespace fthresh {

inline constexpr std::size_t kMaxVars = 8;
inline constexpr std::uint64_t kMaxExponent = std::numeric_limits<std::uint32_t>::max();

class AmbientMismatch : public std::invalid_argument {
 public:
  AmbientMismatch() : std::invalid_argument("polynomials live in different rings") {}
};

// ---------------------------------------------------------------------------
// Monomials

/// Exponent vector X^u with cached total degree. Unused slots are zero.
struct Monomial {
  std::array<std::uint32_t, kMaxVars> e{};
  std::uint64_t deg = 0;

  Monomial() = default;
  static Monomial from(const std::vector<std::uint32_t>& exps) {
    if (exps.size() > kMaxVars) throw std::invalid_argument("too many variables");
    Monomial m;
    for (std::size_t i = 0; i < exps.size(); ++i) {
      m.e[i] = exps[i];
      m.deg += exps[i];
    }
    return m;
  }
  static Monomial var(std::size_t i, std::uint32_t power = 1) {
    Monomial m;
    m.e[i] = power;
    m.deg = power;
    return m;
  }

  std::uint32_t operator[](std::size_t i) const { return e[i]; }
  bool is_one() const { return deg == 0; }

  std::vector<std::uint32_t> exponents(std::size_t n) const { return {e.begin(), e.begin() + n}; }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.e == b.e; }

  /// True iff *this divides other.
  bool divides(const Monomial& other) const {
    if (deg > other.deg) return false;
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (e[i] > other.e[i]) return false;
    return true;
  }

  Monomial operator*(const Monomial& o) const {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      std::uint64_t s = static_cast<std::uint64_t>(e[i]) + o.e[i];
      if (s > kMaxExponent) throw std::overflow_error("monomial exponent overflow");
      r.e[i] = static_cast<std::uint32_t>(s);
    }
    r.deg = deg + o.deg;
    return r;
  }
  /// Requires divisor.divides(*this).
  Monomial operator/(const Monomial& divisor) const {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) r.e[i] = e[i] - divisor.e[i];
    r.deg = deg - divisor.deg;
    return r;
  }
  static Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      r.e[i] = std::max(a.e[i], b.e[i]);
      r.deg += r.e[i];
    }
    return r;
  }
  bool coprime(const Monomial& o) const {
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (e[i] && o.e[i]) return false;
    return true;
  }
  Monomial scaled(std::uint64_t q) const {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      std::uint64_t s = static_cast<std::uint64_t>(e[i]) * q;
      if (s > kMaxExponent) throw std::overflow_error("frobenius: exponent overflow");
      r.e[i] = static_cast<std::uint32_t>(s);
    }
    r.deg = deg * q;
    return r;
  }
};

/// Graded reverse lexicographic comparison: -1, 0, 1.
inline int grevlex_cmp(const Monomial& a, const Monomial& b) {
  if (a.deg != b.deg) return a.deg < b.deg ? -1 : 1;
  for (std::size_t i = kMaxVars; i-- > 0;) {
    if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? -1 : 1;
  }
  return 0;
}

struct GrevlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return grevlex_cmp(a, b) > 0; }
};
struct GrevlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const { return grevlex_cmp(a, b) < 0; }
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (auto x : m.e) h = (h ^ x) * 0x100000001b3ULL;
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

// ---------------------------------------------------------------------------
// Ambient ring

/// F_p[x_1..x_n]; compared by value.
class Ambient {
 public:
  Ambient(std::vector<std::string> variables, std::uint32_t p) {
    if (!is_prime(p)) throw std::invalid_argument("characteristic " + std::to_string(p) + " is not prime");
    if (variables.empty()) throw std::invalid_argument("ring needs at least one variable");
    if (variables.size() > kMaxVars)
      throw std::invalid_argument("at most " + std::to_string(kMaxVars) + " variables supported");
    std::set<std::string> seen;
    for (const auto& v : variables) {
      if (v.empty()) throw std::invalid_argument("empty variable name");
      if (!seen.insert(v).second) throw std::invalid_argument("duplicate variable name '" + v + "'");
    }
    data_ = std::make_shared<const Data>(Data{std::move(variables), p});
  }

  std::uint32_t p() const { return data_->p; }
  std::size_t nvars() const { return data_->vars.size(); }
  const std::vector<std::string>& variables() const { return data_->vars; }

  std::optional<std::size_t> index_of(std::string_view name) const {
    for (std::size_t i = 0; i < nvars(); ++i)
      if (data_->vars[i] == name) return i;
    return std::nullopt;
  }

  Ambient with_prime(std::uint32_t p) const { return Ambient(data_->vars, p); }

  friend bool operator==(const Ambient& a, const Ambient& b) {
    return a.data_ == b.data_ || (a.data_->p == b.data_->p && a.data_->vars == b.data_->vars);
  }

 private:
  struct Data {
    std::vector<std::string> vars;
    std::uint32_t p;
  };
  std::shared_ptr<const Data> data_;
};

// ---------------------------------------------------------------------------
// Polynomials

struct Term {
  Monomial m;
  std::uint32_t c;
  friend bool operator==(const Term&, const Term&) = default;
};

class Polynomial {
 public:
  explicit Polynomial(Ambient amb) : amb_(std::move(amb)) {}

  /// Builds from arbitrary (monomial, coefficient) pairs; sorts and combines.
  Polynomial(Ambient amb, std::vector<Term> terms) : amb_(std::move(amb)), t_(std::move(terms)) {
    normalize();
  }

  static Polynomial constant(const Ambient& amb, std::uint64_t c) {
    Polynomial r(amb);
    if (c % amb.p()) r.t_.push_back({Monomial{}, static_cast<std::uint32_t>(c % amb.p())});
    return r;
  }
  static Polynomial monomial(const Ambient& amb, const Monomial& m, std::uint32_t c = 1) {
    Polynomial r(amb);
    if (c % amb.p()) r.t_.push_back({m, c % amb.p()});
    return r;
  }
  static Polynomial variable(const Ambient& amb, std::size_t i) {
    return monomial(amb, Monomial::var(i));
  }

  const Ambient& ambient() const { return amb_; }
  std::uint32_t p() const { return amb_.p(); }
  /// Terms in descending grevlex order.
  const std::vector<Term>& terms() const { return t_; }
  std::size_t size() const { return t_.size(); }
  bool is_zero() const { return t_.empty(); }
  bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].m.is_one()); }
  bool is_monomial() const { return t_.size() == 1; }

  const Term& leading() const {
    if (t_.empty()) throw std::domain_error("zero polynomial has no leading term");
    return t_.front();
  }
  const Monomial& lm() const { return leading().m; }
  std::uint32_t lc() const { return leading().c; }

  std::uint64_t total_degree() const {
    std::uint64_t d = 0;
    for (const auto& t : t_) d = std::max(d, t.m.deg);
    return d;
  }
  std::uint32_t max_exponent(std::size_t var) const {
    std::uint32_t d = 0;
    for (const auto& t : t_) d = std::max(d, t.m.e[var]);
    return d;
  }

  /// Coefficient of X^m (0 if absent).
  std::uint32_t coeff(const Monomial& m) const {
    auto it = std::lower_bound(t_.begin(), t_.end(), m,
                               [](const Term& t, const Monomial& x) { return grevlex_cmp(t.m, x) > 0; });
    return (it != t_.end() && it->m == m) ? it->c : 0;
  }

  Polynomial monic() const {
    if (is_zero()) return *this;
    return scaled(inv_mod(lc(), p()));
  }
  Polynomial scaled(std::uint32_t c) const {
    c %= p();
    Polynomial r(amb_);
    if (c == 0) return r;
    r.t_.reserve(t_.size());
    for (const auto& t : t_) r.t_.push_back({t.m, mul_mod(t.c, c, p())});
    return r;
  }
  Polynomial shifted(const Monomial& m, std::uint32_t c = 1) const {
    c %= p();
    Polynomial r(amb_);
    if (c == 0) return r;
    r.t_.reserve(t_.size());
    for (const auto& t : t_) r.t_.push_back({t.m * m, mul_mod(t.c, c, p())});
    return r;  // multiplication by a monomial preserves the order
  }

  /// Keeps only the terms satisfying pred; order is preserved.
  template <class Pred>
  Polynomial filtered(Pred pred) const {
    Polynomial r(amb_);
    for (const auto& t : t_)
      if (pred(t.m)) r.t_.push_back(t);
    return r;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.amb_ == b.amb_ && a.t_ == b.t_;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return combine(a, b, 1); }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    return combine(a, b, a.p() - 1);
  }
  friend Polynomial operator-(const Polynomial& a) { return a.scaled(a.p() - 1); }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

  /// a + c * X^m * b, in a single merge pass.
  static Polynomial axpy(const Polynomial& a, std::uint32_t c, const Monomial& m, const Polynomial& b) {
    if (!(a.amb_ == b.amb_)) throw AmbientMismatch();
    const std::uint32_t p = a.p();
    Polynomial r(a.amb_);
    r.t_.reserve(a.t_.size() + b.t_.size());
    std::size_t i = 0, j = 0;
    while (i < a.t_.size() || j < b.t_.size()) {
      if (j == b.t_.size()) {
        r.t_.push_back(a.t_[i++]);
        continue;
      }
      Monomial bm = b.t_[j].m * m;
      int cmp = i < a.t_.size() ? grevlex_cmp(a.t_[i].m, bm) : -1;
      if (cmp > 0) {
        r.t_.push_back(a.t_[i++]);
      } else if (cmp < 0) {
        r.t_.push_back({bm, mul_mod(b.t_[j++].c, c, p)});
      } else {
        std::uint32_t s = (a.t_[i++].c + mul_mod(b.t_[j++].c, c, p)) % p;
        if (s) r.t_.push_back({bm, s});
      }
    }
    return r;
  }

  /// Canonical text: descending grevlex, e.g. "x^2+4*y^2".
  std::string str() const {
    if (t_.empty()) return "0";
    std::string out;
    const auto& vars = amb_.variables();
    for (const auto& t : t_) {
      if (!out.empty()) out += "+";
      std::string mono;
      for (std::size_t i = 0; i < vars.size(); ++i) {
        if (!t.m.e[i]) continue;
        if (!mono.empty()) mono += "*";
        mono += vars[i];
        if (t.m.e[i] > 1) mono += "^" + std::to_string(t.m.e[i]);
      }
      if (mono.empty()) {
        out += std::to_string(t.c);
      } else if (t.c == 1) {
        out += mono;
      } else {
        out += std::to_string(t.c) + "*" + mono;
      }
    }
    return out;
  }

 private:
  static Polynomial combine(const Polynomial& a, const Polynomial& b, std::uint32_t cb) {
    return axpy(a, cb, Monomial{}, b);
  }

  void normalize() {
    const std::uint32_t p = amb_.p();
    for (auto& t : t_) t.c %= p;
    std::sort(t_.begin(), t_.end(), [](const Term& x, const Term& y) { return grevlex_cmp(x.m, y.m) > 0; });
    std::size_t w = 0;
    for (std::size_t i = 0; i < t_.size();) {
      std::uint64_t s = 0;
      std::size_t j = i;
      while (j < t_.size() && t_[j].m == t_[i].m) s += t_[j++].c;
      if (s % p) t_[w++] = {t_[i].m, static_cast<std::uint32_t>(s % p)};
      i = j;
    }
    t_.resize(w);
  }

  friend Polynomial poly_mul(const Polynomial&, const Polynomial&);
  Ambient amb_;
  std::vector<Term> t_;
};

namespace detail {

inline void check_product_exponents(const Polynomial& a, const Polynomial& b) {
  for (std::size_t v = 0; v < a.ambient().nvars(); ++v) {
    if (static_cast<std::uint64_t>(a.max_exponent(v)) + b.max_exponent(v) > kMaxExponent)
      throw std::overflow_error("poly_mul: exponent overflow");
  }
}

}  // namespace detail

/// Exact product. A k-way merge when one factor is short, hash accumulation otherwise.
inline Polynomial poly_mul(const Polynomial& a, const Polynomial& b) {
  if (!(a.ambient() == b.ambient())) throw AmbientMismatch();
  if (a.is_zero() || b.is_zero()) return Polynomial(a.ambient());
  detail::check_product_exponents(a, b);
  const std::uint32_t p = a.p();
  const Polynomial& s = a.size() <= b.size() ? a : b;
  const Polynomial& l = a.size() <= b.size() ? b : a;
  Polynomial r(a.ambient());

  if (s.size() <= 64) {
    // Each row s_i * l is already sorted; merge the rows with a heap.
    struct Cursor {
      Monomial m;
      std::uint32_t row;
      std::uint32_t col;
    };
    auto cmp = [](const Cursor& x, const Cursor& y) { return grevlex_cmp(x.m, y.m) < 0; };
    std::priority_queue<Cursor, std::vector<Cursor>, decltype(cmp)> heap(cmp);
    for (std::uint32_t i = 0; i < s.size(); ++i) heap.push({s.t_[i].m * l.t_[0].m, i, 0});
    r.t_.reserve(l.size() * 2);
    while (!heap.empty()) {
      Cursor top = heap.top();
      heap.pop();
      std::uint64_t c = mul_mod(s.t_[top.row].c, l.t_[top.col].c, p);
      if (!r.t_.empty() && r.t_.back().m == top.m) {
        c = (c + r.t_.back().c) % p;
        if (c) r.t_.back().c = static_cast<std::uint32_t>(c);
        else r.t_.pop_back();
      } else if (c) {
        r.t_.push_back({top.m, static_cast<std::uint32_t>(c)});
      }
      if (top.col + 1 < l.size()) heap.push({s.t_[top.row].m * l.t_[top.col + 1].m, top.row, top.col + 1});
    }
    return r;
  }

  std::unordered_map<Monomial, std::uint64_t, MonomialHash> acc;
  acc.reserve(a.size() * b.size() / 4 + 16);
  for (const auto& x : a.t_)
    for (const auto& y : b.t_) {
      auto& slot = acc[x.m * y.m];
      slot = (slot + static_cast<std::uint64_t>(x.c) * y.c) % p;
    }
  r.t_.reserve(acc.size());
  for (const auto& [m, c] : acc)
    if (c) r.t_.push_back({m, static_cast<std::uint32_t>(c)});
  std::sort(r.t_.begin(), r.t_.end(), [](const Term& x, const Term& y) { return grevlex_cmp(x.m, y.m) > 0; });
  return r;
}

inline Polynomial operator*(const Polynomial& a, const Polynomial& b) { return poly_mul(a, b); }

/// f^(p^e): exponent vectors scaled by p^e; coefficients fixed since c^p = c in F_p.
inline Polynomial frobenius_scale(const Polynomial& f, unsigned e) {
  if (e == 0) return f;
  std::uint64_t q = checked_pow(f.p(), e, kMaxExponent);
  std::vector<Term> terms;
  terms.reserve(f.size());
  for (const auto& t : f.terms()) terms.push_back({t.m.scaled(q), t.c});
  // Scaling by q preserves the grevlex order, so no re-sort is needed, but the
  // constructor's normalize pass is cheap relative to the product paths.
  return Polynomial(f.ambient(), std::move(terms));
}

/// f^r using r = sum r_i p^i and f^r = prod (f^{r_i})^{p^i}.
inline Polynomial poly_pow(const Polynomial& f, std::uint64_t r) {
  const Ambient& amb = f.ambient();
  const std::uint32_t p = f.p();
  Polynomial result = Polynomial::constant(amb, 1);
  if (r == 0) return result;
  if (f.is_zero()) return f;
  auto small_pow = [&](const Polynomial& base, std::uint64_t k) {
    Polynomial acc = Polynomial::constant(amb, 1), b = base;
    while (k) {
      if (k & 1) acc = acc * b;
      k >>= 1;
      if (k) b = b * b;
    }
    return acc;
  };
  Polynomial frob = f;  // f^{p^i}
  bool first = true;
  while (r) {
    std::uint64_t digit = r % p;
    r /= p;
    if (!first) frob = frobenius_scale(frob, 1);
    first = false;
    if (digit) result = result * small_pow(frob, digit);
  }
  return result;
}

// ---------------------------------------------------------------------------
// Parsing

/// Integer-coefficient polynomial, the pre-image of Polynomial before reduction mod p.
class IntPoly {
 public:
  using Map = std::map<std::vector<std::uint32_t>, BigInt>;

  IntPoly() = default;
  IntPoly(std::vector<std::string> vars, Map terms) : vars_(std::move(vars)), t_(std::move(terms)) {
    prune();
  }

  const std::vector<std::string>& variables() const { return vars_; }
  const Map& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }

  /// Reduction into F_p[vars]; the ambient's variable list must match.
  Polynomial reduce(const Ambient& amb) const {
    if (amb.variables() != vars_) throw AmbientMismatch();
    std::vector<Term> terms;
    for (const auto& [u, c] : t_) {
      std::uint32_t r = reduce_mod(c, amb.p());
      if (r) terms.push_back({Monomial::from(u), r});
    }
    return Polynomial(amb, std::move(terms));
  }

  /// True iff p divides some nonzero coefficient (reduction would drop a term).
  bool loses_terms_mod(std::uint32_t p) const {
    for (const auto& [u, c] : t_)
      if (c % p == 0) return true;
    return false;
  }

  /// Exponent vectors of the terms (in map order).
  std::vector<std::vector<std::uint32_t>> exponents() const {
    std::vector<std::vector<std::uint32_t>> out;
    for (const auto& [u, c] : t_) out.push_back(u);
    return out;
  }

  IntPoly operator+(const IntPoly& o) const {
    Map r = t_;
    for (const auto& [u, c] : o.t_) r[u] += c;
    return IntPoly(vars_, std::move(r));
  }
  IntPoly operator-() const {
    Map r;
    for (const auto& [u, c] : t_) r[u] = -c;
    return IntPoly(vars_, std::move(r));
  }
  IntPoly operator*(const IntPoly& o) const {
    Map r;
    for (const auto& [u, c] : t_)
      for (const auto& [v, d] : o.t_) {
        std::vector<std::uint32_t> w(u.size());
        for (std::size_t i = 0; i < u.size(); ++i) {
          std::uint64_t s = static_cast<std::uint64_t>(u[i]) + v[i];
          if (s > kMaxExponent) throw std::overflow_error("exponent overflow");
          w[i] = static_cast<std::uint32_t>(s);
        }
        r[w] += c * d;
      }
    return IntPoly(vars_, std::move(r));
  }

 private:
  void prune() {
    for (auto it = t_.begin(); it != t_.end();) it = it->second == 0 ? t_.erase(it) : std::next(it);
  }
  std::vector<std::string> vars_;
  Map t_;
};

namespace detail {

inline bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
inline bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class PolyParser {
 public:
  PolyParser(std::string_view text, const std::vector<std::string>& vars) : s_(text), vars_(vars) {}

  IntPoly run() {
    skip();
    if (i_ == s_.size()) throw ParseError("empty polynomial", i_);
    IntPoly r = expr();
    skip();
    if (i_ != s_.size()) throw ParseError(std::string("unexpected '") + s_[i_] + "'", i_);
    return r;
  }

 private:
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool peek(char c) {
    skip();
    return i_ < s_.size() && s_[i_] == c;
  }
  IntPoly constant(const BigInt& c) const {
    IntPoly::Map m;
    m[std::vector<std::uint32_t>(vars_.size(), 0)] = c;
    return IntPoly(vars_, std::move(m));
  }

  IntPoly expr() {
    IntPoly acc = constant(0);
    bool first = true;
    for (;;) {
      skip();
      bool neg = false;
      if (peek('+') || peek('-')) {
        neg = s_[i_] == '-';
        ++i_;
      } else if (!first) {
        break;
      }
      IntPoly t = term();
      acc = acc + (neg ? -t : t);
      first = false;
    }
    return acc;
  }

  IntPoly term() {
    IntPoly acc = power();
    for (;;) {
      skip();
      if (peek('*')) {
        ++i_;
        acc = acc * power();
      } else if (i_ < s_.size() && (ident_start(s_[i_]) || s_[i_] == '(' ||
                                    std::isdigit(static_cast<unsigned char>(s_[i_])))) {
        acc = acc * power();
      } else {
        return acc;
      }
    }
  }

  IntPoly power() {
    IntPoly base = atom();
    if (peek('^')) {
      ++i_;
      skip();
      std::size_t at = i_;
      BigInt n = integer();
      if (n > 100000) throw ParseError("exponent too large", at);
      IntPoly r = constant(1);
      for (long k = n.convert_to<long>(); k > 0; --k) r = r * base;
      return r;
    }
    return base;
  }

  BigInt integer() {
    std::size_t start = i_;
    BigInt v = 0;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) v = v * 10 + (s_[i_++] - '0');
    if (i_ == start) throw ParseError("expected integer", i_);
    return v;
  }

  IntPoly atom() {
    skip();
    if (i_ == s_.size()) throw ParseError("unexpected end of input", i_);
    char c = s_[i_];
    if (c == '(') {
      ++i_;
      IntPoly r = expr();
      if (!peek(')')) throw ParseError("expected ')'", i_);
      ++i_;
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return constant(integer());
    if (ident_start(c)) {
      // Longest variable name that is a prefix of the remaining input.
      std::size_t best = vars_.size(), best_len = 0;
      for (std::size_t k = 0; k < vars_.size(); ++k) {
        const auto& v = vars_[k];
        if (v.size() > best_len && s_.compare(i_, v.size(), v) == 0) {
          best = k;
          best_len = v.size();
        }
      }
      if (best == vars_.size()) {
        std::size_t j = i_;
        while (j < s_.size() && ident_char(s_[j])) ++j;
        throw ParseError("unknown variable '" + std::string(s_.substr(i_, j - i_)) + "'", i_);
      }
      i_ += best_len;
      IntPoly::Map m;
      std::vector<std::uint32_t> u(vars_.size(), 0);
      u[best] = 1;
      m[u] = 1;
      return IntPoly(vars_, std::move(m));
    }
    throw ParseError(std::string("unexpected '") + c + "'", i_);
  }

  std::string_view s_;
  const std::vector<std::string>& vars_;
  std::size_t i_ = 0;
};

}  // namespace detail

/// Parses an integer-coefficient polynomial in the given variables.
/// Grammar: sums and differences of products; '*' optional; '^' takes a
/// non-negative integer; parentheses allowed.
inline IntPoly parse_int_poly(std::string_view text, const std::vector<std::string>& vars) {
  return detail::PolyParser(text, vars).run();
}

inline Polynomial parse_poly(std::string_view text, const Ambient& amb) {
  return parse_int_poly(text, amb.variables()).reduce(amb);
}

/// Natural ordering: "x2" < "x10".
inline bool natural_less(const std::string& a, const std::string& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (std::isdigit(static_cast<unsigned char>(a[i])) && std::isdigit(static_cast<unsigned char>(b[j]))) {
      std::size_t i2 = i, j2 = j;
      while (i2 < a.size() && std::isdigit(static_cast<unsigned char>(a[i2]))) ++i2;
      while (j2 < b.size() && std::isdigit(static_cast<unsigned char>(b[j2]))) ++j2;
      auto na = std::stoull(a.substr(i, i2 - i)), nb = std::stoull(b.substr(j, j2 - j));
      if (na != nb) return na < nb;
      i = i2;
      j = j2;
    } else {
      if (a[i] != b[j]) return a[i] < b[j];
      ++i;
      ++j;
    }
  }
  return a.size() - i < b.size() - j;
}

/// Variable names appearing in the texts: maximal identifiers, naturally sorted.
inline std::vector<std::string> infer_variables(const std::vector<std::string>& texts) {
  std::set<std::string> names;
  for (const auto& t : texts) {
    for (std::size_t i = 0; i < t.size();) {
      if (detail::ident_start(t[i])) {
        std::size_t j = i;
        while (j < t.size() && detail::ident_char(t[j])) ++j;
        names.insert(t.substr(i, j - i));
        i = j;
      } else {
        ++i;
      }
    }
  }
  std::vector<std::string> out(names.begin(), names.end());
  std::sort(out.begin(), out.end(), natural_less);
  return out;
}

}  // namespace fthresh
