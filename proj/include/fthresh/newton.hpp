#pragma once

// Monomial-ideal geometry: Newton polyhedra, Howald multiplier ideals, lct,
// jumping numbers, and the lattice formula for nu_f(p) of nondegenerate f.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fthresh/exactnum.hpp"
#include "fthresh/idealkit.hpp"
#include "fthresh/polyring.hpp"

namespace fthresh {

using ExponentMatrix = std::vector<std::vector<std::uint32_t>>;

/// Valid inequality <w, x> >= c with primitive integer w >= 0.
struct Facet {
  std::vector<BigInt> w;
  BigInt c;
  friend bool operator==(const Facet&, const Facet&) = default;
  friend bool operator<(const Facet& a, const Facet& b) { return std::tie(a.c, a.w) < std::tie(b.c, b.w); }

  Rational eval(const std::vector<Rational>& x) const {
    Rational s = 0;
    for (std::size_t j = 0; j < w.size(); ++j) s += Rational(w[j]) * x[j];
    return s;
  }
  std::string str(const std::vector<std::string>& names) const {
    std::string out;
    for (std::size_t j = 0; j < w.size(); ++j) {
      if (w[j] == 0) continue;
      if (!out.empty()) out += " + ";
      if (w[j] != 1) out += w[j].str() + "*";
      out += j < names.size() ? names[j] : "x" + std::to_string(j + 1);
    }
    return out + " >= " + c.str();
  }
};

namespace detail {

// Row reduction over Q; returns the rank and leaves `a` in reduced echelon form.
inline std::size_t rref(std::vector<std::vector<Rational>>& a, std::size_t cols, std::vector<std::size_t>* pivots = nullptr) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t piv = r;
    while (piv < a.size() && a[piv][c].is_zero()) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[r]);
    Rational inv = Rational(1) / a[r][c];
    for (auto& x : a[r]) x *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c].is_zero()) continue;
      Rational f = a[i][c];
      for (std::size_t k = 0; k < cols; ++k) a[i][k] -= f * a[r][k];
    }
    if (pivots) pivots->push_back(c);
    ++r;
  }
  return r;
}

inline std::vector<std::vector<Rational>> nullspace_q(std::vector<std::vector<Rational>> a, std::size_t cols) {
  std::vector<std::size_t> piv;
  rref(a, cols, &piv);
  std::vector<bool> is_piv(cols, false);
  for (auto c : piv) is_piv[c] = true;
  std::vector<std::vector<Rational>> out;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_piv[f]) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[f] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -a[i][f];
    out.push_back(std::move(v));
  }
  return out;
}

inline BigInt lcm_big(const BigInt& a, const BigInt& b) { return a / boost::multiprecision::gcd(a, b) * b; }

inline void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> idx(k);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t start) {
    if (pos == k) {
      fn(idx);
      return;
    }
    for (std::size_t i = start; i + (k - pos) <= n; ++i) {
      idx[pos] = i;
      rec(pos + 1, i + 1);
    }
  };
  rec(0, 0);
}

}  // namespace detail

/// Convex hull of the exponent vectors plus the non-negative orthant.
class NewtonPolyhedron {
 public:
  explicit NewtonPolyhedron(ExponentMatrix exponents) : exps_(std::move(exponents)) {
    if (exps_.empty()) throw std::invalid_argument("Newton polyhedron needs at least one exponent vector");
    n_ = exps_[0].size();
    if (n_ == 0) throw std::invalid_argument("Newton polyhedron needs at least one variable");
    for (const auto& u : exps_)
      if (u.size() != n_) throw std::invalid_argument("exponent vectors of different lengths");
    compute_facets();
  }

  std::size_t dim() const { return n_; }
  const ExponentMatrix& exponents() const { return exps_; }
  /// All facet inequalities, coordinate ones (c = 0) included.
  const std::vector<Facet>& facets() const { return facets_; }

  /// True iff x lies in the interior of alpha * P.
  bool interior(const std::vector<Rational>& x, const Rational& alpha) const {
    for (const auto& f : facets_)
      if (!(f.eval(x) > alpha * Rational(f.c))) return false;
    return true;
  }

  /// Least alpha with x on the boundary of alpha * P: min over facets with c > 0 of <w, x> / c.
  Rational boundary_scale(const std::vector<Rational>& x) const {
    std::optional<Rational> best;
    for (const auto& f : facets_) {
      if (f.c == 0) continue;
      Rational v = f.eval(x) / Rational(f.c);
      if (!best || v < *best) best = v;
    }
    if (!best) throw std::logic_error("Newton polyhedron has no facet with positive constant");
    return *best;
  }

  /// Per-coordinate bound s_j with: x_j > s_j already satisfies every facet involving x_j at scale alpha.
  std::vector<BigInt> box(const Rational& alpha) const {
    std::vector<BigInt> side(n_, 0);
    for (const auto& f : facets_) {
      if (f.c == 0) continue;
      for (std::size_t j = 0; j < n_; ++j)
        if (f.w[j] > 0) side[j] = std::max(side[j], (alpha * Rational(f.c) / Rational(f.w[j])).ceil());
    }
    return side;
  }

 private:
  void compute_facets() {
    std::set<Facet> found;
    for (std::size_t j = 0; j < n_; ++j) {
      Facet f{std::vector<BigInt>(n_, 0), 0};
      f.w[j] = 1;
      found.insert(f);
    }
    // A facet with c > 0 is cut out by k generators and n - k recession
    // directions e_j (forcing w_j = 0); unknowns are (w, c).
    for (std::size_t k = 1; k <= std::min(n_, exps_.size()); ++k) {
      detail::for_each_subset(exps_.size(), k, [&](const std::vector<std::size_t>& pts) {
        detail::for_each_subset(n_, n_ - k, [&](const std::vector<std::size_t>& dirs) {
          std::vector<std::vector<Rational>> a;
          for (auto i : pts) {
            std::vector<Rational> row(n_ + 1);
            for (std::size_t j = 0; j < n_; ++j) row[j] = Rational(exps_[i][j]);
            row[n_] = -1;
            a.push_back(std::move(row));
          }
          for (auto j : dirs) {
            std::vector<Rational> row(n_ + 1, Rational(0));
            row[j] = 1;
            a.push_back(std::move(row));
          }
          auto ns = detail::nullspace_q(std::move(a), n_ + 1);
          if (ns.size() != 1) return;
          auto v = ns[0];
          if (v[n_].sign() < 0)
            for (auto& x : v) x = -x;
          if (v[n_].sign() <= 0) return;
          BigInt den = 1;
          for (const auto& x : v) den = detail::lcm_big(den, x.denominator());
          std::vector<BigInt> iv;
          BigInt g = 0;
          for (const auto& x : v) {
            iv.push_back((x * Rational(den)).numerator());
            g = boost::multiprecision::gcd(g, boost::multiprecision::abs(iv.back()));
          }
          for (auto& x : iv) x /= g;
          Facet f{std::vector<BigInt>(iv.begin(), iv.begin() + n_), iv[n_]};
          for (const auto& w : f.w)
            if (w < 0) return;
          for (const auto& u : exps_) {
            BigInt s = 0;
            for (std::size_t j = 0; j < n_; ++j) s += f.w[j] * u[j];
            if (s < f.c) return;
          }
          found.insert(std::move(f));
        });
      });
    }
    facets_.assign(found.begin(), found.end());
  }

  ExponentMatrix exps_;
  std::size_t n_ = 0;
  std::vector<Facet> facets_;
};

/// Polytope Q = {a >= 0 : sum_i a_i alpha_ij <= 1 for all j}.
class SimplexQ {
 public:
  explicit SimplexQ(ExponentMatrix alpha) : alpha_(std::move(alpha)) {
    if (alpha_.empty()) throw std::invalid_argument("SimplexQ needs at least one row");
    n_ = alpha_[0].size();
    for (const auto& row : alpha_) {
      if (row.size() != n_) throw std::invalid_argument("SimplexQ rows of different lengths");
      if (std::all_of(row.begin(), row.end(), [](std::uint32_t x) { return x == 0; }))
        throw std::invalid_argument("SimplexQ: zero exponent vector (constant term)");
    }
  }
  const ExponentMatrix& alpha() const { return alpha_; }
  std::size_t rows() const { return alpha_.size(); }
  std::size_t cols() const { return n_; }

  /// Q is bounded iff every row has a positive entry in some column (a_i <= 1 / alpha_ij).
  bool bounded() const {
    for (const auto& row : alpha_)
      if (std::all_of(row.begin(), row.end(), [](std::uint32_t x) { return x == 0; })) return false;
    return true;
  }

  /// Rows affinely independent: rank [alpha | 1] = r.
  bool affinely_independent() const {
    std::vector<std::vector<Rational>> a;
    for (const auto& row : alpha_) {
      std::vector<Rational> r;
      for (auto x : row) r.push_back(Rational(x));
      r.push_back(1);
      a.push_back(std::move(r));
    }
    return detail::rref(a, n_ + 1) == alpha_.size();
  }

 private:
  ExponentMatrix alpha_;
  std::size_t n_ = 0;
};

/// max_{b in Q} sum b_i, by exact enumeration of basic feasible points.
inline Rational lct_monomial(const SimplexQ& Q) {
  if (!Q.bounded()) throw std::domain_error("lct_monomial: Q is unbounded");
  const std::size_t r = Q.rows(), n = Q.cols();
  // constraints: rows 0..n-1 are column sums <= 1, rows n..n+r-1 are a_i >= 0
  auto row_of = [&](std::size_t k) {
    std::vector<Rational> row(r + 1, Rational(0));
    if (k < n) {
      for (std::size_t i = 0; i < r; ++i) row[i] = Rational(Q.alpha()[i][k]);
      row[r] = 1;
    } else {
      row[k - n] = 1;
      row[r] = 0;
    }
    return row;
  };
  std::optional<Rational> best;
  detail::for_each_subset(n + r, r, [&](const std::vector<std::size_t>& tight) {
    std::vector<std::vector<Rational>> a;
    for (auto k : tight) a.push_back(row_of(k));
    std::vector<std::size_t> piv;
    auto b = a;
    if (detail::rref(b, r, &piv) < r) return;
    // Solve the square system by reducing the augmented matrix.
    std::vector<std::size_t> piv2;
    detail::rref(a, r + 1, &piv2);
    std::vector<Rational> x(r, Rational(0));
    for (std::size_t i = 0; i < r; ++i) {
      if (piv2[i] >= r) return;  // inconsistent
      x[piv2[i]] = a[i][r];
    }
    for (const auto& v : x)
      if (v.sign() < 0) return;
    for (std::size_t j = 0; j < n; ++j) {
      Rational s = 0;
      for (std::size_t i = 0; i < r; ++i) s += x[i] * Rational(Q.alpha()[i][j]);
      if (s > 1) return;
    }
    Rational sum = 0;
    for (const auto& v : x) sum += v;
    if (!best || sum > *best) best = sum;
  });
  if (!best) throw std::logic_error("lct_monomial: no feasible vertex");
  return *best;
}

/// Monomial ideal generated by X^u with u + (1,...,1) in Int(alpha * P).
inline MonomialIdeal howald_multiplier(const NewtonPolyhedron& P, const Ambient& amb, const Rational& alpha) {
  if (alpha.sign() <= 0) throw std::invalid_argument("howald_multiplier: alpha must be positive");
  if (amb.nvars() != P.dim()) throw std::invalid_argument("howald_multiplier: dimension mismatch");
  const std::size_t n = P.dim();
  auto side = P.box(alpha);
  std::vector<Monomial> gens;
  std::vector<std::uint32_t> u(n, 0);
  std::vector<Rational> x(n);
  // The last exponent is solved directly: interior membership only gets easier as it grows.
  std::function<void(std::size_t)> rec = [&](std::size_t j) {
    if (j + 1 == n) {
      BigInt need = 0;
      for (const auto& f : P.facets()) {
        Rational rest = alpha * Rational(f.c);
        for (std::size_t k = 0; k + 1 < n; ++k) rest -= Rational(f.w[k]) * Rational(u[k] + 1);
        if (f.w[n - 1] == 0) {
          if (rest.sign() >= 0) return;
          continue;
        }
        // w_last (v + 1) > rest
        need = std::max(need, (rest / Rational(f.w[n - 1])).floor());
      }
      u[n - 1] = need.convert_to<std::uint32_t>();
      for (std::size_t k = 0; k < n; ++k) x[k] = Rational(u[k] + 1);
      if (P.interior(x, alpha)) gens.push_back(Monomial::from(u));
      u[n - 1] = 0;
      return;
    }
    std::uint32_t top = side[j].convert_to<std::uint32_t>() + 1;
    for (std::uint32_t v = 0; v <= top; ++v) {
      u[j] = v;
      rec(j + 1);
    }
    u[j] = 0;
  };
  rec(0);
  if (gens.empty()) throw std::logic_error("howald_multiplier: empty scan box");
  return MonomialIdeal(amb, std::move(gens));
}

enum class JumpRole {
  Ideal,        // the monomial ideal itself
  Hypersurface  // a nondegenerate f with these exponents: values below 1, shifted by integers, and the integers
};

/// Jumping numbers in (0, bound], sorted.
inline std::vector<Rational> jumping_numbers_monomial(const NewtonPolyhedron& P, const Rational& bound,
                                                      JumpRole role = JumpRole::Ideal) {
  if (bound < 1) throw std::invalid_argument("jumping_numbers_monomial: bound must be >= 1");
  const std::size_t n = P.dim();
  const Rational scan_bound = role == JumpRole::Ideal ? bound : Rational(1);
  auto side = P.box(scan_bound);
  std::set<Rational> ideal_jumps;
  std::vector<std::uint32_t> b(n, 1);
  std::vector<Rational> x(n);
  std::function<void(std::size_t)> rec = [&](std::size_t j) {
    if (j == n) {
      for (std::size_t k = 0; k < n; ++k) x[k] = Rational(b[k]);
      Rational a = P.boundary_scale(x);
      if (a <= scan_bound) ideal_jumps.insert(a);
      return;
    }
    std::uint32_t top = std::max<std::uint32_t>(1, side[j].convert_to<std::uint32_t>());
    for (std::uint32_t v = 1; v <= top; ++v) {
      b[j] = v;
      rec(j + 1);
    }
    b[j] = 1;
  };
  rec(0);

  // Each value must be witnessed by a strict drop of the multiplier ideal.
  Ambient amb(std::vector<std::string>([&] {
                std::vector<std::string> v;
                for (std::size_t k = 0; k < n; ++k) v.push_back("x" + std::to_string(k + 1));
                return v;
              }()),
              2);
  Rational prev = 0;
  for (const auto& a : ideal_jumps) {
    Rational mid = (prev + a) / 2;
    if (howald_multiplier(P, amb, mid) == howald_multiplier(P, amb, a))
      throw std::logic_error("jumping_numbers_monomial: candidate " + a.str() + " is not a jump");
    prev = a;
  }

  if (role == JumpRole::Ideal) return {ideal_jumps.begin(), ideal_jumps.end()};

  std::set<Rational> out;
  for (const auto& a : ideal_jumps)
    if (a < 1)
      for (Rational v = a; v <= bound; v += 1) out.insert(v);
  for (Rational k = 1; k <= bound; k += 1) out.insert(k);
  return {out.begin(), out.end()};
}

/// min(p - 1, max {sum b_i : b in (p-1) Q, b integral}).
inline std::uint64_t nu_p_via_lattice(const SimplexQ& Q, std::uint32_t p) {
  if (!Q.bounded()) throw std::domain_error("nu_p_via_lattice: Q is unbounded");
  const std::size_t r = Q.rows(), n = Q.cols();
  std::vector<std::uint64_t> cap(n, p - 1);
  std::uint64_t best = 0;
  std::function<void(std::size_t, std::uint64_t)> rec = [&](std::size_t i, std::uint64_t sum) {
    if (sum > best) best = sum;
    if (best >= p - 1 || i == r) return;
    // largest b_i fitting in every column
    std::uint64_t top = std::numeric_limits<std::uint64_t>::max();
    for (std::size_t j = 0; j < n; ++j)
      if (Q.alpha()[i][j]) top = std::min<std::uint64_t>(top, cap[j] / Q.alpha()[i][j]);
    for (std::uint64_t v = top + 1; v-- > 0;) {
      for (std::size_t j = 0; j < n; ++j) cap[j] -= v * Q.alpha()[i][j];
      rec(i + 1, sum + v);
      for (std::size_t j = 0; j < n; ++j) cap[j] += v * Q.alpha()[i][j];
      if (best >= p - 1) return;
    }
  };
  rec(0, 0);
  return std::min<std::uint64_t>(best, p - 1);
}

}  // namespace fthresh
