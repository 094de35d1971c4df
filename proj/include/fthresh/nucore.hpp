#pragma once

// Frobenius-power thresholds nu_a^J(q) and the threshold estimates built from them.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fthresh/exactnum.hpp"
#include "fthresh/idealkit.hpp"
#include "fthresh/polyring.hpp"

namespace fthresh {

/// a is not contained in the radical of J (no N <= 64 with a^N in J), or a
/// search ran past the finite bound that containment guarantees.
class RadicalViolation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// nu(pq) fell outside [p nu(q), p nu(q) + p - 1]. Always a bug.
class WindowViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline constexpr unsigned kRadicalSearchLimit = 64;

struct NuRecord {
  std::uint32_t p = 0;
  unsigned e = 0;
  std::string J_label;
  std::uint64_t nu = 0;

  std::uint64_t q() const { return checked_pow(p, e, kMaxExponent); }
  Rational nu_over_q() const { return Rational(BigInt(nu), BigInt(q())); }
  friend bool operator==(const NuRecord&, const NuRecord&) = default;
};

struct ThresholdEstimate {
  Interval bracket;
  std::optional<Rational> guess;
  unsigned verified_to_e = 0;
};

struct DefectSequence {
  unsigned first_e = 0;         // e of defects[0]
  std::vector<BigInt> defects;  // nu(p^e) - p nu(p^{e-1})
  std::optional<std::size_t> preperiod;
  std::optional<std::size_t> period;
  /// "observed" when a repeating tail was seen, "none" otherwise. Never "proved".
  std::string status() const { return period ? "observed" : "none"; }
};

// ---------------------------------------------------------------------------

/// Label used in tables: "m" for the homogeneous maximal ideal, else the GB.
inline std::string ideal_label(const GroebnerBasis& G) {
  if (G == groebner(Ideal::maximal(G.ambient()))) return "m";
  return "(" + G.str() + ")";
}

namespace detail {

inline GroebnerBasis proper_basis(const Ideal& J) {
  GroebnerBasis G = groebner(J);
  if (G.is_unit()) throw std::domain_error("J is the unit ideal; thresholds need a proper ideal");
  return G;
}

// Smallest N <= 64 with f^N in J.
inline unsigned principal_radical_exponent(const Polynomial& f, const GroebnerBasis& G) {
  Polynomial h = normal_form(f, G);
  unsigned N = 1;
  while (!h.is_zero()) {
    if (N >= kRadicalSearchLimit)
      throw RadicalViolation("f^N not in J for N <= " + std::to_string(kRadicalSearchLimit) +
                             "; f is not in the radical of J");
    h = normal_form(f * h, G);
    ++N;
  }
  return N;
}

}  // namespace detail

/// NF of f^r modulo J^{[p^e]}, by base-p Horner steps that never leave the
/// reduced form: (f^R mod J^{[p^k]})^p * f^d reduced mod J^{[p^{k+1}]}.
inline Polynomial power_normal_form(const Polynomial& f, std::uint64_t r, const GroebnerBasis& G, unsigned e) {
  const std::uint32_t p = f.p();
  std::vector<std::uint32_t> digits;
  for (std::uint64_t x = r; x; x /= p) digits.push_back(static_cast<std::uint32_t>(x % p));
  std::vector<GroebnerBasis> level;
  for (unsigned k = 0; k <= e; ++k) level.push_back(bracket_power(G, k));
  auto lvl = [&](std::size_t pos) -> const GroebnerBasis& {
    return level[pos >= e ? 0 : e - pos];
  };
  Polynomial h = normal_form(Polynomial::constant(f.ambient(), 1), lvl(digits.size()));
  for (std::size_t pos = digits.size(); pos-- > 0;) {
    const GroebnerBasis& L = lvl(pos);
    h = normal_form(frobenius_scale(h, 1), L);
    for (std::uint32_t k = 0; k < digits[pos] && !h.is_zero(); ++k) h = normal_form(f * h, L);
    if (h.is_zero()) break;
  }
  return h;
}

/// nu_f^J(p^e) for e = 1..e_max. Level 1 walks r upward; each later level
/// starts from the Frobenius image of the previous level's last nonzero
/// remainder and can only move within the window [p nu, p nu + p - 1].
inline std::vector<NuRecord> nu_principal_chain(const Polynomial& f, const Ideal& J, unsigned e_max,
                                                std::optional<std::string> label = std::nullopt) {
  if (f.is_zero()) throw std::invalid_argument("nu_principal_chain: f is zero");
  if (!(f.ambient() == J.ambient())) throw AmbientMismatch();
  if (e_max == 0) throw std::invalid_argument("nu_principal_chain: e_max must be positive");
  const std::uint32_t p = f.p();
  GroebnerBasis G = detail::proper_basis(J);
  const unsigned N = detail::principal_radical_exponent(f, G);
  const std::string lab = label ? *label : ideal_label(G);

  std::vector<NuRecord> out;
  GroebnerBasis G1 = bracket_power(G, 1);
  Polynomial h = normal_form(Polynomial::constant(f.ambient(), 1), G1);
  std::uint64_t r = 0;
  const std::uint64_t bound1 = static_cast<std::uint64_t>(N) * p;
  for (;;) {
    Polynomial next = normal_form(f * h, G1);
    if (next.is_zero()) break;
    h = std::move(next);
    if (++r >= bound1) throw RadicalViolation("nu search exceeded the finite bound");
  }
  out.push_back({p, 1, lab, r});

  for (unsigned e = 2; e <= e_max; ++e) {
    GroebnerBasis Gq = bracket_power(G, e);
    std::uint64_t base = out.back().nu * p;
    // NF commutes with Frobenius, so this is already reduced modulo J^{[p^e]}.
    h = frobenius_scale(h, 1);
    if (h.is_zero()) throw WindowViolation("lower window bound failed at e=" + std::to_string(e));
    std::uint64_t steps = 0;
    for (;;) {
      Polynomial next = normal_form(f * h, Gq);
      if (next.is_zero()) break;
      if (++steps >= p)
        throw WindowViolation("upper window bound failed at e=" + std::to_string(e) + ", p=" + std::to_string(p));
      h = std::move(next);
    }
    out.push_back({p, e, lab, base + steps});
  }
  return out;
}

/// nu_a^J(q): the largest r with some product of r generators outside J^{[q]}.
/// Runs a frontier search over products, deduplicated by exponent vector for
/// monomial generators and by generator multiset otherwise.
inline std::uint64_t nu_general(const std::vector<Polynomial>& a_gens, const Ideal& J, std::uint64_t q) {
  if (a_gens.empty()) throw std::invalid_argument("nu_general: no generators");
  const Ambient& amb = J.ambient();
  std::vector<Polynomial> gens;
  for (const auto& g : a_gens) {
    if (!(g.ambient() == amb)) throw AmbientMismatch();
    if (g.is_zero()) throw std::invalid_argument("nu_general: zero generator");
    gens.push_back(g);
  }
  const unsigned e = detail::exponent_of_q(q, amb.p());
  GroebnerBasis G = detail::proper_basis(J);
  const bool monomial = std::all_of(gens.begin(), gens.end(), [](const Polynomial& g) { return g.is_monomial(); });

  // Returns the last r with a nonzero frontier, or nullopt when that r exceeds `limit`.
  auto frontier = [&](const GroebnerBasis& L, std::uint64_t limit) -> std::optional<std::uint64_t> {
    Polynomial one = normal_form(Polynomial::constant(amb, 1), L);
    if (monomial) {
      std::map<Monomial, Polynomial, GrevlexLess> S;
      S.emplace(Monomial{}, one);
      for (std::uint64_t r = 1;; ++r) {
        if (r > limit + 1) return std::nullopt;
        std::map<Monomial, Polynomial, GrevlexLess> next;
        for (const auto& [m, h] : S)
          for (const auto& g : gens) {
            Monomial mm = m * g.lm();
            if (next.count(mm)) continue;
            Polynomial nh = normal_form(g * h, L);
            if (!nh.is_zero()) next.emplace(mm, std::move(nh));
          }
        if (next.empty()) return r - 1;
        S = std::move(next);
      }
    }
    // multisets as nondecreasing index sequences, keyed by (last index, counts)
    std::map<std::vector<std::uint32_t>, Polynomial> S;
    std::vector<std::uint32_t> key0(gens.size() + 1, 0);
    S.emplace(key0, one);
    for (std::uint64_t r = 1;; ++r) {
      if (r > limit + 1) return std::nullopt;
      std::map<std::vector<std::uint32_t>, Polynomial> next;
      for (const auto& [key, h] : S)
        for (std::uint32_t i = key[0]; i < gens.size(); ++i) {
          Polynomial nh = normal_form(gens[i] * h, L);
          if (nh.is_zero()) continue;
          auto k2 = key;
          k2[0] = i;
          ++k2[i + 1];
          next.emplace(std::move(k2), std::move(nh));
        }
      if (next.empty()) return r - 1;
      S = std::move(next);
    }
  };

  // a^N in J for some N <= 64, then nu(q) <= N (k (q-1) + 1) - 1 with k generators of J.
  auto nu0 = frontier(G, kRadicalSearchLimit - 1);
  if (!nu0) throw RadicalViolation("a^N not in J for N <= 64; a is not in the radical of J");
  const std::uint64_t N = *nu0 + 1;
  const std::uint64_t k = std::min<std::uint64_t>(J.generators().size(), G.basis().size());
  const std::uint64_t bound = N * (k * (q - 1) + 1) - 1;
  auto nu = frontier(bracket_power(G, e), bound);
  if (!nu) throw RadicalViolation("nu search exceeded the finite bound");
  return *nu;
}

/// Bracket (nu/q, (nu+1)/q] at the largest e, and the least-denominator guess
/// when it reproduces every level via nu(q) = ceil(c q) - 1.
inline ThresholdEstimate fpt_bracket(const std::vector<NuRecord>& records) {
  if (records.empty()) throw std::invalid_argument("fpt_bracket: no records");
  const NuRecord* top = &records.front();
  for (const auto& r : records) {
    if (r.p != top->p) throw std::invalid_argument("fpt_bracket: mixed primes");
    if (r.e > top->e) top = &r;
  }
  BigInt q(top->q());
  Interval bracket(Rational(BigInt(top->nu), q), Rational(BigInt(top->nu) + 1, q));
  Rational guess = smallest_denominator_in(bracket);
  for (const auto& r : records) {
    BigInt predicted = (guess * Rational(BigInt(r.q()))).ceil() - 1;
    if (predicted != BigInt(r.nu)) return {bracket, std::nullopt, 0};
  }
  return {bracket, guess, top->e};
}

/// nu(p^e) - p nu(p^{e-1}) and any repetition seen in the computed range.
inline DefectSequence nu_defect_sequence(std::vector<NuRecord> records) {
  if (records.empty()) throw std::invalid_argument("nu_defect_sequence: no records");
  std::sort(records.begin(), records.end(), [](const NuRecord& a, const NuRecord& b) { return a.e < b.e; });
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (records[i].p != records[0].p) throw std::invalid_argument("nu_defect_sequence: mixed primes");
    if (records[i].e != records[i - 1].e + 1)
      throw std::invalid_argument("nu_defect_sequence: gap in e between " + std::to_string(records[i - 1].e) +
                                  " and " + std::to_string(records[i].e));
  }
  DefectSequence out;
  out.first_e = records[0].e + 1;
  for (std::size_t i = 1; i < records.size(); ++i)
    out.defects.push_back(BigInt(records[i].nu) - BigInt(records[0].p) * BigInt(records[i - 1].nu));
  const auto& d = out.defects;
  // Smallest period, then smallest preperiod, backed by at least one comparison.
  for (std::size_t t = 1; t < d.size() && !out.period; ++t)
    for (std::size_t s = 0; s + t < d.size(); ++s) {
      bool ok = true;
      for (std::size_t i = s; i + t < d.size() && ok; ++i) ok = d[i] == d[i + t];
      if (ok) {
        out.preperiod = s;
        out.period = t;
        break;
      }
    }
  return out;
}

/// True iff nu_f^m(p^e) = p^e - 1, i.e. f^{p^e - 1} is outside m^{[p^e]}.
inline bool fedder_test(const Polynomial& f, unsigned e) {
  if (e == 0) throw std::invalid_argument("fedder_test: e must be positive");
  if (f.is_zero()) return false;
  if (f.coeff(Monomial{})) throw std::domain_error("fedder_test: f must lie in the maximal ideal");
  GroebnerBasis G = groebner(Ideal::maximal(f.ambient()));
  std::uint64_t q = checked_pow(f.p(), e, kMaxExponent);
  return !power_normal_form(f, q - 1, G, e).is_zero();
}

enum class ShiftDirection { Up, Down };

struct ShiftCheck {
  ShiftDirection direction;
  std::vector<NuRecord> base;
  std::vector<NuRecord> shifted;  // empty when the down colon is the unit ideal
  ThresholdEstimate base_estimate;
  std::optional<ThresholdEstimate> shifted_estimate;
  bool clamped = false;            // down direction with f in J: threshold clamps at 0
  std::vector<bool> level_holds;   // per e
  bool holds() const { return std::all_of(level_holds.begin(), level_holds.end(), [](bool b) { return b; }); }
};

/// Up: compares (f, J) with (f, fJ), expecting nu to gain exactly q at every level.
/// Down: compares (f, J) with (f, J : f) for principal J, expecting nu to lose q.
inline ShiftCheck pt_shift_check(const Polynomial& f, const Ideal& J, ShiftDirection dir, unsigned e_max) {
  ShiftCheck out{dir, nu_principal_chain(f, J, e_max), {}, {Interval(0, 1), std::nullopt, 0}, std::nullopt, false, {}};
  out.base_estimate = fpt_bracket(out.base);
  if (dir == ShiftDirection::Up) {
    out.shifted = nu_principal_chain(f, J.times(f), e_max);
    out.shifted_estimate = fpt_bracket(out.shifted);
    for (std::size_t i = 0; i < out.base.size(); ++i)
      out.level_holds.push_back(out.shifted[i].nu == out.base[i].nu + out.base[i].q());
    return out;
  }
  if (!J.is_principal()) throw std::invalid_argument("pt_shift_check: the down direction needs a principal J");
  Polynomial h = colon_principal(J.generators()[0], f);
  if (h.is_constant()) {
    out.clamped = true;
    for (const auto& r : out.base) out.level_holds.push_back(r.nu < r.q());
    return out;
  }
  out.shifted = nu_principal_chain(f, Ideal(h), e_max);
  out.shifted_estimate = fpt_bracket(out.shifted);
  for (std::size_t i = 0; i < out.base.size(); ++i)
    out.level_holds.push_back(out.base[i].nu >= out.base[i].q() &&
                              out.shifted[i].nu == out.base[i].nu - out.base[i].q());
  return out;
}

}  // namespace fthresh
