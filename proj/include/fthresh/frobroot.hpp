#pragma once

// p^e-th root ideals and the test-ideal / jumping chains built from them.

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
#include "fthresh/nucore.hpp"
#include "fthresh/polyring.hpp"

namespace fthresh {

/// Minimal ideal I with base^exponent in I^{[p^e]}.
struct RootIdeal {
  Polynomial base;
  std::uint64_t exponent = 1;
  unsigned e = 1;
  GroebnerBasis gb;

  Ideal ideal() const { return gb.ideal(); }
  bool is_unit() const { return gb.is_unit(); }
};

namespace detail {

// Coefficient polynomials h_mu of g = sum_mu h_mu^{q} X^mu.
inline std::vector<Polynomial> root_components(const Polynomial& g, std::uint64_t q) {
  std::map<Monomial, std::vector<Term>, GrevlexLess> parts;
  for (const auto& t : g.terms()) {
    Monomial mu, v;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      mu.e[i] = static_cast<std::uint32_t>(t.m.e[i] % q);
      v.e[i] = static_cast<std::uint32_t>(t.m.e[i] / q);
      mu.deg += mu.e[i];
      v.deg += v.e[i];
    }
    parts[mu].push_back({v, t.c});
  }
  std::vector<Polynomial> out;
  for (auto& [mu, terms] : parts) out.emplace_back(g.ambient(), std::move(terms));
  return out;
}

// Root of the ideal generated by `gens` at level q.
inline GroebnerBasis root_of_generators(const Ambient& amb, const std::vector<Polynomial>& gens, std::uint64_t q) {
  std::vector<Polynomial> comps;
  for (const auto& g : gens)
    for (auto& h : root_components(g, q)) comps.push_back(std::move(h));
  if (comps.empty()) throw std::invalid_argument("root of the zero ideal");
  return groebner(Ideal(amb, linear_basis(comps)));
}

}  // namespace detail

inline RootIdeal frob_root(const Polynomial& g, unsigned e) {
  if (g.is_zero()) throw std::invalid_argument("frob_root: g is zero");
  if (e == 0) throw std::invalid_argument("frob_root: e must be positive");
  std::uint64_t q = checked_pow(g.p(), e, kMaxExponent);
  return {g, 1, e, detail::root_of_generators(g.ambient(), {g}, q)};
}

/// Root of f^r at level e by base-p digits r' = sum a_k p^k of r mod p^e:
/// I_0 = R, I_{k+1} = root_p(f^{a_k} I_k), result f^{floor(r/p^e)} I_e.
inline RootIdeal frob_root_power(const Polynomial& f, std::uint64_t r, unsigned e) {
  if (f.is_zero()) throw std::invalid_argument("frob_root_power: f is zero");
  if (e == 0) throw std::invalid_argument("frob_root_power: e must be positive");
  const Ambient& amb = f.ambient();
  const std::uint32_t p = f.p();
  const std::uint64_t q = checked_pow(p, e, kMaxExponent);
  std::uint64_t low = r % q;
  const std::uint64_t high = r / q;

  std::map<std::uint32_t, Polynomial> pow_cache;
  auto fpow = [&](std::uint32_t a) -> const Polynomial& {
    auto it = pow_cache.find(a);
    if (it == pow_cache.end()) it = pow_cache.emplace(a, poly_pow(f, a)).first;
    return it->second;
  };

  GroebnerBasis I(amb, {Polynomial::constant(amb, 1)});
  for (unsigned k = 0; k < e; ++k) {
    auto a = static_cast<std::uint32_t>(low % p);
    low /= p;
    std::vector<Polynomial> gens;
    for (const auto& g : I.basis()) gens.push_back(a ? fpow(a) * g : g);
    I = detail::root_of_generators(amb, gens, p);
  }
  if (high) {
    Polynomial fh = poly_pow(f, high);
    std::vector<Polynomial> gens;
    for (const auto& g : I.basis()) gens.push_back(fh * g);
    I = groebner(Ideal(amb, std::move(gens)));
  }
  return {f, r, e, std::move(I)};
}

struct TestIdealChain {
  Polynomial f;
  Rational c;
  std::vector<RootIdeal> levels;  // e = 1..e_max
  bool stabilized = false;

  /// The last level when the last two levels agree.
  std::optional<GroebnerBasis> tau_candidate() const {
    if (!stabilized) return std::nullopt;
    return levels.back().gb;
  }
};

/// frob_root_power(f, ceil(c p^e), e) for e = 1..e_max.
inline TestIdealChain test_ideal_chain(const Polynomial& f, const Rational& c, unsigned e_max) {
  if (c.sign() <= 0) throw std::invalid_argument("test_ideal_chain: c must be positive");
  if (e_max == 0) throw std::invalid_argument("test_ideal_chain: e_max must be positive");
  TestIdealChain out{f, c, {}, false};
  for (unsigned e = 1; e <= e_max; ++e) {
    BigInt r = (c * Rational(BigInt(checked_pow(f.p(), e, kMaxExponent)))).ceil();
    out.levels.push_back(frob_root_power(f, r.convert_to<std::uint64_t>(), e));
  }
  out.stabilized = out.levels.size() >= 2 && out.levels[out.levels.size() - 1].gb == out.levels[out.levels.size() - 2].gb;
  return out;
}

struct JumpEntry {
  std::optional<Rational> c;  // candidate, present when verified at every level
  ThresholdEstimate estimate;
  GroebnerBasis J;
  std::vector<NuRecord> nu;   // nu^{J}_f(p^e), e = 1..verified_to_e
  std::vector<std::uint64_t> jump_exponent;  // r at which J appears at each level
  unsigned verified_to_e = 0;
  bool stabilized = false;
  bool flagged = false;
  std::string note;
};

struct JumpChain {
  Polynomial f;
  std::uint32_t p = 0;
  unsigned e_max = 0;
  std::vector<JumpEntry> entries;
};

namespace detail {

// Smallest r in (lo, hi] with root(f^r, e) not containing J, and that root.
// Root ideals shrink as r grows, so the predicate is monotone.
inline std::pair<std::uint64_t, GroebnerBasis> first_drop(const Polynomial& f, const std::optional<GroebnerBasis>& J,
                                                          std::uint64_t lo, std::uint64_t hi, unsigned e) {
  auto drops = [&](const GroebnerBasis& root) { return J ? !contains(root, J->ideal()) : !root.is_unit(); };
  RootIdeal top = frob_root_power(f, hi, e);
  if (!drops(top.gb)) throw std::logic_error("jump_chain: no drop below the safety bound");
  GroebnerBasis best = top.gb;
  while (hi - lo > 1) {
    std::uint64_t mid = lo + (hi - lo) / 2;
    RootIdeal m = frob_root_power(f, mid, e);
    if (drops(m.gb)) {
      hi = mid;
      best = m.gb;
    } else {
      lo = mid;
    }
  }
  return {hi, best};
}

}  // namespace detail

/// First `count` entries (c_i, J_i). J_1 is the root ideal just past
/// nu_f^m(p^e); J_{i+1} is the first root ideal at r > nu^{J_i}(p^e) that no
/// longer contains J_i. c_i is the verified bracket guess for nu^{J_i}.
inline JumpChain jump_chain(const Polynomial& f, unsigned e_max, unsigned count) {
  if (f.is_zero()) throw std::invalid_argument("jump_chain: f is zero");
  if (f.coeff(Monomial{})) throw std::domain_error("jump_chain: f must lie in the maximal ideal");
  if (e_max == 0 || count == 0) throw std::invalid_argument("jump_chain: e_max and count must be positive");
  const std::uint32_t p = f.p();
  JumpChain chain{f, p, e_max, {}};

  // nu values of the previous ideal; for i = 0 this is nu^m, since the root is
  // proper exactly when f^r lies in m^{[q]}.
  std::vector<NuRecord> prev_nu = nu_principal_chain(f, Ideal::maximal(f.ambient()), e_max);
  std::optional<GroebnerBasis> prev_J;

  for (unsigned i = 0; i < count; ++i) {
    std::vector<GroebnerBasis> levels;
    std::vector<std::uint64_t> rs;
    for (unsigned e = 1; e <= e_max; ++e) {
      std::uint64_t q = checked_pow(p, e, kMaxExponent);
      std::uint64_t lo = prev_nu[e - 1].nu;
      auto [r, gb] = detail::first_drop(f, prev_J, lo, lo + 1 + q, e);
      rs.push_back(r);
      levels.push_back(std::move(gb));
    }
    JumpEntry entry{std::nullopt, {Interval(0, 1), std::nullopt, 0}, levels.back(), {}, rs, 0, false, false, ""};
    entry.stabilized = e_max == 1 || levels[e_max - 1] == levels[e_max - 2];
    if (!entry.stabilized) {
      entry.flagged = true;
      entry.note = "root ideals did not stabilize by e=" + std::to_string(e_max);
      chain.entries.push_back(std::move(entry));
      break;
    }
    if (prev_J && !(contains(*prev_J, entry.J.ideal()) && !contains(entry.J, prev_J->ideal())))
      throw std::logic_error("jump_chain: emitted ideals are not strictly descending");

    entry.nu = nu_principal_chain(f, entry.J.ideal(), e_max, "J" + std::to_string(i + 1));
    entry.estimate = fpt_bracket(entry.nu);
    entry.c = entry.estimate.guess;
    entry.verified_to_e = entry.estimate.verified_to_e;
    if (!entry.c) {
      entry.flagged = true;
      entry.note = "no bracket guess reproduces every level";
    } else if (!chain.entries.empty() && chain.entries.back().c && !(*chain.entries.back().c < *entry.c)) {
      entry.flagged = true;
      entry.note = "candidate does not increase";
    }
    prev_nu = entry.nu;
    prev_J = entry.J;
    chain.entries.push_back(std::move(entry));
  }
  return chain;
}

/// nu_i(e) = nu^{J_i}_f(p^e).
inline std::uint64_t nu_i(const JumpChain& chain, std::size_t i, unsigned e) {
  if (i == 0 || i > chain.entries.size())
    throw std::out_of_range("nu_i: chain has " + std::to_string(chain.entries.size()) + " entries, asked for " +
                            std::to_string(i));
  const JumpEntry& entry = chain.entries[i - 1];
  if (e >= 1 && e <= entry.nu.size()) return entry.nu[e - 1].nu;
  return nu_principal_chain(chain.f, entry.J.ideal(), e, "J" + std::to_string(i)).back().nu;
}

}  // namespace fthresh
