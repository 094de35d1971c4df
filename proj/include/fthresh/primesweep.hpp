#pragma once

// Multi-prime sweeps of nu, per-residue-class polynomial fits, and the
// b-function congruence check.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "fthresh/exactnum.hpp"
#include "fthresh/idealkit.hpp"
#include "fthresh/nucore.hpp"
#include "fthresh/polyring.hpp"

namespace fthresh {

struct SweepSpec {
  std::vector<std::string> a_gens;  // integer-coefficient polynomial texts
  std::vector<std::string> J_gens;  // empty: the maximal ideal
  std::vector<std::string> variables;  // empty: inferred from the texts
  unsigned e = 1;
  std::vector<std::uint32_t> primes;
  std::vector<std::uint32_t> exclude;
  unsigned jobs = 1;
};

struct SweepFailure {
  std::uint32_t p;
  std::string reason;
  friend bool operator==(const SweepFailure&, const SweepFailure&) = default;
};

/// One row per (p, e); rows sorted by (p, e).
struct NuTable {
  std::vector<NuRecord> rows;
  std::vector<SweepFailure> failures;  // excluded or failed primes, sorted by p

  std::vector<std::uint32_t> primes() const {
    std::vector<std::uint32_t> out;
    for (const auto& r : rows)
      if (out.empty() || out.back() != r.p) out.push_back(r.p);
    return out;
  }
  std::optional<std::uint64_t> nu(std::uint32_t p, unsigned e) const {
    for (const auto& r : rows)
      if (r.p == p && r.e == e) return r.nu;
    return std::nullopt;
  }
  void sort() {
    std::sort(rows.begin(), rows.end(), [](const NuRecord& a, const NuRecord& b) {
      return std::tie(a.p, a.e, a.J_label) < std::tie(b.p, b.e, b.J_label);
    });
    std::sort(failures.begin(), failures.end(), [](const SweepFailure& a, const SweepFailure& b) {
      return std::tie(a.p, a.reason) < std::tie(b.p, b.reason);
    });
  }
};

/// Inclusive range with explicit exclusions.
inline std::vector<std::uint32_t> prime_list(std::uint32_t lo, std::uint32_t hi, const std::vector<std::uint32_t>& exclude = {}) {
  std::vector<std::uint32_t> out;
  for (auto p : primes_in_range(lo, hi))
    if (std::find(exclude.begin(), exclude.end(), p) == exclude.end()) out.push_back(p);
  return out;
}

/// Runs `fn(i)` for i in [0, n) on up to `jobs` threads.
template <class Fn>
void parallel_for(std::size_t n, unsigned jobs, Fn&& fn) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(n)));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr first_error;
  std::mutex err_mu;
  for (unsigned t = 0; t < jobs; ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < n;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mu);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

/// nu over every prime of the spec at e' = 1..e. Primes dividing a nonzero
/// input coefficient are excluded rather than silently reduced.
inline NuTable sweep(const SweepSpec& spec) {
  if (spec.a_gens.empty()) throw std::invalid_argument("sweep: no polynomial given");
  if (spec.e == 0) throw std::invalid_argument("sweep: e must be positive");
  std::vector<std::string> texts = spec.a_gens;
  texts.insert(texts.end(), spec.J_gens.begin(), spec.J_gens.end());
  std::vector<std::string> vars = spec.variables.empty() ? infer_variables(texts) : spec.variables;
  if (vars.empty()) throw std::invalid_argument("sweep: no variables");
  std::vector<IntPoly> a, J;
  for (const auto& t : spec.a_gens) a.push_back(parse_int_poly(t, vars));
  for (const auto& t : spec.J_gens) J.push_back(parse_int_poly(t, vars));

  NuTable table;
  std::vector<std::uint32_t> work;
  for (auto p : spec.primes) {
    if (!is_prime(p)) throw std::invalid_argument("sweep: " + std::to_string(p) + " is not prime");
    if (std::find(spec.exclude.begin(), spec.exclude.end(), p) != spec.exclude.end()) {
      table.failures.push_back({p, "excluded by user"});
      continue;
    }
    bool bad = false;
    for (const auto* list : {&a, &J})
      for (const auto& g : *list) bad = bad || g.loses_terms_mod(p);
    if (bad) {
      table.failures.push_back({p, "bad prime: divides an input coefficient"});
      continue;
    }
    work.push_back(p);
  }
  std::sort(work.begin(), work.end());
  work.erase(std::unique(work.begin(), work.end()), work.end());
  if (work.empty()) throw std::invalid_argument("sweep: all primes excluded");

  std::vector<std::vector<NuRecord>> results(work.size());
  std::vector<std::optional<std::string>> errors(work.size());
  parallel_for(work.size(), spec.jobs, [&](std::size_t i) {
    try {
      Ambient amb(vars, work[i]);
      std::vector<Polynomial> ag;
      for (const auto& g : a) ag.push_back(g.reduce(amb));
      Ideal Jp = Ideal::maximal(amb);
      if (!J.empty()) {
        std::vector<Polynomial> jg;
        for (const auto& g : J) jg.push_back(g.reduce(amb));
        Jp = Ideal(amb, std::move(jg));
      }
      if (ag.size() == 1) {
        results[i] = nu_principal_chain(ag[0], Jp, spec.e);
      } else {
        std::string label = ideal_label(groebner(Jp));
        for (unsigned e = 1; e <= spec.e; ++e)
          results[i].push_back({work[i], e, label, nu_general(ag, Jp, checked_pow(work[i], e, kMaxExponent))});
      }
    } catch (const std::exception& ex) {
      errors[i] = ex.what();
    }
  });
  for (std::size_t i = 0; i < work.size(); ++i) {
    if (errors[i]) table.failures.push_back({work[i], *errors[i]});
    for (auto& r : results[i]) table.rows.push_back(std::move(r));
  }
  table.sort();
  return table;
}

enum class FitStatus { ExactFit, Inconsistent, InsufficientData };

inline std::string to_string(FitStatus s) {
  switch (s) {
    case FitStatus::ExactFit: return "exact-fit";
    case FitStatus::Inconsistent: return "inconsistent";
    case FitStatus::InsufficientData: return "insufficient-data";
  }
  return "?";
}

struct FitResult {
  std::uint32_t N = 1;
  std::uint32_t j = 0;
  unsigned e = 1;
  RationalPoly poly;  // P_j, ascending coefficients
  std::vector<std::uint32_t> support;
  std::vector<std::uint32_t> holdout;
  FitStatus status = FitStatus::InsufficientData;
  std::optional<std::uint32_t> violating_prime;
  std::optional<Rational> candidate_root;  // P_j(0), only for exact fits
};

/// Interpolates nu(p^e) = P(p) on the first e+1 primes p = j mod N and
/// checks every other prime of the class.
inline FitResult fit_residue_class(const NuTable& table, std::uint32_t N, std::uint32_t j, unsigned e) {
  if (N == 0) throw std::invalid_argument("fit: modulus must be positive");
  if (e == 0) throw std::invalid_argument("fit: e must be positive");
  j %= N;
  if (std::gcd(j, N) != 1) throw std::invalid_argument("fit: residue " + std::to_string(j) + " is not coprime to " + std::to_string(N));
  FitResult out;
  out.N = N;
  out.j = j;
  out.e = e;
  std::vector<std::pair<std::uint32_t, std::uint64_t>> pts;
  for (const auto& r : table.rows)
    if (r.e == e && r.p % N == j && (pts.empty() || pts.back().first != r.p)) pts.push_back({r.p, r.nu});
  std::sort(pts.begin(), pts.end());
  if (pts.size() < e + 2) {
    for (const auto& [p, nu] : pts) out.support.push_back(p);
    return out;
  }
  // Lagrange interpolation through the first e+1 points.
  RationalPoly P;
  for (std::size_t a = 0; a <= e; ++a) {
    RationalPoly basis = RationalPoly::constant(Rational(BigInt(pts[a].second)));
    for (std::size_t b = 0; b <= e; ++b) {
      if (a == b) continue;
      Rational den = Rational(pts[a].first) - Rational(pts[b].first);
      basis = basis * RationalPoly({-Rational(pts[b].first) / den, Rational(1) / den});
    }
    P = P + basis;
  }
  out.poly = P;
  out.status = FitStatus::ExactFit;
  for (std::size_t a = 0; a < pts.size(); ++a) {
    (a <= e ? out.support : out.holdout).push_back(pts[a].first);
    if (a > e && P(Rational(pts[a].first)) != Rational(BigInt(pts[a].second)) && out.status == FitStatus::ExactFit) {
      out.status = FitStatus::Inconsistent;
      out.violating_prime = pts[a].first;
    }
  }
  if (out.status == FitStatus::ExactFit) out.candidate_root = P(Rational(0));
  return out;
}

/// Fits for every class coprime to N.
inline std::vector<FitResult> fit_all_classes(const NuTable& table, std::uint32_t N, unsigned e) {
  std::vector<FitResult> out;
  for (std::uint32_t j = 0; j < N; ++j)
    if (std::gcd(j, N) == 1) out.push_back(fit_residue_class(table, N, j, e));
  return out;
}

/// Smallest N <= max_N where every coprime class has enough primes and fits exactly.
inline std::optional<std::uint32_t> suggest_modulus(const NuTable& table, unsigned e, std::uint32_t max_N = 60) {
  for (std::uint32_t N = 1; N <= max_N; ++N) {
    bool ok = true;
    for (const auto& fit : fit_all_classes(table, N, e))
      if (fit.status != FitStatus::ExactFit) {
        ok = false;
        break;
      }
    if (ok) return N;
  }
  return std::nullopt;
}

struct RootWitness {
  std::uint32_t N, j;
  unsigned e;
  friend bool operator==(const RootWitness&, const RootWitness&) = default;
};

struct RootCandidate {
  Rational root;
  std::vector<RootWitness> witnesses;
};

/// Deduplicated P_j(0) over exact fits, ascending, each with its witnesses.
inline std::vector<RootCandidate> root_candidates(const std::vector<FitResult>& fits) {
  std::map<Rational, std::vector<RootWitness>> acc;
  for (const auto& f : fits)
    if (f.status == FitStatus::ExactFit && f.candidate_root) acc[*f.candidate_root].push_back({f.N, f.j, f.e});
  std::vector<RootCandidate> out;
  for (auto& [r, w] : acc) out.push_back({r, std::move(w)});
  return out;
}

enum class BspStatus { Pass, Violation, Skipped };

inline std::string to_string(BspStatus s) {
  switch (s) {
    case BspStatus::Pass: return "pass";
    case BspStatus::Violation: return "violation";
    case BspStatus::Skipped: return "skipped";
  }
  return "?";
}

struct BspRow {
  std::uint32_t p;
  unsigned e;
  std::uint64_t nu;
  Rational value;  // b(nu) in Q
  BspStatus status;
};

struct BspReport {
  std::vector<BspRow> rows;
  std::size_t violations() const {
    return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const BspRow& r) { return r.status == BspStatus::Violation; }));
  }
  std::size_t passes() const {
    return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const BspRow& r) { return r.status == BspStatus::Pass; }));
  }
};

/// For every row, b(nu) must vanish mod p. Rows whose prime divides a
/// coefficient denominator of b are skipped.
inline BspReport bsp_congruence_check(const RationalPoly& b, const NuTable& table) {
  BspReport out;
  for (const auto& r : table.rows) {
    bool skip = false;
    for (const auto& c : b.coefficients())
      if (c.denominator() % r.p == 0) skip = true;
    Rational v = b(Rational(BigInt(r.nu)));
    BspStatus st = BspStatus::Skipped;
    if (!skip) st = v.numerator() % r.p == 0 ? BspStatus::Pass : BspStatus::Violation;
    out.rows.push_back({r.p, r.e, r.nu, v, st});
  }
  return out;
}

enum class ReferenceVerdict { Agrees, Disagrees, ReferenceNonIntegral };

inline std::string to_string(ReferenceVerdict v) {
  switch (v) {
    case ReferenceVerdict::Agrees: return "agrees";
    case ReferenceVerdict::Disagrees: return "disagrees";
    case ReferenceVerdict::ReferenceNonIntegral: return "reference-non-integral";
  }
  return "?";
}

/// Compares a computed nu with a reference closed form. A non-integral
/// reference cannot be a nu value at all, so it is flagged separately.
inline ReferenceVerdict reference_check(std::uint64_t computed, const Rational& reference) {
  if (!reference.is_integer()) return ReferenceVerdict::ReferenceNonIntegral;
  return reference == Rational(BigInt(computed)) ? ReferenceVerdict::Agrees : ReferenceVerdict::Disagrees;
}

struct LctMonitorRow {
  std::uint32_t p;
  Rational upper;  // (nu(p)+1)/p
  Rational lct;
  bool upper_within;  // upper end <= lct + 1/p
};

/// Level-1 bracket ends compared against an lct value, as a monitored report.
inline std::vector<LctMonitorRow> lct_monitor(const NuTable& table, const Rational& lct) {
  std::vector<LctMonitorRow> out;
  for (const auto& r : table.rows) {
    if (r.e != 1) continue;
    Rational upper(BigInt(r.nu) + 1, BigInt(r.p));
    out.push_back({r.p, upper, lct, upper <= lct + Rational(BigInt(1), BigInt(r.p))});
  }
  return out;
}

}  // namespace fthresh
