#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fthresh/cli/command.hpp"
#include "fthresh/cli/io.hpp"
#include "fthresh/cli/report.hpp"
#include "fthresh/frobroot.hpp"
#include "fthresh/idealkit.hpp"
#include "fthresh/newton.hpp"
#include "fthresh/nucore.hpp"
#include "fthresh/primesweep.hpp"

namespace fthresh::cli {

inline constexpr const char* kVersion = "1.0.0";

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitBspViolation = 3;
inline constexpr int kExitParse = 4;
inline constexpr int kExitDomain = 5;
inline constexpr int kExitIo = 6;
inline constexpr int kExitInternal = 70;

namespace detail {

inline json rational_cell(const Rational& r) { return r.str(); }

inline std::string join(const std::vector<std::string>& xs, const std::string& sep = ",") {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
  return out;
}

template <class T>
std::string join_nums(const std::vector<T>& xs) {
  std::vector<std::string> s;
  for (const auto& x : xs) s.push_back(std::to_string(x));
  return join(s);
}

inline std::vector<std::string> resolve_vars(const Command& cmd) {
  if (!cmd.vars.empty()) return cmd.vars;
  std::vector<std::string> texts = cmd.poly;
  texts.insert(texts.end(), cmd.ideal.begin(), cmd.ideal.end());
  auto v = infer_variables(texts);
  if (v.empty()) throw std::invalid_argument("no variables found; pass --vars");
  return v;
}

struct Ring {
  Ambient amb;
  std::vector<Polynomial> a;
  Ideal J;
};

// Parses --poly / --ideal over F_p, refusing primes that would erase a coefficient.
inline Ring build_ring(const Command& cmd, std::uint32_t p) {
  Ambient amb(resolve_vars(cmd), p);
  auto load = [&](const std::vector<std::string>& texts) {
    std::vector<Polynomial> out;
    for (const auto& t : texts) {
      IntPoly ip = parse_int_poly(t, amb.variables());
      if (ip.loses_terms_mod(p))
        throw std::domain_error("p = " + std::to_string(p) + " divides a coefficient of '" + t + "'");
      out.push_back(ip.reduce(amb));
    }
    return out;
  };
  auto a = load(cmd.poly);
  Ideal J = cmd.ideal.empty() ? Ideal::maximal(amb) : Ideal(amb, load(cmd.ideal));
  return {amb, std::move(a), std::move(J)};
}

inline json base_provenance(const Command& cmd) {
  json in = json::object();
  if (!cmd.poly.empty()) in["poly"] = cmd.poly;
  if (!cmd.ideal.empty()) in["ideal"] = cmd.ideal;
  if (!cmd.vars.empty()) in["vars"] = cmd.vars;
  if (cmd.p) in["p"] = *cmd.p;
  in["e"] = cmd.e;
  if (!cmd.primes_text.empty()) in["primes"] = cmd.primes_text;
  if (!cmd.exclude.empty()) in["exclude"] = cmd.exclude;
  if (cmd.mod) in["mod"] = *cmd.mod;
  if (cmd.mod_auto) in["mod"] = "auto";
  if (cmd.res) in["res"] = *cmd.res;
  if (!cmd.table.empty()) in["table"] = cmd.table;
  if (!cmd.b.empty()) in["b"] = cmd.b;
  return {{"tool", "fthresh"}, {"version", kVersion}, {"inputs", in}};
}

inline void nu_table_rows(Table& t, const std::vector<NuRecord>& rows) {
  for (const auto& r : rows)
    t.add({r.p, r.e, r.q(), r.J_label, r.nu, rational_cell(r.nu_over_q())});
}

inline const std::vector<std::string> kNuColumns{"p", "e", "q", "J_label", "nu", "nu_over_q"};

inline std::string candidate_status(const ThresholdEstimate& est) {
  if (est.guess) return "candidate (verified to e=" + std::to_string(est.verified_to_e) + ")";
  return "no consistent candidate";
}

inline void fit_tables(Report& rep, const std::vector<FitResult>& fits) {
  auto& ft = rep.table("fits", {"N", "j", "e", "status", "P", "support", "holdout", "violating_prime", "root"});
  for (const auto& f : fits)
    ft.add({f.N, f.j, f.e, to_string(f.status), f.status == FitStatus::InsufficientData ? json() : json(f.poly.str("t")),
            join_nums(f.support), join_nums(f.holdout), f.violating_prime ? json(*f.violating_prime) : json(),
            f.candidate_root ? json(f.candidate_root->str()) : json()});
  auto roots = root_candidates(fits);
  auto& rt = rep.table("roots", {"root", "neg_root", "witnesses"});
  std::vector<std::string> listed;
  for (const auto& r : roots) {
    std::vector<std::string> w;
    for (const auto& x : r.witnesses)
      w.push_back("N=" + std::to_string(x.N) + ",j=" + std::to_string(x.j) + ",e=" + std::to_string(x.e));
    rt.add({r.root.str(), (-r.root).str(), join(w, ";")});
    listed.push_back(r.root.str());
  }
  rep.summary["roots"] = listed;
}

// ---------------------------------------------------------------------------

inline Report run_nu(const Command& cmd) {
  Report rep{"nu"};
  Ring ring = build_ring(cmd, *cmd.p);
  auto& t = rep.table("nu", kNuColumns);
  if (ring.a.size() == 1) {
    nu_table_rows(t, nu_principal_chain(ring.a[0], ring.J, cmd.e));
  } else {
    std::string label = ideal_label(groebner(ring.J));
    std::vector<NuRecord> rows;
    for (unsigned e = 1; e <= cmd.e; ++e)
      rows.push_back({*cmd.p, e, label, nu_general(ring.a, ring.J, checked_pow(*cmd.p, e, kMaxExponent))});
    nu_table_rows(t, rows);
  }
  return rep;
}

inline Report run_fpt(const Command& cmd) {
  Report rep{"fpt"};
  Ring ring = build_ring(cmd, *cmd.p);
  const Polynomial& f = ring.a[0];
  auto records = nu_principal_chain(f, ring.J, cmd.e);
  nu_table_rows(rep.table("nu", kNuColumns), records);
  auto est = fpt_bracket(records);
  auto& et = rep.table("estimate", {"J_label", "e", "bracket_lo", "bracket_hi", "guess", "status"});
  et.add({records.back().J_label, records.back().e, rational_cell(est.bracket.lo()), rational_cell(est.bracket.hi()),
          est.guess ? json(est.guess->str()) : json(), candidate_status(est)});
  if (records.size() >= 2) {
    auto d = nu_defect_sequence(records);
    auto& dt = rep.table("defects", {"e", "defect"});
    for (std::size_t i = 0; i < d.defects.size(); ++i) dt.add({d.first_e + i, d.defects[i].str()});
    rep.summary["defect_status"] = d.status();
    rep.summary["defect_period"] = d.period ? json(*d.period) : json();
    rep.summary["defect_preperiod"] = d.preperiod ? json(*d.preperiod) : json();
  }
  if (records.front().J_label == "m") {
    auto& ft = rep.table("fedder", {"e", "nu_is_q_minus_1"});
    for (const auto& r : records) ft.add({r.e, r.nu + 1 == r.q()});
  }
  if (!cmd.shift.empty()) {
    auto sc = pt_shift_check(f, ring.J, cmd.shift == "up" ? ShiftDirection::Up : ShiftDirection::Down, cmd.e);
    auto& st = rep.table("shift", {"direction", "e", "q", "nu_base", "nu_shifted", "holds"});
    for (std::size_t i = 0; i < sc.base.size(); ++i)
      st.add({cmd.shift, sc.base[i].e, sc.base[i].q(), sc.base[i].nu,
              sc.shifted.empty() ? json() : json(sc.shifted[i].nu), static_cast<bool>(sc.level_holds[i])});
    rep.summary["shift_holds"] = sc.holds();
    rep.summary["shift_clamped"] = sc.clamped;
    if (!sc.holds()) rep.exit_code = kExitInternal;
  }
  return rep;
}

inline Report run_mono(const Command& cmd) {
  Report rep{"mono"};
  if (!cmd.poly.empty() && !cmd.ideal.empty()) throw UsageError("mono: pass either --poly or --ideal, not both");
  std::vector<std::string> vars = resolve_vars(cmd);
  ExponentMatrix exps;
  std::vector<IntPoly> sources;
  if (!cmd.poly.empty()) {
    if (cmd.poly.size() != 1) throw UsageError("mono: --poly must be a single polynomial");
    IntPoly f = parse_int_poly(cmd.poly[0], vars);
    exps = f.exponents();
    sources.push_back(f);
  } else {
    for (const auto& g : cmd.ideal) {
      IntPoly ip = parse_int_poly(g, vars);
      if (ip.terms().size() != 1) throw std::domain_error("mono: --ideal generator '" + g + "' is not a monomial");
      exps.push_back(ip.terms().begin()->first);
    }
  }
  for (const auto& u : exps)
    if (std::all_of(u.begin(), u.end(), [](std::uint32_t x) { return x == 0; }))
      throw std::domain_error("mono: constant term; the polyhedron would contain the origin");
  const JumpRole role = !cmd.role.empty() ? (cmd.role == "ideal" ? JumpRole::Ideal : JumpRole::Hypersurface)
                                          : (cmd.poly.empty() ? JumpRole::Ideal : JumpRole::Hypersurface);
  NewtonPolyhedron P(exps);
  SimplexQ Q(exps);
  rep.summary["role"] = role == JumpRole::Ideal ? "ideal" : "hypersurface";
  rep.summary["affinely_independent"] = Q.affinely_independent();

  auto& ft = rep.table("facets", {"inequality", "w", "c"});
  for (const auto& f : P.facets()) {
    std::vector<std::string> w;
    for (const auto& x : f.w) w.push_back(x.str());
    ft.add({f.str(vars), join(w), f.c.str()});
  }
  if (cmd.lct) rep.table("lct", {"lct"}).add({lct_monomial(Q).str()});
  if (cmd.jumps) {
    Rational bound = Rational::parse(cmd.bound);
    auto& jt = rep.table("jumps", {"jumping_number"});
    for (const auto& j : jumping_numbers_monomial(P, bound, role)) jt.add({j.str()});
  }
  if (!cmd.multiplier.empty()) {
    Rational alpha = Rational::parse(cmd.multiplier);
    Ambient amb(vars, 2);
    auto M = howald_multiplier(P, amb, alpha);
    auto& mt = rep.table("multiplier", {"alpha", "generator"});
    for (const auto& g : M.generators()) mt.add({alpha.str(), Polynomial::monomial(amb, g).str()});
  }
  if (cmd.nu_lattice) {
    std::vector<std::uint32_t> primes = cmd.primes;
    if (cmd.p) primes.insert(primes.begin(), *cmd.p);
    auto& lt = rep.table("nu_lattice", {"p", "nu", "status"});
    for (auto p : primes) {
      bool bad = false;
      for (const auto& s : sources) bad = bad || s.loses_terms_mod(p);
      if (!Q.affinely_independent()) lt.add({p, json(), "not applicable"});
      else if (bad) lt.add({p, json(), "bad prime"});
      else lt.add({p, nu_p_via_lattice(Q, p), "applicable"});
    }
  }
  return rep;
}

inline Report run_jump(const Command& cmd) {
  Report rep{"jump"};
  Ring ring = build_ring(cmd, *cmd.p);
  if (!cmd.ideal.empty()) throw UsageError("jump: --ideal is not used; the chain starts from the maximal ideal");
  auto chain = jump_chain(ring.a[0], cmd.e, cmd.count);
  auto& ct = rep.table("chain", {"i", "c", "bracket_lo", "bracket_hi", "verified_to_e", "J", "stabilized", "flagged", "note"});
  auto& nt = rep.table("nu_i", {"i", "e", "nu"});
  for (std::size_t i = 0; i < chain.entries.size(); ++i) {
    const auto& en = chain.entries[i];
    bool have = !en.nu.empty();
    ct.add({i + 1, en.c ? json(en.c->str()) : json(), have ? json(en.estimate.bracket.lo().str()) : json(),
            have ? json(en.estimate.bracket.hi().str()) : json(), en.verified_to_e, en.J.str(), en.stabilized,
            en.flagged, en.note});
    for (const auto& r : en.nu) nt.add({i + 1, r.e, r.nu});
  }
  return rep;
}

inline NuTable run_sweep_table(const Command& cmd) {
  SweepSpec spec;
  spec.a_gens = cmd.poly;
  spec.J_gens = cmd.ideal;
  spec.variables = cmd.vars;
  spec.e = cmd.e;
  spec.primes = cmd.primes;
  spec.exclude = cmd.exclude;
  spec.jobs = cmd.jobs;
  return sweep(spec);
}

inline void add_table_rows(Report& rep, const NuTable& table) {
  auto& t = rep.table("nu", kNuColumns);
  nu_table_rows(t, table.rows);
  auto& ft = rep.table("failures", {"p", "reason"});
  for (const auto& f : table.failures) ft.add({f.p, f.reason});
}

inline Report run_sweep(const Command& cmd) {
  Report rep{"sweep"};
  NuTable table = run_sweep_table(cmd);
  add_table_rows(rep, table);
  if (cmd.mod || cmd.mod_auto) {
    std::vector<FitResult> fits;
    for (unsigned e = 1; e <= cmd.e; ++e) {
      std::optional<std::uint32_t> N = cmd.mod;
      if (!N) N = suggest_modulus(table, e, cmd.max_mod);
      rep.summary["modulus_e" + std::to_string(e)] = N ? json(*N) : json("none found");
      if (!N) continue;
      if (cmd.res) fits.push_back(fit_residue_class(table, *N, *cmd.res, e));
      else for (auto& f : fit_all_classes(table, *N, e)) fits.push_back(std::move(f));
    }
    fit_tables(rep, fits);
  }
  return rep;
}

inline Report run_fit(const Command& cmd) {
  Report rep{"fit"};
  NuTable table = load_nu_table(cmd.table);
  std::optional<std::uint32_t> N = cmd.mod;
  if (!N) N = suggest_modulus(table, cmd.e, cmd.max_mod);
  rep.summary["modulus"] = N ? json(*N) : json("none found");
  std::vector<FitResult> fits;
  if (N) {
    if (cmd.res) fits.push_back(fit_residue_class(table, *N, *cmd.res, cmd.e));
    else fits = fit_all_classes(table, *N, cmd.e);
  }
  fit_tables(rep, fits);
  return rep;
}

inline Report run_bsp(const Command& cmd) {
  Report rep{"bsp-check"};
  RationalPoly b = load_b(cmd.b);
  NuTable table = cmd.table.empty() ? run_sweep_table(cmd) : load_nu_table(cmd.table);
  auto report = bsp_congruence_check(b, table);
  auto& t = rep.table("bsp", {"p", "e", "nu", "b_of_nu", "status"});
  for (const auto& r : report.rows) t.add({r.p, r.e, r.nu, r.value.str(), to_string(r.status)});
  rep.summary["b"] = b.str("s");
  rep.summary["passes"] = report.passes();
  rep.summary["violations"] = report.violations();
  rep.summary["skipped"] = report.rows.size() - report.passes() - report.violations();
  if (report.violations()) rep.exit_code = kExitBspViolation;
  return rep;
}

}  // namespace detail

/// Dispatches to the owning module. Domain errors propagate as exceptions.
inline Report execute(const Command& cmd) {
  Report rep{cmd.verb};
  if (cmd.verb == "nu") rep = detail::run_nu(cmd);
  else if (cmd.verb == "fpt") rep = detail::run_fpt(cmd);
  else if (cmd.verb == "mono") rep = detail::run_mono(cmd);
  else if (cmd.verb == "jump") rep = detail::run_jump(cmd);
  else if (cmd.verb == "sweep") rep = detail::run_sweep(cmd);
  else if (cmd.verb == "fit") rep = detail::run_fit(cmd);
  else if (cmd.verb == "bsp-check") rep = detail::run_bsp(cmd);
  else throw UsageError("unknown verb '" + cmd.verb + "'");
  rep.provenance = detail::base_provenance(cmd);
  return rep;
}

/// Maps an in-flight exception to an exit code and message.
inline int exit_code_for(const std::exception_ptr& ep, std::string& message) {
  try {
    std::rethrow_exception(ep);
  } catch (const UsageError& ex) {
    message = std::string("usage error: ") + ex.what();
    return kExitUsage;
  } catch (const ParseError& ex) {
    message = std::string("parse error: ") + ex.what();
    return kExitParse;
  } catch (const IoError& ex) {
    message = std::string("io error: ") + ex.what();
    return kExitIo;
  } catch (const WindowViolation& ex) {
    message = std::string("internal error: ") + ex.what();
    return kExitInternal;
  } catch (const std::domain_error& ex) {
    message = std::string("domain error: ") + ex.what();
    return kExitDomain;
  } catch (const std::invalid_argument& ex) {
    message = std::string("domain error: ") + ex.what();
    return kExitDomain;
  } catch (const std::out_of_range& ex) {
    message = std::string("domain error: ") + ex.what();
    return kExitDomain;
  } catch (const std::overflow_error& ex) {
    message = std::string("domain error: ") + ex.what();
    return kExitDomain;
  } catch (const std::exception& ex) {
    message = std::string("internal error: ") + ex.what();
    return kExitInternal;
  }
  message = "internal error";
  return kExitInternal;
}

/// Full pipeline used by the executable; returns the exit code.
inline int run(const std::vector<std::string>& argv, std::string& out, std::string& err) {
  try {
    Command cmd = parse_args(argv);
    Report rep = execute(cmd);
    std::string text = render(rep, cmd.format);
    if (!cmd.out.empty()) write_file(cmd.out, text);
    else out += text;
    return rep.exit_code;
  } catch (const HelpRequested& h) {
    out += h.what();
    return kExitOk;
  } catch (...) {
    std::string msg;
    int code = exit_code_for(std::current_exception(), msg);
    err += "fthresh: " + msg + "\n";
    return code;
  }
}

}  // namespace fthresh::cli
