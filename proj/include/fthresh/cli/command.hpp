#pragma once

#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "fthresh/exactnum.hpp"

namespace fthresh::cli {

inline const std::vector<std::string>& verbs() {
  static const std::vector<std::string> v{"nu", "fpt", "mono", "jump", "sweep", "fit", "bsp-check"};
  return v;
}

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// --help / --version; carries the text to print.
class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Command {
  std::string verb;
  std::vector<std::string> poly;   // generators of a (one entry: principal f)
  std::vector<std::string> ideal;  // generators of J (empty: maximal ideal)
  std::vector<std::string> vars;   // empty: inferred
  std::optional<std::uint32_t> p;
  unsigned e = 1;
  std::vector<std::uint32_t> primes;
  std::string primes_text;
  std::vector<std::uint32_t> exclude;
  std::optional<std::uint32_t> mod;
  bool mod_auto = false;
  std::optional<std::uint32_t> res;
  std::string table;
  std::string b;
  std::string format = "tsv";
  unsigned jobs = 1;
  std::string out;
  // verb-specific extras
  unsigned count = 3;
  bool lct = false;
  bool jumps = false;
  std::string bound = "1";
  std::string multiplier;
  bool nu_lattice = false;
  std::string role;
  std::string shift;
  std::uint32_t max_mod = 60;
};

namespace detail {

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  for (auto& x : out) {
    auto b = x.find_first_not_of(" \t");
    auto e = x.find_last_not_of(" \t");
    x = b == std::string::npos ? "" : x.substr(b, e - b + 1);
  }
  return out;
}

inline std::uint32_t parse_u32(const std::string& s, const std::string& flag) {
  try {
    std::size_t pos = 0;
    unsigned long v = std::stoul(s, &pos);
    if (pos != s.size() || v > std::numeric_limits<std::uint32_t>::max()) throw std::invalid_argument(s);
    return static_cast<std::uint32_t>(v);
  } catch (const std::exception&) {
    throw UsageError("malformed value '" + s + "' for " + flag);
  }
}

/// "a..b" (inclusive, sieved) or "p1,p2,...".
inline std::vector<std::uint32_t> parse_primes(const std::string& text) {
  auto dots = text.find("..");
  std::vector<std::uint32_t> out;
  if (dots != std::string::npos) {
    std::uint32_t lo = parse_u32(text.substr(0, dots), "--primes");
    std::uint32_t hi = parse_u32(text.substr(dots + 2), "--primes");
    if (lo > hi) throw UsageError("--primes range '" + text + "' is empty");
    out = primes_in_range(lo, hi);
  } else {
    for (const auto& x : split_list(text)) {
      std::uint32_t p = parse_u32(x, "--primes");
      if (!is_prime(p)) throw UsageError("--primes: " + x + " is not prime");
      out.push_back(p);
    }
  }
  if (out.empty()) throw UsageError("--primes '" + text + "' contains no primes");
  return out;
}

}  // namespace detail

/// Parses argv (argv[0] is the program name) into a validated Command.
inline Command parse_args(const std::vector<std::string>& argv) {
  CLI::App app{"F-thresholds over prime fields: nu, fpt brackets, test-ideal chains, prime sweeps"};
  app.set_version_flag("--version", "fthresh 1.0.0");
  app.require_subcommand(1);
  Command cmd;
  std::string poly, ideal, vars, exclude, mod;
  std::uint32_t p = 0;

  auto common = [&](CLI::App* s) {
    s->add_option("--vars", vars, "comma-separated variable names (default: inferred)");
    s->add_option("--format", cmd.format, "output format")->check(CLI::IsMember({"tsv", "json"}));
    s->add_option("--out", cmd.out, "write output to this file instead of stdout");
  };
  auto polyopts = [&](CLI::App* s) {
    s->add_option("--poly", poly, "polynomial f, or comma-separated generators of a");
    s->add_option("--ideal", ideal, "comma-separated generators of J (default: the maximal ideal)");
  };
  auto primeopt = [&](CLI::App* s) { s->add_option("-p", p, "prime characteristic"); };
  auto eopt = [&](CLI::App* s) { s->add_option("-e", cmd.e, "Frobenius level (p^e)")->check(CLI::Range(1u, 30u)); };
  auto rangeopts = [&](CLI::App* s) {
    s->add_option("--primes", cmd.primes_text, "prime range a..b or list p1,p2,...");
    s->add_option("--exclude", exclude, "comma-separated primes to skip");
    s->add_option("--jobs", cmd.jobs, "worker threads")->check(CLI::Range(1u, 256u));
  };
  auto modopts = [&](CLI::App* s) {
    s->add_option("--mod", mod, "modulus N, or 'auto'");
    s->add_option("--res", cmd.res, "residue class j (default: every class coprime to N)");
    s->add_option("--max-mod", cmd.max_mod, "largest N tried by --mod auto");
  };

  auto* nu = app.add_subcommand("nu", "nu_a^J(p^e) for e = 1..E");
  polyopts(nu); primeopt(nu); eopt(nu); common(nu);

  auto* fpt = app.add_subcommand("fpt", "threshold bracket, candidate, defect sequence");
  polyopts(fpt); primeopt(fpt); eopt(fpt); common(fpt);
  fpt->add_option("--shift", cmd.shift, "also check the ideal shift")->check(CLI::IsMember({"up", "down"}));

  auto* mono = app.add_subcommand("mono", "Newton polyhedron, lct, jumping numbers, lattice nu");
  polyopts(mono); primeopt(mono); common(mono);
  mono->add_option("--primes", cmd.primes_text, "primes for --nu-lattice");
  mono->add_flag("--lct", cmd.lct, "log canonical threshold");
  mono->add_flag("--jumps", cmd.jumps, "jumping numbers up to --bound");
  mono->add_option("--bound", cmd.bound, "upper bound for --jumps");
  mono->add_option("--multiplier", cmd.multiplier, "multiplier ideal at this exponent");
  mono->add_flag("--nu-lattice", cmd.nu_lattice, "nu_f(p) by the lattice formula");
  mono->add_option("--role", cmd.role, "jump semantics")->check(CLI::IsMember({"ideal", "hypersurface"}));

  auto* jump = app.add_subcommand("jump", "test-ideal jumping chain (c_i, J_i)");
  polyopts(jump); primeopt(jump); eopt(jump); common(jump);
  jump->add_option("--count", cmd.count, "number of chain entries")->check(CLI::Range(1u, 50u));

  auto* sw = app.add_subcommand("sweep", "nu over a range of primes");
  polyopts(sw); eopt(sw); rangeopts(sw); modopts(sw); common(sw);

  auto* fit = app.add_subcommand("fit", "per-class polynomial fits and root candidates");
  fit->add_option("--table", cmd.table, "nu table (JSON or TSV)");
  eopt(fit); modopts(fit); common(fit);

  auto* bsp = app.add_subcommand("bsp-check", "check b(nu) = 0 mod p on a nu table");
  bsp->add_option("--table", cmd.table, "nu table (JSON or TSV)");
  bsp->add_option("--b", cmd.b, "file holding b(s), or the expression itself");
  polyopts(bsp); eopt(bsp); rangeopts(bsp); common(bsp);

  std::vector<const char*> cargv;
  for (const auto& a : argv) cargv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(cargv.size()), cargv.data());
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help("", CLI::AppFormatMode::All));
  } catch (const CLI::CallForVersion&) {
    throw HelpRequested("fthresh 1.0.0\n");
  } catch (const CLI::ParseError& ex) {
    throw UsageError(ex.what());
  }
  for (auto* s : app.get_subcommands()) cmd.verb = s->get_name();

  if (!poly.empty()) cmd.poly = detail::split_list(poly);
  if (!ideal.empty()) cmd.ideal = detail::split_list(ideal);
  if (!vars.empty()) cmd.vars = detail::split_list(vars);
  if (!exclude.empty())
    for (const auto& x : detail::split_list(exclude)) cmd.exclude.push_back(detail::parse_u32(x, "--exclude"));
  if (!cmd.primes_text.empty()) cmd.primes = detail::parse_primes(cmd.primes_text);
  if (p) {
    if (!is_prime(p)) throw UsageError("-p " + std::to_string(p) + " is not prime");
    cmd.p = p;
  }
  if (!mod.empty()) {
    if (mod == "auto") cmd.mod_auto = true;
    else cmd.mod = detail::parse_u32(mod, "--mod");
    if (cmd.mod && *cmd.mod == 0) throw UsageError("--mod must be positive");
  }

  auto need = [&](bool ok, const std::string& flag) {
    if (!ok) throw UsageError(cmd.verb + ": missing required flag " + flag);
  };
  const std::string& v = cmd.verb;
  if (v == "nu" || v == "fpt" || v == "jump") {
    need(!cmd.poly.empty(), "--poly");
    need(cmd.p.has_value(), "-p");
    if ((v == "fpt" || v == "jump") && cmd.poly.size() != 1)
      throw UsageError(v + ": --poly must be a single polynomial");
  } else if (v == "mono") {
    need(!cmd.poly.empty() || !cmd.ideal.empty(), "--poly or --ideal");
    if (cmd.nu_lattice) need(cmd.p.has_value() || !cmd.primes.empty(), "-p or --primes");
  } else if (v == "sweep") {
    need(!cmd.poly.empty(), "--poly");
    need(!cmd.primes.empty(), "--primes");
    if (cmd.res) need(cmd.mod.has_value(), "--mod");
  } else if (v == "fit") {
    need(!cmd.table.empty(), "--table");
    need(cmd.mod.has_value() || cmd.mod_auto, "--mod");
    if (cmd.res && cmd.mod_auto) throw UsageError("fit: --res needs an explicit --mod");
  } else if (v == "bsp-check") {
    need(!cmd.b.empty(), "--b");
    if (cmd.table.empty()) {
      need(!cmd.poly.empty(), "--table or --poly");
      need(!cmd.primes.empty(), "--primes");
    }
  }
  return cmd;
}

/// Convenience overload for main().
inline Command parse_args(int argc, const char* const* argv) {
  return parse_args(std::vector<std::string>(argv, argv + argc));
}

}  // namespace fthresh::cli
