#pragma once

// Ideals over F_p: bracket powers, reduced Groebner bases, membership.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fthresh/exactnum.hpp"
#include "fthresh/polyring.hpp"

namespace fthresh {

class Ideal {
 public:
  Ideal(Ambient amb, std::vector<Polynomial> gens) : amb_(std::move(amb)) {
    for (auto& g : gens) {
      if (!(g.ambient() == amb_)) throw AmbientMismatch();
      if (!g.is_zero()) gens_.push_back(std::move(g));
    }
    if (gens_.empty()) throw std::invalid_argument("ideal needs at least one nonzero generator");
  }
  explicit Ideal(const Polynomial& f) : Ideal(f.ambient(), {f}) {}

  static Ideal maximal(const Ambient& amb) {
    std::vector<Polynomial> g;
    for (std::size_t i = 0; i < amb.nvars(); ++i) g.push_back(Polynomial::variable(amb, i));
    return Ideal(amb, std::move(g));
  }
  static Ideal unit(const Ambient& amb) { return Ideal(amb, {Polynomial::constant(amb, 1)}); }

  const Ambient& ambient() const { return amb_; }
  const std::vector<Polynomial>& generators() const { return gens_; }
  bool is_principal() const { return gens_.size() == 1; }

  /// f * J
  Ideal times(const Polynomial& f) const {
    std::vector<Polynomial> g;
    for (const auto& x : gens_) g.push_back(f * x);
    return Ideal(amb_, std::move(g));
  }

  std::string str() const {
    std::string out = "(";
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      if (i) out += ", ";
      out += gens_[i].str();
    }
    return out + ")";
  }

 private:
  Ambient amb_;
  std::vector<Polynomial> gens_;
};

/// Monomial ideal stored by its minimal generators.
class MonomialIdeal {
 public:
  MonomialIdeal(Ambient amb, std::vector<Monomial> gens) : amb_(std::move(amb)) {
    if (gens.empty()) throw std::invalid_argument("monomial ideal needs a generator");
    std::sort(gens.begin(), gens.end(), GrevlexLess{});
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    for (const auto& g : gens) {
      bool redundant = false;
      for (const auto& h : gens)
        if (!(h == g) && h.divides(g)) redundant = true;
      if (!redundant) gens_.push_back(g);
    }
  }
  static MonomialIdeal from_exponents(const Ambient& amb, const std::vector<std::vector<std::uint32_t>>& exps) {
    std::vector<Monomial> g;
    for (const auto& u : exps) {
      if (u.size() != amb.nvars()) throw std::invalid_argument("exponent vector length mismatch");
      g.push_back(Monomial::from(u));
    }
    return MonomialIdeal(amb, std::move(g));
  }

  const Ambient& ambient() const { return amb_; }
  const std::vector<Monomial>& generators() const { return gens_; }
  bool is_unit() const { return gens_.size() == 1 && gens_[0].is_one(); }

  Ideal to_ideal() const {
    std::vector<Polynomial> g;
    for (const auto& m : gens_) g.push_back(Polynomial::monomial(amb_, m));
    return Ideal(amb_, std::move(g));
  }

  friend bool operator==(const MonomialIdeal& a, const MonomialIdeal& b) {
    return a.amb_ == b.amb_ && a.gens_ == b.gens_;
  }

  std::string str() const { return to_ideal().str(); }

 private:
  Ambient amb_;
  std::vector<Monomial> gens_;
};

/// True iff some generator divides X^u.
inline bool monomial_contains(const MonomialIdeal& M, const Monomial& u) {
  for (const auto& g : M.generators())
    if (g.divides(u)) return true;
  return false;
}

inline bool monomial_contains(const MonomialIdeal& M, const std::vector<std::uint32_t>& u) {
  if (u.size() != M.ambient().nvars()) throw std::invalid_argument("exponent vector length mismatch");
  return monomial_contains(M, Monomial::from(u));
}

/// Reduced Groebner basis under grevlex: monic, inter-reduced, sorted by leading monomial.
class GroebnerBasis {
 public:
  GroebnerBasis(Ambient amb, std::vector<Polynomial> basis) : amb_(std::move(amb)), basis_(std::move(basis)) {
    std::sort(basis_.begin(), basis_.end(),
              [](const Polynomial& a, const Polynomial& b) { return grevlex_cmp(a.lm(), b.lm()) < 0; });
    monomial_ = std::all_of(basis_.begin(), basis_.end(), [](const Polynomial& g) { return g.is_monomial(); });
  }

  const Ambient& ambient() const { return amb_; }
  const std::vector<Polynomial>& basis() const { return basis_; }
  static constexpr const char* order() { return "grevlex"; }
  bool is_monomial() const { return monomial_; }
  bool is_unit() const { return basis_.size() == 1 && basis_[0].lm().is_one(); }
  Ideal ideal() const { return Ideal(amb_, basis_); }

  std::optional<MonomialIdeal> as_monomial_ideal() const {
    if (!monomial_) return std::nullopt;
    std::vector<Monomial> g;
    for (const auto& b : basis_) g.push_back(b.lm());
    return MonomialIdeal(amb_, std::move(g));
  }

  friend bool operator==(const GroebnerBasis& a, const GroebnerBasis& b) {
    return a.amb_ == b.amb_ && a.basis_ == b.basis_;
  }

  /// Generators joined by commas, for labels and serialization.
  std::string str() const {
    std::string out;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      if (i) out += ",";
      out += basis_[i].str();
    }
    return out;
  }

 private:
  Ambient amb_;
  std::vector<Polynomial> basis_;
  bool monomial_ = false;
};

// ---------------------------------------------------------------------------
// Reduction

namespace detail {

// Full reduction of f by the polynomials in `by` (not necessarily a GB).
inline Polynomial reduce_by(const Polynomial& f, const std::vector<Polynomial>& by) {
  const std::uint32_t p = f.p();
  if (f.is_zero() || by.empty()) return f;
  for (const auto& g : by)
    if (g.lm().is_one()) return Polynomial(f.ambient());

  bool all_monomial = std::all_of(by.begin(), by.end(), [](const Polynomial& g) { return g.is_monomial(); });
  if (all_monomial) {
    return f.filtered([&](const Monomial& m) {
      for (const auto& g : by)
        if (g.lm().divides(m)) return false;
      return true;
    });
  }

  std::map<Monomial, std::uint32_t, GrevlexGreater> work;
  for (const auto& t : f.terms()) work.emplace(t.m, t.c);
  std::vector<Term> rem;
  while (!work.empty()) {
    auto it = work.begin();
    Monomial m = it->first;
    std::uint32_t c = it->second;
    work.erase(it);
    const Polynomial* div = nullptr;
    for (const auto& g : by)
      if (g.lm().divides(m)) {
        div = &g;
        break;
      }
    if (!div) {
      rem.push_back({m, c});
      continue;
    }
    // subtract (c / lc) * X^{m - lm} * g
    std::uint32_t factor = mul_mod(c, inv_mod(div->lc(), p), p);
    std::uint32_t neg = (p - factor) % p;
    Monomial shift = m / div->lm();
    const auto& gt = div->terms();
    for (std::size_t k = 1; k < gt.size(); ++k) {
      Monomial mm = gt[k].m * shift;
      std::uint32_t add = mul_mod(gt[k].c, neg, p);
      auto [slot, inserted] = work.emplace(mm, add);
      if (!inserted) {
        slot->second = (slot->second + add) % p;
        if (slot->second == 0) work.erase(slot);
      }
    }
  }
  return Polynomial(f.ambient(), std::move(rem));
}

inline Polynomial spoly(const Polynomial& f, const Polynomial& g) {
  Monomial l = Monomial::lcm(f.lm(), g.lm());
  const std::uint32_t p = f.p();
  Polynomial a = f.shifted(l / f.lm(), inv_mod(f.lc(), p));
  return Polynomial::axpy(a, (p - inv_mod(g.lc(), p)) % p, l / g.lm(), g);
}

// Minimalize and inter-reduce a Groebner basis.
inline std::vector<Polynomial> reduce_basis(std::vector<Polynomial> G) {
  for (auto& g : G) g = g.monic();
  std::sort(G.begin(), G.end(), [](const Polynomial& a, const Polynomial& b) { return grevlex_cmp(a.lm(), b.lm()) < 0; });
  std::vector<Polynomial> minimal;
  for (std::size_t i = 0; i < G.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < G.size() && !redundant; ++j) {
      if (i == j) continue;
      if (G[j].lm().divides(G[i].lm()) && (!(G[j].lm() == G[i].lm()) || j < i)) redundant = true;
    }
    if (!redundant) minimal.push_back(G[i]);
  }
  std::vector<Polynomial> out;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Polynomial> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    const Polynomial& g = minimal[i];
    Polynomial head = Polynomial::monomial(g.ambient(), g.lm(), 1);
    Polynomial tail = g - head;
    out.push_back(head + reduce_by(tail, others));
  }
  return out;
}

}  // namespace detail

/// Row-reduced F_p-basis of the linear span of `polys` (each row monic, distinct leading monomials).
inline std::vector<Polynomial> linear_basis(const std::vector<Polynomial>& polys) {
  std::vector<Polynomial> rows;  // echelon: leading monomials distinct
  for (const auto& f : polys) {
    Polynomial h = f;
    bool changed = true;
    while (!h.is_zero() && changed) {
      changed = false;
      for (const auto& r : rows) {
        std::uint32_t c = h.coeff(r.lm());
        if (c) {
          h = h - r.scaled(c);
          changed = true;
        }
      }
    }
    if (h.is_zero()) continue;
    h = h.monic();
    // back-substitute so every row is free of the other rows' leading monomials
    for (auto& r : rows) {
      std::uint32_t c = r.coeff(h.lm());
      if (c) r = r - h.scaled(c);
    }
    rows.push_back(std::move(h));
  }
  std::sort(rows.begin(), rows.end(), [](const Polynomial& a, const Polynomial& b) { return grevlex_cmp(a.lm(), b.lm()) < 0; });
  return rows;
}

/// Buchberger with the product and chain criteria and normal pair selection.
inline GroebnerBasis groebner(const Ideal& J) {
  const Ambient& amb = J.ambient();
  std::vector<Polynomial> G;
  for (const auto& g : linear_basis(J.generators())) {
    if (g.lm().is_one()) return GroebnerBasis(amb, {Polynomial::constant(amb, 1)});
    G.push_back(g);
  }
  if (std::all_of(G.begin(), G.end(), [](const Polynomial& g) { return g.is_monomial(); }))
    return GroebnerBasis(amb, detail::reduce_basis(G));

  struct Pair {
    std::size_t i, j;
    Monomial lcm;
  };
  auto pair_less = [](const Pair& a, const Pair& b) {
    int c = grevlex_cmp(a.lcm, b.lcm);
    if (c) return c < 0;
    return std::tie(a.j, a.i) < std::tie(b.j, b.i);
  };
  std::vector<Pair> pending;
  std::set<std::pair<std::size_t, std::size_t>> done;
  auto is_pending = [&](std::size_t a, std::size_t b) {
    if (a > b) std::swap(a, b);
    if (done.count({a, b})) return false;
    for (const auto& pr : pending)
      if (pr.i == a && pr.j == b) return true;
    return false;
  };
  auto add_pairs = [&](std::size_t k) {
    for (std::size_t i = 0; i < k; ++i) pending.push_back({i, k, Monomial::lcm(G[i].lm(), G[k].lm())});
  };
  for (std::size_t k = 1; k < G.size(); ++k) add_pairs(k);

  while (!pending.empty()) {
    auto best = std::min_element(pending.begin(), pending.end(), pair_less);
    Pair pr = *best;
    pending.erase(best);
    done.insert({pr.i, pr.j});
    const Polynomial& a = G[pr.i];
    const Polynomial& b = G[pr.j];
    if (a.lm().coprime(b.lm())) continue;
    bool chain = false;
    for (std::size_t k = 0; k < G.size() && !chain; ++k) {
      if (k == pr.i || k == pr.j) continue;
      if (G[k].lm().divides(pr.lcm) && !is_pending(pr.i, k) && !is_pending(pr.j, k)) chain = true;
    }
    if (chain) continue;
    Polynomial h = detail::reduce_by(detail::spoly(a, b), G);
    if (h.is_zero()) continue;
    if (h.lm().is_one()) return GroebnerBasis(amb, {Polynomial::constant(amb, 1)});
    G.push_back(h.monic());
    add_pairs(G.size() - 1);
  }
  return GroebnerBasis(amb, detail::reduce_basis(G));
}

/// Unique remainder of f modulo the ideal of G.
inline Polynomial normal_form(const Polynomial& f, const GroebnerBasis& G) {
  if (!(f.ambient() == G.ambient())) throw AmbientMismatch();
  return detail::reduce_by(f, G.basis());
}

inline bool contains(const GroebnerBasis& G, const Polynomial& f) { return normal_form(f, G).is_zero(); }

/// I ⊆ ideal(G)
inline bool contains(const GroebnerBasis& G, const Ideal& I) {
  for (const auto& g : I.generators())
    if (!contains(G, g)) return false;
  return true;
}
inline bool contains(const GroebnerBasis& G, const GroebnerBasis& H) { return contains(G, H.ideal()); }

inline bool ideal_equal(const GroebnerBasis& A, const GroebnerBasis& B) { return A == B; }

namespace detail {

inline unsigned exponent_of_q(std::uint64_t q, std::uint32_t p) {
  auto e = log_p(q, p);
  if (!e) throw std::invalid_argument("q = " + std::to_string(q) + " is not a power of p = " + std::to_string(p));
  return *e;
}

}  // namespace detail

/// J^{[q]}: generator-wise q-th powers.
inline Ideal bracket_power(const Ideal& J, std::uint64_t q) {
  unsigned e = detail::exponent_of_q(q, J.ambient().p());
  std::vector<Polynomial> g;
  for (const auto& x : J.generators()) g.push_back(frobenius_scale(x, e));
  return Ideal(J.ambient(), std::move(g));
}

/// Reduced GB of J^{[p^e]} from a reduced GB of J. Frobenius is a ring
/// endomorphism preserving the order, so S-pairs and reductions map across.
inline GroebnerBasis bracket_power(const GroebnerBasis& G, unsigned e) {
  std::vector<Polynomial> b;
  for (const auto& x : G.basis()) b.push_back(frobenius_scale(x, e));
  return GroebnerBasis(G.ambient(), std::move(b));
}

inline MonomialIdeal bracket_power(const MonomialIdeal& M, std::uint64_t q) {
  detail::exponent_of_q(q, M.ambient().p());
  std::vector<Monomial> g;
  for (const auto& m : M.generators()) g.push_back(m.scaled(q));
  return MonomialIdeal(M.ambient(), std::move(g));
}

// ---------------------------------------------------------------------------
// Linear algebra mod p

namespace detail {

/// Null space of a dense matrix over F_p (rows x cols); returns basis vectors.
inline std::vector<std::vector<std::uint32_t>> nullspace_mod_p(std::vector<std::vector<std::uint32_t>> a,
                                                              std::size_t cols, std::uint32_t p) {
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t piv = r;
    while (piv < a.size() && a[piv][c] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[r]);
    std::uint32_t inv = inv_mod(a[r][c], p);
    for (auto& x : a[r]) x = mul_mod(x, inv, p);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      std::uint32_t f = a[i][c];
      for (std::size_t k = 0; k < cols; ++k) a[i][k] = (a[i][k] + p - mul_mod(f, a[r][k], p)) % p;
    }
    pivot_col.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<std::uint32_t>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<std::uint32_t> v(cols, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = (p - a[i][free]) % p;
    basis.push_back(std::move(v));
  }
  return basis;
}

inline std::vector<Monomial> monomials_up_to_degree(std::size_t nvars, std::uint64_t d) {
  std::vector<Monomial> out;
  Monomial cur;
  std::function<void(std::size_t, std::uint64_t)> rec = [&](std::size_t v, std::uint64_t left) {
    if (v == nvars) {
      out.push_back(cur);
      return;
    }
    for (std::uint64_t k = 0; k <= left; ++k) {
      cur.e[v] = static_cast<std::uint32_t>(k);
      cur.deg += k;
      rec(v + 1, left - k);
      cur.deg -= k;
    }
    cur.e[v] = 0;
  };
  rec(0, d);
  return out;
}

}  // namespace detail

/// Generator of the principal colon ideal (g) : (f), found as the nonzero h
/// of least degree with h*f in (g), by linear algebra in bounded degree.
inline Polynomial colon_principal(const Polynomial& g, const Polynomial& f) {
  if (!(g.ambient() == f.ambient())) throw AmbientMismatch();
  if (g.is_zero() || f.is_zero()) throw std::invalid_argument("colon_principal: zero input");
  const Ambient& amb = g.ambient();
  const std::uint32_t p = amb.p();
  GroebnerBasis G = groebner(Ideal(g));
  for (std::uint64_t d = 0; d <= g.total_degree(); ++d) {
    auto monos = detail::monomials_up_to_degree(amb.nvars(), d);
    // Column k holds NF(X^{m_k} f); rows index the monomials that occur.
    std::vector<Polynomial> images;
    std::map<Monomial, std::size_t, GrevlexGreater> row_of;
    for (const auto& m : monos) {
      images.push_back(normal_form(f.shifted(m), G));
      for (const auto& t : images.back().terms()) row_of.emplace(t.m, 0);
    }
    std::size_t nrows = 0;
    for (auto& [m, idx] : row_of) idx = nrows++;
    std::vector<std::vector<std::uint32_t>> a(nrows, std::vector<std::uint32_t>(monos.size(), 0));
    for (std::size_t k = 0; k < images.size(); ++k)
      for (const auto& t : images[k].terms()) a[row_of[t.m]][k] = t.c;
    auto ns = detail::nullspace_mod_p(std::move(a), monos.size(), p);
    if (ns.empty()) continue;
    std::vector<Term> terms;
    for (std::size_t k = 0; k < monos.size(); ++k)
      if (ns[0][k]) terms.push_back({monos[k], ns[0][k]});
    return Polynomial(amb, std::move(terms)).monic();
  }
  // h = g always works, so the loop returns before this point.
  throw std::logic_error("colon_principal: no solution found");
}

}  // namespace fthresh
