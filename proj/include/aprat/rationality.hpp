#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "aprat/character_table.hpp"
#include "aprat/constructions.hpp"
#include "aprat/cyclotomic.hpp"
#include "aprat/errors.hpp"
#include "aprat/group.hpp"
#include "aprat/modular.hpp"
#include "aprat/subgroups.hpp"

namespace aprat {

namespace detail {

inline bool is_square(std::uint64_t x, std::uint64_t* root = nullptr) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(x)));
  while (r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  if (root) *root = r;
  return r * r == x;
}

}  // namespace detail

// alpha_p(chi): least a with the row fixed by Gal(Q_n / Q_{p^a n_{p'}}).
inline unsigned p_rationality_level(const CharacterTable& t, std::size_t row, std::uint64_t p) {
  const unsigned k = valuation(t.exponent(), p);
  for (unsigned a = 0; a < k; ++a) {
    auto gens = galois_generators(t.exponent(), p, a);
    if (std::all_of(gens.begin(), gens.end(), [&](std::uint64_t m) {
          return t.galois_conjugate_row(row, static_cast<std::int64_t>(m)) == row;
        }))
      return a;
  }
  return k;
}

inline std::vector<unsigned> p_rationality_levels(const CharacterTable& t, std::uint64_t p) {
  std::vector<unsigned> out(t.size());
  for (std::size_t r = 0; r < t.size(); ++r) out[r] = p_rationality_level(t, r, p);
  return out;
}

struct RationalityCounts {
  std::size_t n_parat = 0;
  std::size_t n_pprime_parat = 0;
  std::size_t n_b0_pprime_parat = 0;
  std::size_t n_cl_pareg = 0;
  std::size_t n_cl_preg = 0;
  std::size_t n_prat = 0;
  std::size_t k = 0;
};

struct RationalityProfile {
  std::string fingerprint;
  std::uint64_t p = 0;
  std::vector<unsigned> level;
  std::vector<bool> p_prime_degree;
  std::vector<std::size_t> block;
  std::size_t principal_block = 0;
  bool blocks_degenerate = false;
  std::vector<unsigned> class_level;
  RationalityCounts counts;
};

inline RationalityProfile rationality_profile(const CharacterTable& t, std::uint64_t p) {
  if (!is_prime(p)) throw InputError("rationality profile: p must be prime");
  RationalityProfile pr;
  pr.fingerprint = fingerprint(t.group());
  pr.p = p;
  pr.level = p_rationality_levels(t, p);
  auto bd = t.block_distribution(p);
  pr.block = bd.block_of;
  pr.principal_block = bd.principal_block_id;
  pr.blocks_degenerate = bd.degenerate;
  auto& c = pr.counts;
  c.k = t.size();
  for (std::size_t r = 0; r < t.size(); ++r) {
    bool pp = t.degrees()[r] % p != 0;
    pr.p_prime_degree.push_back(pp);
    if (pr.level[r] == 0) ++c.n_prat;
    if (pr.level[r] > 1) continue;
    ++c.n_parat;
    if (!pp) continue;
    ++c.n_pprime_parat;
    if (pr.block[r] == pr.principal_block) ++c.n_b0_pprime_parat;
  }
  for (const auto& cl : t.classes()) {
    unsigned l = valuation(cl.element_order, p);
    pr.class_level.push_back(l);
    if (l <= 1) ++c.n_cl_pareg;
    if (l == 0) ++c.n_cl_preg;
  }
  return pr;
}

inline RationalityProfile rationality_profile(const Group& g, std::uint64_t p) {
  return rationality_profile(CharacterTable(g), p);
}

// Almost p-regular classes: elements whose p-part has order at most p.
inline std::size_t count_almost_p_regular_classes(const Group& g, std::uint64_t p) {
  std::size_t n = 0;
  for (const auto& cl : g.classes())
    if (valuation(cl.element_order, p) <= 1) ++n;
  return n;
}

struct SpSet {
  std::uint64_t p = 0;
  std::vector<std::uint64_t> values;
  bool contains(std::uint64_t x) const { return std::binary_search(values.begin(), values.end(), x); }
};

inline SpSet sp_set(std::uint64_t p) {
  if (!is_prime(p)) throw InputError("S_p: p must be prime");
  std::set<std::uint64_t> v;
  for (auto e : divisors(p - 1)) v.insert(e + (p - 1) / e);
  return {p, {v.begin(), v.end()}};
}

struct DetectorVerdict {
  std::uint64_t p = 0;
  std::size_t count = 0;
  bool in_sp = false;
  bool predicted_cyclic = false;
  bool actual_cyclic = false;
  bool agree = false;
  std::uint64_t sylow_order = 1;
};

inline DetectorVerdict detect_cyclic_sylow(const CharacterTable& t, std::uint64_t p, const RationalityProfile* pr = nullptr) {
  if (!is_prime(p) || t.group().order() % p != 0) throw InputError("detector: p must divide the group order");
  std::optional<RationalityProfile> own;
  if (!pr) pr = &own.emplace(rationality_profile(t, p));
  DetectorVerdict v;
  v.p = p;
  v.count = pr->counts.n_b0_pprime_parat;
  v.in_sp = sp_set(p).contains(v.count);
  v.predicted_cyclic = v.in_sp;
  Group s = sylow_subgroup(t.group(), p);
  v.sylow_order = s.order();
  v.actual_cyclic = is_cyclic(s);
  v.agree = v.predicted_cyclic == v.actual_cyclic;
  return v;
}

inline DetectorVerdict detect_cyclic_sylow(const Group& g, std::uint64_t p) {
  return detect_cyclic_sylow(CharacterTable(g), p);
}

struct McKayNavarroReport {
  std::size_t lhs = 0;
  std::size_t rhs = 0;
  bool equal = false;
  std::uint64_t normalizer_order = 0;
  std::uint64_t quotient_order = 0;
};

inline McKayNavarroReport mckay_navarro_check(const CharacterTable& t, std::uint64_t p, const RationalityProfile* pr = nullptr) {
  if (!is_prime(p) || t.group().order() % p != 0) throw InputError("McKay-Navarro: p must divide the group order");
  std::optional<RationalityProfile> own;
  if (!pr) pr = &own.emplace(rationality_profile(t, p));
  const Group& g = t.group();
  Group s = sylow_subgroup(g, p);
  Group n = normalizer(g, s);
  Group q = quotient_group(n, derived_subgroup(s));
  McKayNavarroReport r;
  r.lhs = pr->counts.n_pprime_parat;
  r.rhs = rationality_profile(CharacterTable(q), p).counts.n_parat;
  r.equal = r.lhs == r.rhs;
  r.normalizer_order = n.order();
  r.quotient_order = q.order();
  return r;
}

// exact check of count >= 2 sqrt(p - 1) and of the equality case
struct BoundReport {
  std::uint64_t p = 0;
  std::size_t count = 0;
  double bound = 0;
  bool bound_holds = false;
  bool equality = false;
  bool frobenius_shape = false;  // group (or N_G(P)) matches C_{p^n} : C_{sqrt(p-1)}
  bool ok = false;
  std::string detail;
};

namespace detail {

// Does h look like the Frobenius group C_{p^n} : C_e with e = sqrt(p - 1)?
inline bool has_sqrt_frobenius_shape(const Group& h, std::uint64_t p) {
  std::uint64_t e = 0;
  if (!is_square(p - 1, &e)) return false;
  std::uint64_t pn = p_part(h.order(), p);
  if (pn == 1 || h.order() != pn * e) return false;
  unsigned n = valuation(pn, p);
  if (pn > 200000) return false;
  return same_class_fingerprint(h, construct::frobenius(p, n, e));
}

}  // namespace detail

inline BoundReport verify_theorem_1_1(const CharacterTable& t, std::uint64_t p, const RationalityProfile* pr = nullptr) {
  if (!is_prime(p) || t.group().order() % p != 0) throw InputError("bound check: p must divide the group order");
  std::optional<RationalityProfile> own;
  if (!pr) pr = &own.emplace(rationality_profile(t, p));
  BoundReport r;
  r.p = p;
  r.count = pr->counts.n_parat;
  r.bound = 2 * std::sqrt(static_cast<double>(p - 1));
  const std::uint64_t c2 = static_cast<std::uint64_t>(r.count) * r.count;
  r.bound_holds = c2 >= 4 * (p - 1);
  r.equality = c2 == 4 * (p - 1);
  r.frobenius_shape = detail::has_sqrt_frobenius_shape(t.group(), p);
  r.ok = r.bound_holds && r.equality == r.frobenius_shape;
  if (!r.bound_holds) r.detail = "count below 2*sqrt(p-1)";
  else if (r.equality && !r.frobenius_shape) r.detail = "equality without Frobenius shape";
  else if (!r.equality && r.frobenius_shape) r.detail = "Frobenius shape without equality";
  return r;
}

// p'-degree count equals 2 sqrt(p - 1) iff N_G(P) is C_{p^n} : C_{sqrt(p-1)} with P cyclic.
inline BoundReport verify_theorem_1_3(const CharacterTable& t, std::uint64_t p, const RationalityProfile* pr = nullptr) {
  if (!is_prime(p) || t.group().order() % p != 0) throw InputError("bound check: p must divide the group order");
  std::optional<RationalityProfile> own;
  if (!pr) pr = &own.emplace(rationality_profile(t, p));
  BoundReport r;
  r.p = p;
  r.count = pr->counts.n_pprime_parat;
  r.bound = 2 * std::sqrt(static_cast<double>(p - 1));
  const std::uint64_t c2 = static_cast<std::uint64_t>(r.count) * r.count;
  r.bound_holds = c2 >= 4 * (p - 1);
  r.equality = c2 == 4 * (p - 1);
  Group s = sylow_subgroup(t.group(), p);
  r.frobenius_shape = is_cyclic(s) && detail::has_sqrt_frobenius_shape(normalizer(t.group(), s), p);
  r.ok = r.bound_holds && r.equality == r.frobenius_shape;
  if (!r.bound_holds) r.detail = "p'-degree count below 2*sqrt(p-1)";
  else if (r.equality != r.frobenius_shape) r.detail = "equality and normalizer shape disagree";
  return r;
}

struct ClassSideReport {
  bool ok = true;
  std::size_t n_cl_pareg = 0, n_parat = 0, n_cl_preg = 0, n_prat = 0;
  struct QuotientCheck {
    std::uint64_t n_order = 0;
    std::size_t lhs = 0;           // |Cl_pareg(G)|
    std::size_t quotient = 0;      // |Cl_pareg(G/N)|
    std::size_t orbits = 0;        // G-orbits on Cl_pareg(N)
    bool holds = false;
  };
  std::vector<QuotientCheck> quotients;
  std::vector<std::string> violations;
};

// normals: normal p'-subgroups; empty means {1, O_{p'}(G)}
inline ClassSideReport verify_class_side_lemmas(const CharacterTable& t, std::uint64_t p, std::vector<Group> normals = {},
                                                const RationalityProfile* pr = nullptr) {
  if (!is_prime(p) || p == 2) throw InputError("class-side check: p must be an odd prime");
  std::optional<RationalityProfile> own;
  if (!pr) pr = &own.emplace(rationality_profile(t, p));
  const Group& g = t.group();
  ClassSideReport r;
  r.n_cl_pareg = pr->counts.n_cl_pareg;
  r.n_parat = pr->counts.n_parat;
  r.n_cl_preg = pr->counts.n_cl_preg;
  r.n_prat = pr->counts.n_prat;
  if (r.n_cl_pareg > r.n_parat) r.violations.push_back("almost p-regular classes exceed almost p-rational characters");
  if (r.n_cl_preg > r.n_prat) r.violations.push_back("p-regular classes exceed p-rational characters");
  if (normals.empty()) {
    normals.push_back(g.subgroup({}));
    Group o = p_prime_core(g, p);
    if (o.order() > 1) normals.push_back(std::move(o));
  }
  for (const auto& n : normals) {
    if (n.order() % p == 0 || !n.is_subgroup_of(g) || !is_normal(g, n))
      throw InputError("class-side check: N must be a normal p'-subgroup");
    ClassSideReport::QuotientCheck q;
    q.n_order = n.order();
    q.lhs = r.n_cl_pareg;
    q.quotient = count_almost_p_regular_classes(quotient_group(g, n), p);
    for (std::size_t c = 0; c < g.num_classes(); ++c)
      if (n.contains(g.classes()[c].representative) && pr->class_level[c] <= 1) ++q.orbits;
    q.holds = q.lhs + 1 >= q.quotient + q.orbits;
    if (!q.holds) r.violations.push_back("quotient inequality fails for |N| = " + std::to_string(q.n_order));
    r.quotients.push_back(q);
  }
  r.ok = r.violations.empty();
  return r;
}

struct BrauerPermutationReport {
  struct Check {
    std::int64_t m = 0;
    std::size_t fixed_characters = 0;
    std::size_t fixed_classes = 0;
  };
  std::vector<Check> checks;
  bool ok = true;
};

// sigma_m fixes as many characters as x -> x^m fixes classes. Tests every unit mod the
// exponent when there are at most max_units, otherwise the CRT generators at every level and -1.
inline BrauerPermutationReport verify_brauer_permutation(const CharacterTable& t, std::size_t max_units = 512) {
  const std::uint64_t n = t.exponent();
  const Group& g = t.group();
  std::vector<std::uint64_t> ms;
  if (euler_phi(n) <= max_units) {
    for (std::uint64_t m = 1; m <= n; ++m)
      if (std::gcd(m, n) == 1) ms.push_back(m % n);
  } else {
    std::set<std::uint64_t> s{n - 1};
    for (auto [q, k] : factorize(n))
      for (unsigned a = 0; a < k; ++a)
        for (auto m : galois_generators(n, q, a)) s.insert(m);
    ms.assign(s.begin(), s.end());
  }
  BrauerPermutationReport r;
  for (auto m : ms) {
    BrauerPermutationReport::Check c;
    c.m = static_cast<std::int64_t>(m);
    for (std::size_t row = 0; row < t.size(); ++row)
      if (t.galois_conjugate_row(row, c.m) == row) ++c.fixed_characters;
    for (std::size_t cl = 0; cl < g.num_classes(); ++cl)
      if (g.power_class(cl, c.m) == cl) ++c.fixed_classes;
    if (c.fixed_characters != c.fixed_classes) r.ok = false;
    r.checks.push_back(c);
  }
  return r;
}

struct OverNormalReport {
  bool ok = true;
  std::size_t pairs_checked = 0;
  std::vector<std::string> violations;
  // constituents[chi] = (theta row of N, multiplicity)
  std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> constituents;
};

// For N normal of p'-index: chi almost p-rational iff every constituent of chi_N is.
inline OverNormalReport verify_over_normal_lemma(const CharacterTable& tg, const CharacterTable& tn, std::uint64_t p) {
  const Group& g = tg.group();
  const Group& n = tn.group();
  if (!n.is_subgroup_of(g) || !is_normal(g, n)) throw InputError("over-normal check: N must be normal in G");
  if ((g.order() / n.order()) % p == 0) throw InputError("over-normal check: p divides |G:N|");
  const std::uint64_t ng = tg.exponent(), nn = tn.exponent();
  if (ng % nn) throw std::logic_error("over-normal check: exponent of N does not divide exponent of G");
  const std::uint64_t scale = ng / nn;
  std::vector<std::size_t> fuse(tn.size());
  for (std::size_t c = 0; c < tn.size(); ++c) fuse[c] = g.class_of(tn.classes()[c].representative);
  auto lg = p_rationality_levels(tg, p), ln = p_rationality_levels(tn, p);
  OverNormalReport r;
  r.constituents.resize(tg.size());
  std::vector<std::int64_t> acc(ng);
  for (std::size_t x = 0; x < tg.size(); ++x) {
    for (std::size_t th = 0; th < tn.size(); ++th) {
      std::fill(acc.begin(), acc.end(), 0);
      for (std::size_t c = 0; c < tn.size(); ++c) {
        auto h = static_cast<std::int64_t>(tn.classes()[c].size);
        for (auto a : tg.eigenvalues(x, fuse[c]))
          for (auto b : tn.eigenvalues(th, c)) {
            std::uint64_t e = (a.exponent + ng - (b.exponent * scale) % ng) % ng;
            acc[e] += h * a.multiplicity * b.multiplicity;
          }
      }
      auto v = reduce_cyclotomic(acc, ng);
      if (!std::all_of(v.begin() + 1, v.end(), [](std::int64_t c) { return c == 0; }) ||
          v[0] % static_cast<std::int64_t>(n.order()) != 0)
        throw std::logic_error("over-normal check: restriction multiplicity is not an integer");
      std::int64_t mult = v[0] / static_cast<std::int64_t>(n.order());
      if (mult == 0) continue;
      r.constituents[x].emplace_back(th, mult);
      ++r.pairs_checked;
      if ((lg[x] <= 1) != (ln[th] <= 1))
        r.violations.push_back("row " + std::to_string(x) + " and constituent " + std::to_string(th) + " disagree");
    }
    if (r.constituents[x].empty()) throw std::logic_error("over-normal check: restriction has no constituents");
  }
  r.ok = r.violations.empty();
  return r;
}

// Non-trivial row of {p,q}'-degree with alpha_p <= 1 and alpha_q <= 1.
inline std::optional<std::size_t> find_pq_rational_witness(const CharacterTable& t, std::uint64_t p, std::uint64_t q) {
  if (!is_prime(p) || !is_prime(q)) throw InputError("witness search: p and q must be prime");
  for (std::size_t r = 1; r < t.size(); ++r) {
    auto d = t.degrees()[r];
    if (d % p == 0 || d % q == 0) continue;
    if (p_rationality_level(t, r, p) <= 1 && p_rationality_level(t, r, q) <= 1) return r;
  }
  return std::nullopt;
}

}  // namespace aprat
