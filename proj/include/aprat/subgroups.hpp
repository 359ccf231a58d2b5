#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "aprat/group.hpp"

namespace aprat {

inline bool is_normal(const Group& g, const Group& n) {
  for (const auto& x : g.generators())
    for (const auto& h : n.generators())
      if (!n.contains(h.conjugate_by(x))) return false;
  return true;
}

// Smallest normal subgroup of g containing the given elements.
inline Group normal_closure(const Group& g, std::vector<Permutation> gens) {
  Group h = g.subgroup(gens);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < gens.size() && !changed; ++i) {
      for (const auto& x : g.generators()) {
        Permutation c = gens[i].conjugate_by(x);
        if (!h.contains(c)) {
          gens.push_back(std::move(c));
          h = g.subgroup(gens);
          changed = true;
          break;
        }
      }
    }
  }
  return h;
}

inline Group centralizer(const Group& g, const Permutation& x) {
  if (!g.contains(x)) throw InputError("centralizer: element not in group");
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < g.order(); ++i) {
    auto e = g.element(i);
    bool commutes = true;
    for (std::size_t j = 0; j < e.size() && commutes; ++j) commutes = x[e[j]] == e[x[j]];
    if (commutes) idx.push_back(i);
  }
  return g.subgroup_from_indices(std::move(idx));
}

inline Group normalizer(const Group& g, const Group& h) {
  if (!h.is_subgroup_of(g)) throw InputError("normalizer: subgroup not contained in group");
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < g.order(); ++i) {
    Permutation x = g.element_perm(i);
    bool normalizes = std::all_of(h.generators().begin(), h.generators().end(),
                                  [&](const Permutation& y) { return h.contains(y.conjugate_by(x)); });
    if (normalizes) idx.push_back(i);
  }
  return g.subgroup_from_indices(std::move(idx));
}

inline Group derived_subgroup(const Group& h) {
  std::vector<Permutation> comms;
  const auto& gs = h.generators();
  for (std::size_t i = 0; i < gs.size(); ++i)
    for (std::size_t j = i + 1; j < gs.size(); ++j) {
      Permutation c = gs[i].inverse() * gs[j].inverse() * gs[i] * gs[j];
      if (!c.is_identity()) comms.push_back(std::move(c));
    }
  return normal_closure(h, std::move(comms));
}

inline bool is_p_group(const Group& h, std::uint64_t p) {
  return detail::p_part(h.order(), p) == h.order();
}

// Frattini subgroup of a p-group, computed as H' H^p.
inline Group frattini_subgroup(const Group& h, std::uint64_t p) {
  if (!is_p_group(h, p)) throw InputError("frattini: subgroup is not a p-group");
  std::vector<Permutation> gens;
  const auto& gs = h.generators();
  for (std::size_t i = 0; i < gs.size(); ++i)
    for (std::size_t j = i + 1; j < gs.size(); ++j)
      gens.push_back(gs[i].inverse() * gs[j].inverse() * gs[i] * gs[j]);
  for (std::size_t i = 0; i < h.order(); ++i) {
    Permutation y = h.element_perm(i).pow(static_cast<std::int64_t>(p));
    if (!y.is_identity() && std::find(gens.begin(), gens.end(), y) == gens.end()) gens.push_back(std::move(y));
  }
  std::erase_if(gens, [](const Permutation& x) { return x.is_identity(); });
  return normal_closure(h, std::move(gens));
}

// Largest normal subgroup of order prime to p.
inline Group p_prime_core(const Group& g, std::uint64_t p) {
  std::vector<Permutation> gens;
  for (const auto& k : g.classes()) {
    if (k.element_order == 1 || k.element_order % p == 0) continue;
    Group c = normal_closure(g, {k.representative});
    if (c.order() % p != 0) gens.push_back(k.representative);
  }
  return normal_closure(g, std::move(gens));
}

// Sylow p-subgroup built by extending a p-subgroup H one step at a time with the
// first element (in enumeration order) of N_G(H) \ H whose p-th power lies in H.
inline Group sylow_subgroup(const Group& g, std::uint64_t p) {
  const std::uint64_t target = detail::p_part(g.order(), p);
  Group h = g.subgroup({});
  while (h.order() < target) {
    Group n = normalizer(g, h);
    bool extended = false;
    for (std::size_t i = 0; i < n.order() && !extended; ++i) {
      Permutation x = n.element_perm(i);
      if (h.contains(x) || !h.contains(x.pow(static_cast<std::int64_t>(p)))) continue;
      auto gens = h.generators();
      gens.push_back(std::move(x));
      h = g.subgroup(std::move(gens));
      extended = true;
    }
    if (!extended) throw std::logic_error("sylow: failed to extend p-subgroup");
  }
  return h;
}

inline bool is_cyclic(const Group& g) {
  for (const auto& k : g.classes())
    if (k.element_order == g.order()) return true;
  return g.order() == 1;
}

inline bool is_solvable(const Group& g) {
  Group h = g;
  while (h.order() > 1) {
    Group d = derived_subgroup(h);
    if (d.order() == h.order()) return false;
    h = d;
  }
  return true;
}

// G/N realized by the right-multiplication action of G on the right cosets of N.
inline Group quotient_group(const Group& g, const Group& n) {
  if (!n.is_subgroup_of(g) || !is_normal(g, n)) throw InputError("quotient: subgroup is not normal");
  constexpr std::uint32_t kUnset = 0xFFFFFFFFu;
  std::vector<std::uint32_t> coset(g.order(), kUnset);
  std::vector<std::size_t> coset_rep;
  std::vector<std::size_t> n_in_g;
  for (std::size_t i = 0; i < n.order(); ++i) n_in_g.push_back(*g.index_of(n.element(i)));
  for (std::size_t x = 0; x < g.order(); ++x) {
    if (coset[x] != kUnset) continue;
    auto id = static_cast<std::uint32_t>(coset_rep.size());
    coset_rep.push_back(x);
    for (auto m : n_in_g) coset[g.product_index(m, x)] = id;
  }
  const std::size_t index = coset_rep.size();
  std::vector<Permutation> gens;
  for (const auto& s : g.generators()) {
    auto si = *g.index_of(s);
    std::vector<Point> im(index);
    for (std::size_t c = 0; c < index; ++c) im[c] = coset[g.product_index(coset_rep[c], si)];
    gens.emplace_back(std::move(im));
  }
  Group q = Group::generate(index, std::move(gens));
  if (q.order() * n.order() != g.order()) throw std::logic_error("quotient: coset action kernel differs from N");
  return q;
}

// Sorted (element order, class size) pairs: an isomorphism-invariant fingerprint.
inline std::vector<std::pair<std::uint64_t, std::uint64_t>> class_vector(const Group& g) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> v;
  for (const auto& k : g.classes()) v.emplace_back(k.element_order, k.size);
  std::sort(v.begin(), v.end());
  return v;
}

inline bool same_class_fingerprint(const Group& a, const Group& b) {
  return a.order() == b.order() && class_vector(a) == class_vector(b);
}

// Cache and report key: order, degree, class vector and a hash of the generators.
inline std::string fingerprint(const Group& g) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xff;
      h *= 1099511628211ull;
    }
  };
  for (auto [o, s] : class_vector(g)) {
    mix(o);
    mix(s);
  }
  for (const auto& x : g.generators()) {
    mix(0xffffffffull);
    for (std::size_t i = 0; i < x.degree(); ++i) mix(x[i]);
  }
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return "o" + std::to_string(g.order()) + "-d" + std::to_string(g.degree()) + "-k" +
         std::to_string(g.num_classes()) + "-" + buf;
}

}  // namespace aprat
