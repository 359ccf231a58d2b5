#pragma once

// Independent reference computations used only by the test suites.

#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "aprat/character_table.hpp"
#include "aprat/cyclotomic.hpp"
#include "aprat/group.hpp"
#include "aprat/modular.hpp"

namespace oracle {

using aprat::CharacterTable;
using aprat::CyclotomicValue;
using aprat::Group;

// Conductor of a value of Q(zeta_n): least d | n with the value fixed by every m = 1 mod d.
inline std::uint64_t conductor(const CyclotomicValue& v) {
  const std::uint64_t n = v.conductor_n();
  for (auto d : aprat::divisors(n)) {
    bool fixed = true;
    for (std::uint64_t m = 1; m < n && fixed; m += d)
      if (std::gcd(m, n) == 1 && v.galois(static_cast<std::int64_t>(m)) != v) fixed = false;
    if (fixed) return d;
  }
  return n;
}

inline std::uint64_t row_conductor(const CharacterTable& t, std::size_t r) {
  std::uint64_t c = 1;
  for (std::size_t k = 0; k < t.size(); ++k) c = std::lcm(c, conductor(t.value(r, k)));
  return c;
}

// log_p of the p-part of the conductor.
inline unsigned level_from_conductor(const CharacterTable& t, std::size_t r, std::uint64_t p) {
  return aprat::valuation(row_conductor(t, r), p);
}

// Class multiplication coefficients by direct triple counting:
// c[j][r][s] = #{x in K_j : x^{-1} z_s in K_r}.
inline std::vector<std::vector<std::vector<std::int64_t>>> class_coefficients(const Group& g) {
  const std::size_t k = g.num_classes();
  std::vector<std::vector<std::vector<std::int64_t>>> c(k, std::vector<std::vector<std::int64_t>>(k, std::vector<std::int64_t>(k, 0)));
  for (std::size_t s = 0; s < k; ++s) {
    auto z = g.classes()[s].representative;
    for (std::size_t i = 0; i < g.order(); ++i) {
      auto x = g.element_perm(i);
      c[g.class_of(x)][g.class_of(x.inverse() * z)][s] += 1;
    }
  }
  return c;
}

// Each row must satisfy h_j h_r chi_j chi_r = d sum_s c_{jrs} h_s chi_s.
inline bool rows_satisfy_class_algebra(const CharacterTable& t) {
  const Group& g = t.group();
  auto c = class_coefficients(g);
  const std::size_t k = t.size();
  const auto n = t.exponent();
  for (std::size_t row = 0; row < k; ++row) {
    std::vector<CyclotomicValue> v;
    for (std::size_t s = 0; s < k; ++s) v.push_back(t.value(row, s));
    auto d = static_cast<std::int64_t>(t.degrees()[row]);
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t r = 0; r < k; ++r) {
        auto lhs = (v[j] * v[r]).scaled(static_cast<std::int64_t>(g.classes()[j].size * g.classes()[r].size));
        CyclotomicValue rhs = CyclotomicValue::integer(n, 0);
        for (std::size_t s = 0; s < k; ++s)
          if (c[j][r][s]) rhs = rhs + v[s].scaled(c[j][r][s] * static_cast<std::int64_t>(g.classes()[s].size));
        if (lhs != rhs.scaled(d)) return false;
      }
  }
  return true;
}

// Blocks as connected components of chi ~ psi iff sum over p-regular g of chi(g) conj(psi(g)) != 0.
inline std::vector<std::size_t> osima_blocks(const CharacterTable& t, std::uint64_t p) {
  const std::size_t k = t.size();
  std::vector<std::size_t> parent(k);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b) {
      CyclotomicValue s = CyclotomicValue::integer(t.exponent(), 0);
      for (std::size_t c = 0; c < k; ++c) {
        if (t.classes()[c].element_order % p == 0) continue;
        s = s + (t.value(a, c) * t.value(b, c).conj()).scaled(static_cast<std::int64_t>(t.classes()[c].size));
      }
      if (!s.is_zero()) parent[find(a)] = find(b);
    }
  // relabel in order of first appearance
  std::map<std::size_t, std::size_t> id;
  std::vector<std::size_t> out(k);
  for (std::size_t r = 0; r < k; ++r) out[r] = id.emplace(find(r), id.size()).first->second;
  return out;
}

inline std::vector<std::size_t> relabel(const std::vector<std::size_t>& b) {
  std::map<std::size_t, std::size_t> id;
  std::vector<std::size_t> out(b.size());
  for (std::size_t r = 0; r < b.size(); ++r) out[r] = id.emplace(b[r], id.size()).first->second;
  return out;
}

}  // namespace oracle
