#pragma once

#include <array>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include "aprat/errors.hpp"
#include "aprat/group.hpp"
#include "aprat/matrix.hpp"
#include "aprat/modular.hpp"

namespace aprat::construct {

inline Group cyclic(std::size_t n) {
  if (n == 0) throw InputError("cyclic: n must be positive");
  std::vector<Point> im(n);
  for (std::size_t i = 0; i < n; ++i) im[i] = static_cast<Point>((i + 1) % n);
  return Group::generate(n, {Permutation(std::move(im))});
}

// Dihedral group of order 2n (n = 2 gives the Klein four-group).
inline Group dihedral(std::size_t n) {
  if (n == 0) throw InputError("dihedral: n must be positive");
  if (n == 1) return cyclic(2);
  if (n == 2)
    return Group::generate(4, {Permutation::from_cycles(4, {{0, 1}, {2, 3}}),
                               Permutation::from_cycles(4, {{0, 2}, {1, 3}})});
  std::vector<Point> rot(n), ref(n);
  for (std::size_t i = 0; i < n; ++i) {
    rot[i] = static_cast<Point>((i + 1) % n);
    ref[i] = static_cast<Point>((n - i) % n);
  }
  return Group::generate(n, {Permutation(std::move(rot)), Permutation(std::move(ref))});
}

inline Group symmetric(std::size_t n) {
  if (n < 2) return Group::generate(n, {});
  std::vector<Point> cyc(n);
  for (std::size_t i = 0; i < n; ++i) cyc[i] = static_cast<Point>((i + 1) % n);
  return Group::generate(n, {Permutation::from_cycles(n, {{0, 1}}), Permutation(std::move(cyc))});
}

inline Group alternating(std::size_t n) {
  if (n < 3) return Group::generate(n, {});
  std::vector<Point> tail;
  for (std::size_t i = (n % 2 ? 0 : 1); i < n; ++i) tail.push_back(static_cast<Point>(i));
  return Group::generate(n, {Permutation::from_cycles(n, {{0, 1, 2}}), Permutation::from_cycles(n, {tail})});
}

// Z/m extended by x -> u x, acting on m points.
inline Group metacyclic(std::size_t m, std::uint64_t u) {
  if (m == 0 || std::gcd(u, static_cast<std::uint64_t>(m)) != 1)
    throw InputError("metacyclic: multiplier must be a unit mod m");
  std::vector<Point> shift(m), mul(m);
  for (std::size_t i = 0; i < m; ++i) {
    shift[i] = static_cast<Point>((i + 1) % m);
    mul[i] = static_cast<Point>(mul_mod(i, u, m));
  }
  return Group::generate(m, {Permutation(std::move(shift)), Permutation(std::move(mul))});
}

// Frobenius group C_{p^n} x| C_e with C_e <= Aut(C_{p^n}) of order e | p-1.
inline Group frobenius(std::uint64_t p, unsigned n, std::uint64_t e) {
  if (!is_prime(p)) throw InputError("frobenius: p must be prime");
  if (n == 0) throw InputError("frobenius: n must be positive");
  if (e == 0 || (p - 1) % e != 0) throw InputError("frobenius: e must divide p-1");
  std::uint64_t q = ipow(p, n);
  std::uint64_t u = 1;
  if (e > 1) {
    std::uint64_t g = primitive_root(q);
    u = pow_mod(g, euler_phi(q) / e, q);
  }
  return metacyclic(q, u);
}

// Linear action of matrices on the p^n vectors of F_p^n (v -> v M).
inline Permutation matrix_permutation(const ModMatrix& m) {
  const std::uint64_t p = m.prime();
  const std::size_t n = m.dim();
  const std::uint64_t size = ipow(p, static_cast<unsigned>(n));
  std::vector<Point> im(size);
  for (std::uint64_t x = 0; x < size; ++x) im[x] = static_cast<Point>(encode_vector(m.act(decode_vector(x, n, p)), p));
  return Permutation(std::move(im));
}

inline void check_matrices(std::uint64_t p, std::size_t n, const std::vector<ModMatrix>& mats) {
  if (!is_prime(p)) throw InputError("matrix group: p must be prime");
  for (const auto& m : mats) {
    if (m.dim() != n || m.prime() != p) throw InputError("matrix group: generator has wrong shape");
    if (!m.is_invertible()) throw InputError("matrix group: singular generator");
  }
}

inline Group matrix_group(std::uint64_t p, std::size_t n, const std::vector<ModMatrix>& mats) {
  check_matrices(p, n, mats);
  std::vector<Permutation> gens;
  for (const auto& m : mats) gens.push_back(matrix_permutation(m));
  return Group::generate(ipow(p, static_cast<unsigned>(n)), std::move(gens));
}

// Affine group V x| H on the p^n points of V = F_p^n.
inline Group elementary_abelian_semidirect(std::uint64_t p, std::size_t n, const std::vector<ModMatrix>& mats) {
  check_matrices(p, n, mats);
  const std::uint64_t size = ipow(p, static_cast<unsigned>(n));
  std::vector<Permutation> gens;
  for (std::size_t b = 0; b < n; ++b) {
    std::vector<Point> im(size);
    for (std::uint64_t x = 0; x < size; ++x) {
      auto v = decode_vector(x, n, p);
      v[b] = (v[b] + 1) % p;
      im[x] = static_cast<Point>(encode_vector(v, p));
    }
    gens.emplace_back(std::move(im));
  }
  for (const auto& m : mats) gens.push_back(matrix_permutation(m));
  return Group::generate(size, std::move(gens));
}

// Closure of a set of matrices by breadth-first multiplication (small groups only).
inline std::vector<ModMatrix> matrix_closure(const std::vector<ModMatrix>& gens, std::size_t cap) {
  if (gens.empty()) return {};
  std::set<std::vector<std::uint64_t>> seen;
  std::vector<ModMatrix> out{ModMatrix::identity(gens[0].dim(), gens[0].prime())};
  seen.insert({out[0].data().begin(), out[0].data().end()});
  for (std::size_t i = 0; i < out.size(); ++i)
    for (const auto& g : gens) {
      ModMatrix y = out[i] * g;
      if (seen.insert({y.data().begin(), y.data().end()}).second) {
        out.push_back(y);
        if (out.size() > cap) throw ResourceLimitError("matrix closure exceeds cap");
      }
    }
  return out;
}

// Generators of a copy of SL2(5) inside SL2(p), for p = +-1 mod 5: the first b of order 3
// (in a fixed search order) with <[[0,-1],[1,0]], b> of order 120.
inline std::vector<ModMatrix> sl2_5_generators(std::uint64_t p) {
  if (!is_prime(p) || p == 2 || (p % 5 != 1 && p % 5 != 4)) throw InputError("sl2_5 in SL2(p) needs p = +-1 mod 5");
  auto pi = static_cast<std::int64_t>(p);
  ModMatrix a = ModMatrix::from_rows({{0, -1}, {1, 0}}, p);
  for (std::int64_t x = 0; x < pi; ++x)
    for (std::int64_t y = 1; y < pi; ++y) {
      std::int64_t w = mod_floor(-1 - x, pi);
      // z = (x w - 1) / y
      auto num = static_cast<std::uint64_t>(mod_floor(static_cast<std::int64_t>(mul_mod(x, w, p)) - 1, pi));
      auto z = static_cast<std::int64_t>(mul_mod(num, inv_mod(y, p), p));
      ModMatrix b = ModMatrix::from_rows({{x, y}, {z, w}}, p);
      ModMatrix ab = a * b;
      std::uint64_t t = (ab.at(0, 0) + ab.at(1, 1)) % p;
      // trace of an element of order 5 or 10: t^2 + t - 1 = 0 or t^2 - t - 1 = 0
      std::uint64_t t2 = mul_mod(t, t, p);
      bool ok = (t2 + t + p - 1) % p == 0 || (t2 + 2 * p - t - 1) % p == 0;
      if (!ok) continue;
      try {
        if (matrix_closure({a, b}, 120).size() == 120) return {a, b};
      } catch (const ResourceLimitError&) {
      }
    }
  throw std::logic_error("sl2_5_generators: no copy found");
}

// SL2(5) acting on the 24 nonzero vectors of F_5^2.
inline Group sl2_5() {
  std::vector<ModMatrix> mats{ModMatrix::from_rows({{0, -1}, {1, 0}}, 5), ModMatrix::from_rows({{1, 1}, {0, 1}}, 5)};
  std::vector<Permutation> gens;
  for (const auto& m : mats) {
    std::vector<Point> im(24);
    for (std::uint64_t x = 1; x < 25; ++x)
      im[x - 1] = static_cast<Point>(encode_vector(m.act(decode_vector(x, 2, 5)), 5) - 1);
    gens.emplace_back(std::move(im));
  }
  return Group::generate(24, std::move(gens));
}

// Quaternion group Q8 in its regular action; point 2u+s stands for (-1)^s * unit u, units 1,i,j,k.
inline Group quaternion8() {
  // table[a][b] = (sign, unit) of unit_a * unit_b
  static constexpr std::array<std::array<std::pair<int, int>, 4>, 4> table{{
      {{{0, 0}, {0, 1}, {0, 2}, {0, 3}}},
      {{{0, 1}, {1, 0}, {0, 3}, {1, 2}}},
      {{{0, 2}, {1, 3}, {1, 0}, {0, 1}}},
      {{{0, 3}, {0, 2}, {1, 1}, {1, 0}}},
  }};
  auto right_mult = [&](int unit) {
    std::vector<Point> im(8);
    for (int u = 0; u < 4; ++u)
      for (int s = 0; s < 2; ++s) {
        auto [sg, w] = table[u][unit];
        im[2 * u + s] = static_cast<Point>(2 * w + (s ^ sg));
      }
    return Permutation(std::move(im));
  };
  return Group::generate(8, {right_mult(1), right_mult(2)});
}

inline Group direct_product(const std::vector<Group>& factors) {
  std::size_t degree = 0;
  for (const auto& f : factors) degree += f.degree();
  std::vector<Permutation> gens;
  std::size_t offset = 0;
  for (const auto& f : factors) {
    for (const auto& g : f.generators()) {
      std::vector<Point> im(degree);
      std::iota(im.begin(), im.end(), Point{0});
      for (std::size_t i = 0; i < f.degree(); ++i) im[offset + i] = static_cast<Point>(offset + g[i]);
      gens.emplace_back(std::move(im));
    }
    offset += f.degree();
  }
  return Group::generate(degree, std::move(gens));
}

inline Group abelian(const std::vector<std::size_t>& cyclic_orders) {
  std::vector<Group> fs;
  for (auto m : cyclic_orders) fs.push_back(cyclic(m));
  return direct_product(fs);
}

// Upper unitriangular 3x3 matrices over F_p acting on the p^3 vectors.
inline Group unitriangular3(std::uint64_t p) {
  if (!is_prime(p)) throw InputError("unitriangular: p must be prime");
  return matrix_group(p, 3, {ModMatrix::from_rows({{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}, p),
                             ModMatrix::from_rows({{1, 0, 0}, {0, 1, 1}, {0, 0, 1}}, p)});
}

// (C_p x C_p) : SL2(5) for p = +-1 mod 5.
inline Group sl2_5_affine(std::uint64_t p) { return elementary_abelian_semidirect(p, 2, sl2_5_generators(p)); }

}  // namespace aprat::construct
