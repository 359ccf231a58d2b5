#pragma once

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "aprat/modular.hpp"

namespace aprat {

// Dense polynomials over F_p, low degree first, no trailing zeros.
namespace fp_poly {

using Poly = std::vector<std::uint64_t>;

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Poly mul(const Poly& a, const Poly& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  if (p < (1ull << 20) && std::min(a.size(), b.size()) < (1ull << 23)) {
    // products stay below 2^40, so partial sums cannot overflow
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!a[i]) continue;
      const std::uint64_t x = a[i];
      std::uint64_t* out = c.data() + i;
      for (std::size_t j = 0; j < b.size(); ++j) out[j] += x * b[j];
    }
    for (auto& x : c) x %= p;
  } else {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!a[i]) continue;
      for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + mul_mod(a[i], b[j], p)) % p;
    }
  }
  trim(c);
  return c;
}

inline Poly mod(Poly a, const Poly& m, std::uint64_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  std::uint64_t inv = inv_mod(m.back(), p);
  if (p < (1ull << 31)) {
    while (a.size() > dm) {
      std::uint64_t c = (a.back() * inv) % p;
      std::size_t shift = a.size() - 1 - dm;
      if (c) {
        std::uint64_t nc = p - c;
        for (std::size_t j = 0; j <= dm; ++j) a[shift + j] = (a[shift + j] + nc * m[j]) % p;
      }
      trim(a);
    }
    return a;
  }
  while (a.size() > dm) {
    std::uint64_t c = mul_mod(a.back(), inv, p);
    std::size_t shift = a.size() - 1 - dm;
    for (std::size_t j = 0; j <= dm; ++j) a[shift + j] = (a[shift + j] + p - mul_mod(c, m[j], p)) % p;
    trim(a);
  }
  return a;
}

inline Poly sub(Poly a, const Poly& b, std::uint64_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

inline Poly gcd(Poly a, Poly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    std::uint64_t inv = inv_mod(a.back(), p);
    for (auto& x : a) x = mul_mod(x, inv, p);
  }
  return a;
}

inline Poly powmod(Poly base, const boost::multiprecision::cpp_int& e, const Poly& m, std::uint64_t p) {
  Poly r{1 % p};
  trim(r);
  if (e == 0) return r;
  base = mod(std::move(base), m, p);
  for (std::size_t bit = boost::multiprecision::msb(e) + 1; bit-- > 0;) {
    r = mod(mul(r, r, p), m, p);
    if (boost::multiprecision::bit_test(e, static_cast<unsigned>(bit))) r = mod(mul(r, base, p), m, p);
  }
  return r;
}

// Ben-Or: g of degree f is irreducible iff gcd(x^{p^i} - x, g) = 1 for i <= f/2.
inline bool is_irreducible(const Poly& g, std::uint64_t p) {
  const std::size_t f = g.size() - 1;
  if (f == 1) return true;
  if (g[0] == 0) return false;
  const Poly x{0, 1};
  Poly xp = x;
  for (std::size_t i = 1; i <= f / 2; ++i) {
    xp = powmod(xp, p, g, p);
    Poly d = gcd(g, sub(xp, x, p), p);
    if (d.size() != 1) return false;
  }
  return true;
}

}  // namespace fp_poly

// GF(p^f) = F_p[x]/(g) with g the first irreducible monic polynomial of degree f in the
// order: constant term first, counting in base p.
class FiniteField {
 public:
  using Elem = fp_poly::Poly;

  FiniteField(std::uint64_t p, std::size_t f) : p_(p), f_(f) {
    if (!is_prime(p) || f == 0) throw std::invalid_argument("finite field: bad parameters");
    Elem g(f + 1, 0);
    g[f] = 1;
    while (true) {
      if (fp_poly::is_irreducible(g, p)) break;
      std::size_t i = 0;
      while (i < f && ++g[i] == p) g[i++] = 0;
      if (i == f) throw std::logic_error("finite field: no irreducible polynomial found");
    }
    modulus_ = g;
  }

  std::uint64_t characteristic() const { return p_; }
  std::size_t degree() const { return f_; }
  const Elem& modulus() const { return modulus_; }

  boost::multiprecision::cpp_int size() const {
    boost::multiprecision::cpp_int s = 1;
    for (std::size_t i = 0; i < f_; ++i) s *= p_;
    return s;
  }

  Elem one() const { return Elem{1}; }
  Elem from_int(std::int64_t v) const {
    Elem e{static_cast<std::uint64_t>(mod_floor(v, static_cast<std::int64_t>(p_)))};
    fp_poly::trim(e);
    return e;
  }
  Elem add(const Elem& a, const Elem& b) const {
    Elem c = a;
    if (c.size() < b.size()) c.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) c[i] = (c[i] + b[i]) % p_;
    fp_poly::trim(c);
    return c;
  }
  Elem mul(const Elem& a, const Elem& b) const { return fp_poly::mod(fp_poly::mul(a, b, p_), modulus_, p_); }
  Elem scale(const Elem& a, std::uint64_t s) const {
    Elem c = a;
    for (auto& x : c) x = mul_mod(x, s % p_, p_);
    fp_poly::trim(c);
    return c;
  }
  Elem pow(const Elem& a, const boost::multiprecision::cpp_int& e) const { return fp_poly::powmod(a, e, modulus_, p_); }

  // First element, in enumeration order, of exact multiplicative order m (m | p^f - 1).
  Elem element_of_order(std::uint64_t m) const {
    boost::multiprecision::cpp_int q1 = size() - 1;
    if (q1 % m != 0) throw std::invalid_argument("finite field: order does not divide p^f - 1");
    boost::multiprecision::cpp_int cof = q1 / m;
    Elem y(f_, 0);
    if (f_ > 1) y[1] = 1;
    else y[0] = 1;
    auto qs = prime_divisors(m);
    for (;;) {
      Elem t = y;
      fp_poly::trim(t);
      if (!t.empty()) {
        Elem z = pow(t, cof);
        bool ok = true;
        for (auto q : qs)
          if (pow(z, m / q) == one()) {
            ok = false;
            break;
          }
        if (ok) return z;
      }
      std::size_t i = 0;
      while (i < f_ && ++y[i] == p_) y[i++] = 0;
      if (i == f_) throw std::logic_error("finite field: no element of requested order");
    }
  }

 private:
  std::uint64_t p_;
  std::size_t f_;
  Elem modulus_;
};

}  // namespace aprat
