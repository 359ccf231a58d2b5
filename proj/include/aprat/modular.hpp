#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

namespace aprat {

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mul_mod(r, b, m);
    b = mul_mod(b, b, m);
    e >>= 1;
  }
  return r;
}

// Inverse of a modulo m; throws when gcd(a, m) != 1.
inline std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m) {
  std::int64_t t = 0, nt = 1;
  std::int64_t r = static_cast<std::int64_t>(m), nr = static_cast<std::int64_t>(a % m);
  while (nr) {
    std::int64_t q = r / nr;
    t = std::exchange(nt, t - q * nt);
    r = std::exchange(nr, r - q * nr);
  }
  if (r != 1) throw std::domain_error("inv_mod: not invertible");
  if (t < 0) t += static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(t);
}

inline std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

// Deterministic Miller-Rabin for all 64-bit inputs.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

namespace detail {

// Pollard-Brent; n odd composite.
inline std::uint64_t pollard_brent(std::uint64_t n) {
  for (std::uint64_t c = 1;; ++c) {
    auto f = [&](std::uint64_t x) { return (mul_mod(x, x, n) + c) % n; };
    std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
    std::uint64_t r = 1;
    const std::uint64_t m = 128;
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      for (std::uint64_t k = 0; k < r && g == 1; k += m) {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
      }
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

inline void split(std::uint64_t n, std::vector<std::uint64_t>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  auto d = pollard_brent(n);
  split(d, out);
  split(n / d, out);
}

}  // namespace detail

// Prime factorization as (prime, exponent) pairs: trial division, then Pollard-Brent.
inline std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> f;
  for (std::uint64_t d = 2; d < 1000 && d * d <= n; ++d) {
    if (n % d) continue;
    unsigned e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    f.emplace_back(d, e);
  }
  if (n > 1) {
    std::vector<std::uint64_t> ps;
    detail::split(n, ps);
    std::sort(ps.begin(), ps.end());
    for (auto q : ps) {
      if (!f.empty() && f.back().first == q) ++f.back().second;
      else f.emplace_back(q, 1);
    }
  }
  return f;
}

inline std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (auto [p, e] : factorize(n)) out.push_back(p);
  return out;
}

inline std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out{1};
  for (auto [p, e] : factorize(n)) {
    std::size_t base = out.size();
    std::uint64_t pk = 1;
    for (unsigned i = 0; i < e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < base; ++j) out.push_back(out[j] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// p-adic valuation.
inline unsigned valuation(std::uint64_t n, std::uint64_t p) {
  unsigned v = 0;
  while (n && n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

inline std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

inline std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t r = n;
  for (auto p : prime_divisors(n)) r = r / p * (p - 1);
  return r;
}

// Multiplicative order of a modulo m (gcd(a, m) = 1).
inline std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t m) {
  if (m == 1) return 1;
  std::uint64_t ord = euler_phi(m);
  for (auto q : prime_divisors(ord))
    while (ord % q == 0 && pow_mod(a, ord / q, m) == 1) ord /= q;
  return ord;
}

// Smallest primitive root modulo an odd prime power p^k (or 2, 4).
inline std::uint64_t primitive_root(std::uint64_t m) {
  if (m <= 2) return 1;
  std::uint64_t phi = euler_phi(m);
  auto qs = prime_divisors(phi);
  for (std::uint64_t g = 2; g < m; ++g) {
    if (std::gcd(g, m) != 1) continue;
    bool ok = true;
    for (auto q : qs)
      if (pow_mod(g, phi / q, m) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  throw std::domain_error("primitive_root: modulus has no primitive root");
}

// x with x = a (mod m1), x = b (mod m2) for coprime m1, m2; result in [0, m1*m2).
inline std::uint64_t crt_pair(std::uint64_t a, std::uint64_t m1, std::uint64_t b, std::uint64_t m2) {
  if (m1 == 1) return b % m2;
  if (m2 == 1) return a % m1;
  std::uint64_t m = m1 * m2;
  std::uint64_t t = mul_mod((b + m2 - a % m2) % m2, inv_mod(m1 % m2, m2), m2);
  return (a % m1 + m1 * t) % m;
}

namespace detail {

// Generators of {u in (Z/p^k)^* : u = 1 mod p^a}.
inline std::vector<std::uint64_t> unit_subgroup_generators(std::uint64_t p, unsigned k, unsigned a) {
  if (a >= k) return {};
  const std::uint64_t pk = ipow(p, k);
  if (p == 2) {
    if (a <= 1) {
      if (k == 1) return {};
      if (k == 2) return {3};
      return {pk - 1, 5};
    }
    return {1 + ipow(2, a)};
  }
  if (a == 0) return {primitive_root(pk)};
  return {1 + ipow(p, a)};
}

}  // namespace detail

// Galois exponents m (mod n) generating Gal(Q_n / Q_{p^a n_{p'}}).
inline std::vector<std::uint64_t> galois_generators(std::uint64_t n, std::uint64_t p, unsigned a) {
  const unsigned k = valuation(n, p);
  const std::uint64_t pk = ipow(p, k), rest = n / pk;
  std::vector<std::uint64_t> out;
  for (auto u : detail::unit_subgroup_generators(p, k, a)) out.push_back(crt_pair(u % pk, pk, 1 % rest, rest));
  return out;
}

}  // namespace aprat
