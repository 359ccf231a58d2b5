#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "aprat/modular.hpp"

namespace aprat {

// Sparse monic polynomial: (degree, coefficient) pairs, descending degree.
struct SparsePoly {
  std::vector<std::pair<std::size_t, std::int64_t>> terms;
  std::size_t degree() const { return terms.empty() ? 0 : terms.front().first; }
};

namespace detail {

inline std::vector<std::int64_t> cyclotomic_dense(std::uint64_t n) {
  // Phi_n = prod_{d | n} (x^d - 1)^{mu(n/d)}; multiply the numerator factors first.
  auto mobius = [](std::uint64_t m) {
    int mu = 1;
    for (auto [p, e] : factorize(m)) {
      if (e > 1) return 0;
      mu = -mu;
    }
    return mu;
  };
  std::vector<std::int64_t> f{1};
  std::vector<std::uint64_t> denom;
  for (auto d : divisors(n)) {
    int mu = mobius(n / d);
    if (mu == 1) {
      std::vector<std::int64_t> g(f.size() + d, 0);
      for (std::size_t i = 0; i < f.size(); ++i) {
        g[i + d] += f[i];
        g[i] -= f[i];
      }
      f = std::move(g);
    } else if (mu == -1) {
      denom.push_back(d);
    }
  }
  for (auto d : denom) {
    // divide by x^d - 1: g = f / (x^d - 1), computed from the top
    std::vector<std::int64_t> g(f.size() - d, 0);
    std::vector<std::int64_t> r = f;
    for (std::size_t i = r.size(); i-- > d;) {
      std::int64_t c = r[i];
      if (!c) continue;
      g[i - d] = c;
      r[i] -= c;
      r[i - d] += c;
    }
    f = std::move(g);
  }
  return f;
}

}  // namespace detail

// n-th cyclotomic polynomial, cached.
inline const SparsePoly& cyclotomic_poly(std::uint64_t n) {
  static std::mutex mu;
  static std::map<std::uint64_t, std::unique_ptr<SparsePoly>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[n];
  if (!slot) {
    auto dense = detail::cyclotomic_dense(n);
    slot = std::make_unique<SparsePoly>();
    for (std::size_t i = dense.size(); i-- > 0;)
      if (dense[i]) slot->terms.emplace_back(i, dense[i]);
  }
  return *slot;
}

// True iff a (given mod x^n - 1, length n) equals the integer v in Q(zeta_n); a is clobbered.
inline bool dense_equals_integer(std::vector<std::int64_t>& a, std::uint64_t n, std::int64_t v) {
  const SparsePoly& phi = cyclotomic_poly(n);
  const std::size_t deg = phi.degree();
  for (std::size_t i = a.size(); i-- > deg;) {
    std::int64_t c = a[i];
    if (!c) continue;
    for (const auto& [e, k] : phi.terms) a[i - deg + e] -= c * k;
  }
  if (a[0] != v) return false;
  for (std::size_t i = 1; i < deg; ++i)
    if (a[i]) return false;
  return true;
}

// Reduce a polynomial given mod x^n - 1 (length n) modulo Phi_n; result has length phi(n).
inline std::vector<std::int64_t> reduce_cyclotomic(std::vector<std::int64_t> a, std::uint64_t n) {
  const SparsePoly& phi = cyclotomic_poly(n);
  const std::size_t deg = phi.degree();
  for (std::size_t i = a.size(); i-- > deg;) {
    std::int64_t c = a[i];
    if (!c) continue;
    for (const auto& [e, k] : phi.terms) a[i - deg + e] -= c * k;
  }
  a.resize(std::min(a.size(), deg));
  a.resize(deg, 0);
  return a;
}

// Element of Z[zeta_n] in the power basis 1, zeta, ..., zeta^{phi(n)-1}.
class CyclotomicValue {
 public:
  CyclotomicValue() : n_(1), c_{0} {}
  CyclotomicValue(std::uint64_t n, std::vector<std::int64_t> canonical) : n_(n), c_(std::move(canonical)) {
    if (c_.size() != euler_phi(n_)) throw std::invalid_argument("cyclotomic value: wrong coefficient count");
  }

  static CyclotomicValue integer(std::uint64_t n, std::int64_t v) {
    std::vector<std::int64_t> c(euler_phi(n), 0);
    c[0] = v;
    return {n, std::move(c)};
  }

  // sum of mult * zeta_n^exp
  static CyclotomicValue from_terms(std::uint64_t n, const std::vector<std::pair<std::uint64_t, std::int64_t>>& terms) {
    std::vector<std::int64_t> a(n, 0);
    for (auto [e, m] : terms) a[e % n] += m;
    return {n, reduce_cyclotomic(std::move(a), n)};
  }

  static CyclotomicValue from_dense(std::uint64_t n, std::vector<std::int64_t> mod_xn_minus_1) {
    return {n, reduce_cyclotomic(std::move(mod_xn_minus_1), n)};
  }

  std::uint64_t conductor_n() const { return n_; }
  const std::vector<std::int64_t>& coeffs() const { return c_; }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](std::int64_t x) { return x == 0; });
  }
  bool is_rational() const {
    return std::all_of(c_.begin() + 1, c_.end(), [](std::int64_t x) { return x == 0; });
  }
  std::int64_t rational_value() const {
    if (!is_rational()) throw std::domain_error("cyclotomic value is not rational");
    return c_[0];
  }

  CyclotomicValue operator+(const CyclotomicValue& o) const {
    check_same(o);
    CyclotomicValue r = *this;
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
    return r;
  }
  CyclotomicValue operator-(const CyclotomicValue& o) const {
    check_same(o);
    CyclotomicValue r = *this;
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
    return r;
  }
  CyclotomicValue operator*(const CyclotomicValue& o) const {
    check_same(o);
    std::vector<std::int64_t> a(n_, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (!c_[i]) continue;
      for (std::size_t j = 0; j < o.c_.size(); ++j) a[(i + j) % n_] += c_[i] * o.c_[j];
    }
    return from_dense(n_, std::move(a));
  }
  CyclotomicValue scaled(std::int64_t s) const {
    CyclotomicValue r = *this;
    for (auto& x : r.c_) x *= s;
    return r;
  }

  // sigma_m: zeta -> zeta^m, gcd(m, n) = 1
  CyclotomicValue galois(std::int64_t m) const {
    auto mm = static_cast<std::uint64_t>(mod_floor(m, static_cast<std::int64_t>(n_)));
    if (std::gcd(mm, n_) != 1 && n_ > 1) throw std::domain_error("galois: exponent not a unit");
    std::vector<std::int64_t> a(n_, 0);
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (c_[i]) a[mul_mod(i, mm, n_)] += c_[i];
    return from_dense(n_, std::move(a));
  }
  CyclotomicValue conj() const { return galois(-1); }

  // Same value viewed in Q(zeta_N) for n | N.
  CyclotomicValue embed(std::uint64_t big_n) const {
    if (big_n % n_) throw std::invalid_argument("embed: n does not divide target");
    std::vector<std::int64_t> a(big_n, 0);
    std::uint64_t s = big_n / n_;
    for (std::size_t i = 0; i < c_.size(); ++i) a[i * s] += c_[i];
    return from_dense(big_n, std::move(a));
  }

  std::complex<double> to_complex() const {
    std::complex<double> z(0, 0);
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (c_[i]) z += static_cast<double>(c_[i]) * std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n_));
    return z;
  }

  std::string to_string() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (!c_[i]) continue;
      std::int64_t v = c_[i];
      if (!first) os << (v < 0 ? " - " : " + ");
      else if (v < 0) os << "-";
      std::int64_t a = v < 0 ? -v : v;
      if (i == 0) os << a;
      else {
        if (a != 1) os << a << "*";
        os << "z" << n_;
        if (i > 1) os << "^" << i;
      }
      first = false;
    }
    if (first) os << "0";
    return os.str();
  }

  friend bool operator==(const CyclotomicValue&, const CyclotomicValue&) = default;
  friend auto operator<=>(const CyclotomicValue& a, const CyclotomicValue& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    return a.c_ <=> b.c_;
  }

 private:
  void check_same(const CyclotomicValue& o) const {
    if (o.n_ != n_) throw std::invalid_argument("cyclotomic values live in different fields");
  }

  std::uint64_t n_;
  std::vector<std::int64_t> c_;
};

}  // namespace aprat
