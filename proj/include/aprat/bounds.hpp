#pragma once

#include <algorithm>
#include <cmath>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <mutex>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "aprat/errors.hpp"
#include "aprat/group.hpp"
#include "aprat/modular.hpp"
#include "aprat/subgroups.hpp"

namespace aprat {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Partition numbers by Euler's pentagonal recurrence, memoized.
inline BigInt partition_count(std::size_t d) {
  if (d > 10000) throw InputError("partition_count: d must be at most 10000");
  static std::mutex mu;
  static std::vector<BigInt> memo{1};
  std::lock_guard lock(mu);
  while (memo.size() <= d) {
    const auto n = static_cast<std::int64_t>(memo.size());
    BigInt s = 0;
    for (std::int64_t k = 1;; ++k) {
      std::int64_t g1 = k * (3 * k - 1) / 2, g2 = k * (3 * k + 1) / 2;
      if (g1 > n) break;
      const BigInt& a = memo[static_cast<std::size_t>(n - g1)];
      if (k % 2) s += a;
      else s -= a;
      if (g2 <= n) {
        const BigInt& b = memo[static_cast<std::size_t>(n - g2)];
        if (k % 2) s += b;
        else s -= b;
      }
    }
    memo.push_back(std::move(s));
  }
  return memo[d];
}

namespace detail {

inline void even_sign_partitions(std::size_t left, std::size_t max_part, std::size_t even_parts, std::uint64_t& count) {
  if (left == 0) {
    if (even_parts % 2 == 0) ++count;
    return;
  }
  for (std::size_t part = std::min(left, max_part); part >= 1; --part)
    even_sign_partitions(left - part, part, even_parts + (part % 2 == 0), count);
}

}  // namespace detail

// Partitions of d whose cycle type is an even permutation (even number of even parts).
inline std::uint64_t even_partition_count(std::size_t d) {
  if (d > 26) throw InputError("even_partition_count: d must be at most 26");
  std::uint64_t c = 0;
  detail::even_sign_partitions(d, d, 0, c);
  return c;
}

namespace interval {

struct Interval {
  Rational lo, hi;
  Rational width() const { return hi - lo; }
};

inline BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline BigInt floor(const Rational& x) { return floor_div(boost::multiprecision::numerator(x), boost::multiprecision::denominator(x)); }
inline BigInt ceil(const Rational& x) { return -floor(-x); }

inline Rational pow2(long e) {
  BigInt t = 1;
  t <<= static_cast<unsigned>(e < 0 ? -e : e);
  return e < 0 ? Rational(1, t) : Rational(t);
}

// Round outward to multiples of 2^-bits.
inline Interval outward(const Interval& x, unsigned bits) {
  BigInt s = 1;
  s <<= bits;
  return {Rational(floor(x.lo * s), s), Rational(ceil(x.hi * s), s)};
}

// Integer b-th root, rounded down.
inline BigInt iroot(const BigInt& n, unsigned b) {
  if (n < 0) throw std::domain_error("iroot of a negative number");
  if (n < 2 || b == 1) return n;
  BigInt lo = 0, hi = 1;
  hi <<= static_cast<unsigned>(boost::multiprecision::msb(n) / b + 1);
  while (lo < hi) {
    BigInt mid = (lo + hi + 1) / 2;
    if (boost::multiprecision::pow(mid, b) <= n) lo = mid;
    else hi = mid - 1;
  }
  return lo;
}

inline Interval sqrt(const Rational& x, unsigned bits) {
  if (x < 0) throw std::domain_error("sqrt of a negative number");
  BigInt s = 1;
  s <<= 2 * bits;
  BigInt lo = boost::multiprecision::sqrt(floor(x * s));
  BigInt hi = boost::multiprecision::sqrt(ceil(x * s));
  if (hi * hi < ceil(x * s)) ++hi;
  BigInt d = 1;
  d <<= bits;
  return {Rational(lo, d), Rational(hi, d)};
}

// atanh(y) for 0 <= y <= 1/3
inline Interval atanh_small(const Rational& y, unsigned bits) {
  Rational eps = pow2(-static_cast<long>(bits) - 4);
  Rational term = y, y2 = y * y, sum = 0;
  for (unsigned j = 0;; ++j) {
    sum += term / (2 * j + 1);
    term *= y2;
    // remaining tail <= term/(2j+3) * 1/(1 - y^2) <= term * 9/8
    Rational tail = term * Rational(9, 8);
    if (tail < eps) return outward({sum, sum + tail}, bits + 8);
    if (j > 100000) throw std::logic_error("atanh series did not converge");
  }
}

inline Interval ln(const Rational& x, unsigned bits) {
  if (x <= 0) throw std::domain_error("ln of a non-positive number");
  // x = 2^k m with 1 <= m < 2
  long k = static_cast<long>(boost::multiprecision::msb(boost::multiprecision::numerator(x))) -
           static_cast<long>(boost::multiprecision::msb(boost::multiprecision::denominator(x)));
  Rational m = x * pow2(-k);
  while (m >= 2) {
    m /= 2;
    ++k;
  }
  while (m < 1) {
    m *= 2;
    --k;
  }
  unsigned extra = 8 + static_cast<unsigned>(boost::multiprecision::msb(BigInt(std::abs(k) + 1)));
  Interval l2 = atanh_small(Rational(1, 3), bits + extra);
  Interval lm = atanh_small((m - 1) / (m + 1), bits + extra);
  Interval r{2 * lm.lo, 2 * lm.hi};
  if (k >= 0) {
    r.lo += 2 * k * l2.lo;
    r.hi += 2 * k * l2.hi;
  } else {
    r.lo += 2 * k * l2.hi;
    r.hi += 2 * k * l2.lo;
  }
  return outward(r, bits + 2);
}

// exp(x) with relative error about 2^-bits, in fixed point with W fractional bits.
inline Interval exp(const Rational& x, unsigned bits) {
  Rational ax = x < 0 ? -x : x;
  unsigned s = 0;
  while (ax > Rational(1, 2)) {
    ax /= 2;
    ++s;
  }
  const unsigned w = bits + 2 * s + 16;
  BigInt one = 1;
  one <<= w;
  // y' = Y/2^W <= y < y' + 2^-W
  BigInt y = floor(x * pow2(-static_cast<long>(s)) * Rational(one));
  // t_k approximates 2^W y'^k/k! within 4 ulps (each step truncates twice and halves older error)
  BigInt t = one, sum = 0;
  BigInt err = 0;
  for (unsigned k = 1;; ++k) {
    sum += t;
    t = t * y / one / k;
    err += 4;
    BigInt at = t < 0 ? BigInt(-t) : t;
    if (at < 16) {
      // tail <= 2 |true t_k| <= 2 (|t| + 4)
      BigInt e = err + 2 * (at + 4) + 4;
      BigInt lo = sum - e, hi = sum + e + 4;  // +4 ulps covers y - y'
      for (unsigned i = 0; i < s; ++i) {
        lo = lo * lo / one;
        hi = (hi * hi + one - 1) / one;
      }
      return {Rational(lo, one), Rational(hi, one)};
    }
  }
}

inline Interval exp(const Interval& x, unsigned bits) { return {exp(x.lo, bits).lo, exp(x.hi, bits).hi}; }

inline Interval mul(const Interval& a, const Interval& b) {
  // positive intervals only
  if (a.lo < 0 || b.lo < 0) throw std::domain_error("interval mul expects non-negative intervals");
  return {a.lo * b.lo, a.hi * b.hi};
}

inline Interval pow(const Interval& a, unsigned e, unsigned bits) {
  Interval r{1, 1};
  for (unsigned i = 0; i < e; ++i) r = outward(mul(r, a), bits);
  return r;
}

}  // namespace interval

struct BoundEvaluation {
  std::string name;
  std::string inputs;
  interval::Interval value;
  BigInt floor, ceil;
  bool exact = false;  // value is a known integer, floor == ceil
  bool perfect_square = false;
};

namespace detail {

// N^{a/b} for positive integers: floor and ceiling by integer roots, interval of width 2^-40.
inline void rational_power(BoundEvaluation& ev, const BigInt& n, std::uint64_t a, std::uint64_t b) {
  std::uint64_t g = std::gcd(a, b);
  if (g == 0) g = 1;
  a /= g;
  b = b ? b / g : 1;
  BigInt na = boost::multiprecision::pow(n, static_cast<unsigned>(a));
  BigInt f = interval::iroot(na, static_cast<unsigned>(b));
  ev.exact = boost::multiprecision::pow(f, static_cast<unsigned>(b)) == na;
  ev.floor = f;
  ev.ceil = ev.exact ? f : f + 1;
  const unsigned k = 40;
  BigInt scaled = na << static_cast<unsigned>(k * b);
  BigInt lo = interval::iroot(scaled, static_cast<unsigned>(b));
  BigInt hi = boost::multiprecision::pow(lo, static_cast<unsigned>(b)) == scaled ? lo : lo + 1;
  BigInt d = 1;
  d <<= k;
  ev.value = {Rational(lo, d), Rational(hi, d)};
}

// Floor/ceiling from an interval around a transcendental value.
inline bool settle(BoundEvaluation& ev) {
  BigInt fl = interval::floor(ev.value.lo), fh = interval::floor(ev.value.hi);
  if (fl != fh || interval::ceil(ev.value.hi) == ev.value.hi) return false;
  if (ev.value.width() >= Rational(1, 1'000'000'000)) return false;
  ev.floor = fl;
  ev.ceil = fl + 1;
  return true;
}

inline BigInt factorial(unsigned d) {
  BigInt f = 1;
  for (unsigned i = 2; i <= d; ++i) f *= i;
  return f;
}

}  // namespace detail

enum class PermBoundKind { no_large_alt, primitive_not_alt, log_p };

// Order bounds for a permutation group R of degree r:
//   no_large_alt(d):   |R| <= d!^{(r-1)/(d-1)}
//   primitive_not_alt: |R| < 24^{(r-1)/3}
//   log_p(p):          |R| <= (ln p)^{2(r-1)}
inline BoundEvaluation perm_order_bound(PermBoundKind kind, std::uint64_t param, std::uint64_t r) {
  if (r < 1) throw InputError("perm_order_bound: degree must be positive");
  BoundEvaluation ev;
  switch (kind) {
    case PermBoundKind::no_large_alt: {
      if (param < 4) throw InputError("perm_order_bound: d must be at least 4");
      if (param > 1000) throw InputError("perm_order_bound: d too large");
      ev.name = "no_large_alt";
      ev.inputs = "d=" + std::to_string(param) + ",r=" + std::to_string(r);
      detail::rational_power(ev, detail::factorial(static_cast<unsigned>(param)), r - 1, param - 1);
      return ev;
    }
    case PermBoundKind::primitive_not_alt: {
      ev.name = "primitive_not_alt";
      ev.inputs = "r=" + std::to_string(r);
      detail::rational_power(ev, 24, r - 1, 3);
      return ev;
    }
    case PermBoundKind::log_p: {
      if (!is_prime(param)) throw InputError("perm_order_bound: p must be prime");
      ev.name = "log_p";
      ev.inputs = "p=" + std::to_string(param) + ",r=" + std::to_string(r);
      const auto e = static_cast<unsigned>(2 * (r - 1));
      if (e == 0) {
        ev.value = {1, 1};
        ev.floor = ev.ceil = 1;
        ev.exact = true;
        return ev;
      }
      for (unsigned bits = 96;; bits *= 2) {
        // (ln p)^e < 2^{2e}; give the power enough headroom
        unsigned work = bits + 3 * e + 16;
        ev.value = interval::pow(interval::ln(Rational(param), work), e, work);
        if (detail::settle(ev)) return ev;
        if (bits > 1u << 16) throw std::logic_error("perm_order_bound: could not certify");
      }
    }
  }
  throw InputError("perm_order_bound: unknown kind");
}

// 2 sqrt(p - 1): the lower bound for k(G) when p divides |G|.
inline BoundEvaluation brauer_min_k(std::uint64_t p) {
  if (!is_prime(p)) throw InputError("brauer_min_k: p must be prime");
  BoundEvaluation ev;
  ev.name = "brauer_min_k";
  ev.inputs = "p=" + std::to_string(p);
  BigInt four = BigInt(4) * (p - 1);
  BigInt f = boost::multiprecision::sqrt(four);
  ev.exact = f * f == four;
  ev.perfect_square = ev.exact;
  ev.floor = f;
  ev.ceil = ev.exact ? f : f + 1;
  ev.value = interval::sqrt(Rational(four), 40);
  return ev;
}

struct GrowthCheck {
  std::size_t d = 0;
  BigInt partitions;
  interval::Interval rhs;  // e^{2 sqrt d} / 14
  bool holds = false;
};

// pi(d) >= e^{2 sqrt d}/14, decided with a certified enclosure of the right side.
inline GrowthCheck partition_growth_check(std::size_t d) {
  if (d < 1 || d > 10000) throw InputError("partition_growth_check: d must lie in [1, 10000]");
  GrowthCheck g;
  g.d = d;
  g.partitions = partition_count(d);
  Rational pd(g.partitions);
  // e^{2 sqrt d} has about 2.9 sqrt d bits before the point
  for (auto bits = static_cast<unsigned>(48 + 3 * std::sqrt(static_cast<double>(d)));; bits *= 2) {
    auto s = interval::sqrt(Rational(d), bits + 16);
    auto e = interval::exp(interval::Interval{2 * s.lo, 2 * s.hi}, bits + 16);
    g.rhs = {e.lo / 14, e.hi / 14};
    if (g.rhs.width() < Rational(1, 1'000'000'000)) {
      if (pd >= g.rhs.hi) {
        g.holds = true;
        return g;
      }
      if (pd < g.rhs.lo) return g;
    }
    if (bits > 1u << 14) throw std::logic_error("partition_growth_check: could not decide");
  }
}

namespace detail {

// PGammaL(2,9) on the 10 points of the projective line over F_9 = F_3[i], i^2 = -1.
// Field element a + b i is stored as 3a + b; infinity is point 9.
inline Group pgaml_2_9() {
  auto add = [](int x, int y) { return ((x / 3 + y / 3) % 3) * 3 + (x % 3 + y % 3) % 3; };
  auto mul = [](int x, int y) {
    int a = x / 3, b = x % 3, c = y / 3, d = y % 3;
    return (((a * c - b * d) % 3 + 3) % 3) * 3 + (a * d + b * c) % 3;
  };
  auto inv = [&](int x) {
    for (int y = 1; y < 9; ++y)
      if (mul(x, y) == 3) return y;
    throw std::logic_error("no inverse");
  };
  auto neg = [](int x) { return ((3 - x / 3) % 3) * 3 + (3 - x % 3) % 3; };
  std::vector<Point> shift(10), scale(10), invert(10), frob(10);
  const int omega = 4;  // 1 + i has order 8
  for (int x = 0; x < 9; ++x) {
    shift[x] = static_cast<Point>(add(x, 3));
    scale[x] = static_cast<Point>(mul(x, omega));
    invert[x] = static_cast<Point>(x == 0 ? 9 : neg(inv(x)));
    frob[x] = static_cast<Point>(mul(mul(x, x), x));
  }
  shift[9] = scale[9] = frob[9] = 9;
  invert[9] = 0;
  return Group::generate(10, {Permutation(shift), Permutation(scale), Permutation(invert), Permutation(frob)});
}

}  // namespace detail

// Number of Aut(Alt(d))-orbits on Alt(d), by enumeration, d <= 10.
inline std::uint64_t k_star_alternating(unsigned d) {
  if (d > 10) throw InputError("k_star_alternating: d must be at most 10");
  if (d == 6) {
    Group aut = detail::pgaml_2_9();
    if (aut.order() != 1440) throw std::logic_error("PGammaL(2,9) has wrong order");
    Group s = derived_subgroup(aut);
    if (s.order() != 360) throw std::logic_error("PSL(2,9) has wrong order");
    std::uint64_t c = 0;
    for (const auto& k : aut.classes())
      if (s.contains(k.representative)) ++c;
    return c;
  }
  // Aut(Alt(d)) acts as Sym(d) here: orbits are the cycle types of even permutations
  std::vector<unsigned> perm(d);
  std::iota(perm.begin(), perm.end(), 0u);
  std::set<std::vector<unsigned>> types;
  std::vector<char> seen(d);
  do {
    std::fill(seen.begin(), seen.end(), 0);
    std::vector<unsigned> t;
    unsigned even = 0;
    for (unsigned i = 0; i < d; ++i) {
      if (seen[i]) continue;
      unsigned len = 0;
      for (unsigned j = i; !seen[j]; j = perm[j]) {
        seen[j] = 1;
        ++len;
      }
      t.push_back(len);
      even += len % 2 == 0;
    }
    if (even % 2) continue;
    std::sort(t.begin(), t.end());
    types.insert(std::move(t));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return types.empty() ? 1 : types.size();
}

}  // namespace aprat
