#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "aprat/cyclotomic.hpp"
#include "aprat/errors.hpp"
#include "aprat/finite_field.hpp"
#include "aprat/group.hpp"
#include "aprat/modular.hpp"

namespace aprat {

inline constexpr std::size_t kMaxTableClasses = 4000;

// One eigenvalue zeta_n^exponent of rho(g), with its multiplicity.
struct EigenTerm {
  std::uint32_t exponent;
  std::uint32_t multiplicity;
  friend bool operator==(const EigenTerm&, const EigenTerm&) = default;
};

namespace detail {

// Dixon prime: smallest prime l = 1 mod n above max(2 sqrt|G|, 2^28); stays below 2^31.
inline std::uint64_t dixon_prime(std::uint64_t order, std::uint64_t n) {
  std::uint64_t lo = std::max<std::uint64_t>(1ull << 28, 2 * static_cast<std::uint64_t>(std::sqrt(static_cast<double>(order))) + 2);
  std::uint64_t l = (lo / n + 1) * n + 1;
  while (!is_prime(l)) l += n;
  if (l >= (1ull << 31)) throw ResourceLimitError("dixon prime exceeds 2^31");
  return l;
}

// Arithmetic mod l < 2^31: products fit in 62 bits, sums are reduced lazily below l^2.
struct LazyMod {
  std::uint64_t l, l2;
  explicit LazyMod(std::uint64_t m) : l(m), l2(m * m) {}
  void addmul(std::uint64_t& acc, std::uint64_t a, std::uint64_t b) const {
    acc += a * b;
    if (acc >= l2) acc -= l2;
  }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return a * b % l; }
  std::uint64_t neg(std::uint64_t a) const { return a ? l - a : 0; }
};

inline std::uint64_t dot_mod(const std::uint64_t* a, const std::uint64_t* b, std::size_t len, const LazyMod& m) {
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < len; ++i) m.addmul(acc, a[i], b[i]);
  return acc % m.l;
}

// Polynomials mod l, low degree first; f monic of degree >= 1.
inline std::vector<std::uint64_t> polymulmod(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b,
                                             const std::vector<std::uint64_t>& f, const LazyMod& m) {
  const std::size_t df = f.size() - 1;
  std::vector<std::uint64_t> c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) m.addmul(c[i + j], a[i], b[j]);
  }
  for (std::size_t i = c.size(); i-- > df;) {
    std::uint64_t t = m.neg(c[i] % m.l);
    c[i] = 0;
    if (!t) continue;
    for (std::size_t j = 0; j < df; ++j) m.addmul(c[i - df + j], t, f[j]);
  }
  c.resize(df);
  for (auto& x : c) x %= m.l;
  return c;
}

inline std::vector<std::uint64_t> split_roots(const fp_poly::Poly& f, const LazyMod& m, std::mt19937_64& rng) {
  const std::uint64_t l = m.l;
  if (f.size() == 2) return {mul_mod(l - f[0], inv_mod(f[1], l), l)};
  if (f.size() < 2) return {};
  const std::uint64_t half = (l - 1) / 2;
  for (int attempt = 0; attempt < 200; ++attempt) {
    // (x + a)^half mod f
    std::vector<std::uint64_t> base(f.size() - 1, 0), h(f.size() - 1, 0);
    base[0] = rng() % l;
    base[1] = 1;
    h[0] = 1;
    for (int bit = 63 - __builtin_clzll(half); bit >= 0; --bit) {
      h = polymulmod(h, h, f, m);
      if ((half >> bit) & 1) h = polymulmod(h, base, f, m);
    }
    fp_poly::trim(h);
    h = fp_poly::sub(h, fp_poly::Poly{1}, l);
    fp_poly::Poly g = fp_poly::gcd(f, h, l);
    if (g.size() <= 1 || g.size() == f.size()) continue;
    // f / g
    fp_poly::Poly q(f.size() - g.size() + 1, 0), r = f;
    for (std::size_t i = q.size(); i-- > 0;) {
      std::uint64_t c = r[i + g.size() - 1];
      q[i] = c;
      if (!c) continue;
      for (std::size_t j = 0; j < g.size(); ++j) r[i + j] = (r[i + j] + l - mul_mod(c, g[j], l)) % l;
    }
    auto r1 = split_roots(g, m, rng);
    auto r2 = split_roots(q, m, rng);
    r1.insert(r1.end(), r2.begin(), r2.end());
    return r1;
  }
  throw std::logic_error("root splitting failed");
}

// Connection polynomial of a linearly recurrent sequence mod l (Berlekamp-Massey);
// returns c with c[0] = 1 and sum_i c_i s_{t-i} = 0.
inline std::vector<std::uint64_t> berlekamp_massey(const std::vector<std::uint64_t>& s, std::uint64_t l) {
  std::vector<std::uint64_t> c{1}, b{1};
  std::size_t len = 0, shift = 1;
  std::uint64_t bd = 1;
  for (std::size_t t = 0; t < s.size(); ++t) {
    std::uint64_t d = s[t];
    for (std::size_t i = 1; i <= len && i < c.size(); ++i) d = (d + mul_mod(c[i], s[t - i], l)) % l;
    if (!d) {
      ++shift;
      continue;
    }
    std::uint64_t coef = mul_mod(d, inv_mod(bd, l), l);
    std::vector<std::uint64_t> prev = c;
    if (c.size() < b.size() + shift) c.resize(b.size() + shift, 0);
    for (std::size_t i = 0; i < b.size(); ++i) c[i + shift] = (c[i + shift] + l - mul_mod(coef, b[i], l)) % l;
    if (2 * len <= t) {
      len = t + 1 - len;
      b = std::move(prev);
      bd = d;
      shift = 1;
    } else {
      ++shift;
    }
  }
  c.resize(len + 1, 0);
  return c;
}

struct ModularTable {
  std::vector<std::uint64_t> degrees;
  std::vector<std::vector<std::uint64_t>> values;  // [row][class] mod l
};

inline ModularTable dixon_schneider(const Group& g, std::uint64_t l) {
  const std::size_t k = g.num_classes();
  const std::uint64_t order = g.order();
  const auto& cls = g.classes();
  const LazyMod lm(l);
  std::mt19937_64 rng(0x5eed5eedULL + k);

  std::vector<std::size_t> rep_index(k);
  for (std::size_t s = 0; s < k; ++s) rep_index[s] = *g.index_of(cls[s].representative);
  std::vector<std::uint32_t> inv(order), cl(order);
  for (std::size_t x = 0; x < order; ++x) {
    inv[x] = static_cast<std::uint32_t>(g.inverse_index(x));
    cl[x] = static_cast<std::uint32_t>(g.class_of_index(x));
  }
  // target[s][x] = class of x^{-1} z_s
  std::vector<std::uint32_t> target(k * order);
  for (std::size_t s = 0; s < k; ++s)
    for (std::size_t x = 0; x < order; ++x)
      target[s * order + x] = cl[g.product_index(inv[x], rep_index[s])];
  std::vector<std::uint64_t> inv_size(k);
  for (std::size_t s = 0; s < k; ++s) inv_size[s] = inv_mod(cls[s].size % l, l);

  for (int attempt = 0; attempt < 30; ++attempt) {
    std::vector<std::uint64_t> rho(k);
    for (auto& r : rho) r = rng() % l;
    // C[r][s] = sum_{x} rho_{class x} [x^{-1} z_s in K_r]
    std::vector<std::uint64_t> c(k * k, 0);
    for (std::size_t s = 0; s < k; ++s)
      for (std::size_t x = 0; x < order; ++x) {
        auto& e = c[target[s * order + x] * k + s];
        e += rho[cl[x]];
        if (e >= l) e -= l;
      }

    // Krylov sequence and minimal polynomial with respect to v.
    std::vector<std::vector<std::uint64_t>> kry;
    std::vector<std::uint64_t> w(k);
    for (auto& x : w) x = rng() % l;
    std::vector<std::vector<std::uint64_t>> basis, combo;
    std::vector<std::size_t> pivot;
    std::vector<std::uint64_t> minpoly;
    for (std::size_t t = 0; t <= k; ++t) {
      kry.push_back(w);
      std::vector<std::uint64_t> r = w, co(t + 1, 0);
      co[t] = 1;
      for (std::size_t i = 0; i < basis.size(); ++i) {
        std::uint64_t f = lm.neg(r[pivot[i]] % l);
        if (!f) continue;
        const auto& bi = basis[i];
        for (std::size_t j = 0; j < k; ++j) lm.addmul(r[j], f, bi[j]);
        const auto& ci = combo[i];
        for (std::size_t j = 0; j < ci.size(); ++j) lm.addmul(co[j], f, ci[j]);
      }
      for (auto& x : r) x %= l;
      for (auto& x : co) x %= l;
      std::size_t pv = 0;
      while (pv < k && r[pv] == 0) ++pv;
      if (pv == k) {
        minpoly = co;
        break;
      }
      std::uint64_t iv = inv_mod(r[pv], l);
      for (auto& x : r) x = lm.mul(x, iv);
      for (auto& x : co) x = lm.mul(x, iv);
      basis.push_back(std::move(r));
      combo.push_back(std::move(co));
      pivot.push_back(pv);
      std::vector<std::uint64_t> nw(k);
      for (std::size_t i = 0; i < k; ++i) nw[i] = dot_mod(&c[i * k], w.data(), k, lm);
      w = std::move(nw);
    }
    if (minpoly.size() != k + 1) continue;

    auto roots = split_roots(minpoly, lm, rng);
    if (roots.size() != k) continue;

    ModularTable out;
    bool ok = true;
    for (auto lambda : roots) {
      // q = minpoly / (x - lambda), u = q(C) v
      std::vector<std::uint64_t> q(k, 0);
      std::uint64_t carry = 0;
      for (std::size_t i = k; i-- > 0;) {
        carry = (minpoly[i + 1] + lm.mul(carry, lambda)) % l;
        q[i] = carry;
      }
      std::vector<std::uint64_t> u(k, 0);
      for (std::size_t j = 0; j < k; ++j) {
        if (!q[j]) continue;
        const auto& kj = kry[j];
        for (std::size_t s = 0; s < k; ++s) lm.addmul(u[s], q[j], kj[s]);
      }
      for (auto& x : u) x %= l;
      if (!u[0]) {
        ok = false;
        break;
      }
      std::uint64_t iu = inv_mod(u[0], l);
      for (auto& x : u) x = lm.mul(x, iu);
      // sum_s w_s w_{s^-1} / h_s = |G| / chi(1)^2
      std::uint64_t sum = 0;
      for (std::size_t s = 0; s < k; ++s) sum = (sum + lm.mul(lm.mul(u[s], u[g.inverse_class(s)]), inv_size[s])) % l;
      if (!sum) {
        ok = false;
        break;
      }
      std::uint64_t d2 = lm.mul(order % l, inv_mod(sum, l));
      auto d = static_cast<std::uint64_t>(std::llround(std::sqrt(static_cast<double>(d2))));
      while (d * d > d2) --d;
      while ((d + 1) * (d + 1) <= d2) ++d;
      if (d == 0 || d * d != d2 || order % d != 0) {
        ok = false;
        break;
      }
      std::vector<std::uint64_t> vals(k);
      for (std::size_t s = 0; s < k; ++s) vals[s] = lm.mul(lm.mul(d, u[s]), inv_size[s]);
      out.degrees.push_back(d);
      out.values.push_back(std::move(vals));
    }
    if (ok) return out;
  }
  throw std::logic_error("dixon-schneider: no splitting combination found");
}

}  // namespace detail

struct OrthogonalityReport {
  bool ok = true;
  std::uint64_t sum_of_squares = 0;
  std::vector<std::string> violations;
};

struct BlockDistribution {
  std::uint64_t p = 0;
  std::vector<std::size_t> block_of;
  std::size_t principal_block_id = 0;
  std::size_t num_blocks = 0;
  bool degenerate = false;  // p does not divide |G|
  // reduction data
  std::size_t field_degree = 1;
  std::vector<std::uint64_t> field_modulus;
  std::vector<std::uint64_t> root_image;  // image of a primitive n_{p'}-th root of unity
};

class CharacterTable {
 public:
  explicit CharacterTable(Group g) : g_(std::move(g)) {
    const std::size_t k = g_.num_classes();
    if (k > kMaxTableClasses) throw ResourceLimitError("character table: too many classes");
    n_ = g_.exponent();
    ell_ = detail::dixon_prime(g_.order(), n_);
    setup_roots();
    auto mt = detail::dixon_schneider(g_, ell_);
    lift(mt);
    sort_rows();
  }

  // Rebuild from stored eigenvalue data (cache replay).
  CharacterTable(Group g, std::uint64_t ell, std::vector<std::uint64_t> degrees,
                 std::vector<std::vector<std::vector<EigenTerm>>> terms)
      : g_(std::move(g)) {
    const std::size_t k = g_.num_classes();
    n_ = g_.exponent();
    ell_ = ell;
    if (degrees.size() != k || terms.size() != k) throw std::invalid_argument("table data has wrong shape");
    if (!is_prime(ell_) || (ell_ - 1) % n_ != 0) throw std::invalid_argument("table data: bad prime");
    setup_roots();
    degrees_ = std::move(degrees);
    offsets_.push_back(0);
    for (std::size_t r = 0; r < k; ++r) {
      if (terms[r].size() != k) throw std::invalid_argument("table data has wrong shape");
      for (std::size_t c = 0; c < k; ++c) {
        std::uint64_t tot = 0;
        for (auto t : terms[r][c]) {
          if (t.exponent >= n_) throw std::invalid_argument("table data: exponent out of range");
          pool_.push_back(t);
          tot += t.multiplicity;
        }
        if (tot != degrees_[r]) throw std::invalid_argument("table data: multiplicities do not sum to degree");
        offsets_.push_back(pool_.size());
      }
    }
    build_modular();
  }

  const Group& group() const { return g_; }
  std::size_t size() const { return degrees_.size(); }
  std::uint64_t exponent() const { return n_; }
  std::uint64_t dixon_prime() const { return ell_; }
  const std::vector<std::uint64_t>& degrees() const { return degrees_; }
  const std::vector<ConjugacyClass>& classes() const { return g_.classes(); }

  std::span<const EigenTerm> eigenvalues(std::size_t row, std::size_t cls) const {
    std::size_t i = row * size() + cls;
    return {pool_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
  }

  CyclotomicValue value(std::size_t row, std::size_t cls) const {
    std::vector<std::pair<std::uint64_t, std::int64_t>> t;
    for (auto e : eigenvalues(row, cls)) t.emplace_back(e.exponent, e.multiplicity);
    return CyclotomicValue::from_terms(n_, t);
  }

  std::uint64_t value_mod(std::size_t row, std::size_t cls) const { return modvals_[row][cls]; }

  std::complex<double> value_complex(std::size_t row, std::size_t cls) const {
    std::complex<double> z(0, 0);
    for (auto e : eigenvalues(row, cls))
      z += static_cast<double>(e.multiplicity) *
           std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(e.exponent) / static_cast<double>(n_));
    return z;
  }

  bool row_is_rational(std::size_t row) const {
    for (std::size_t c = 0; c < size(); ++c)
      if (!value(row, c).is_rational()) return false;
    return true;
  }

  // Row of chi^sigma_m where sigma_m: zeta_n -> zeta_n^m.
  std::size_t galois_conjugate_row(std::size_t row, std::int64_t m) const {
    auto mm = static_cast<std::uint64_t>(mod_floor(m, static_cast<std::int64_t>(n_)));
    if (std::gcd(mm, n_) != 1 && n_ > 1) throw InputError("galois_conjugate_row: m is not coprime to the exponent");
    std::vector<std::uint64_t> v(size());
    for (std::size_t c = 0; c < size(); ++c) v[c] = modvals_[row][g_.power_class(c, static_cast<std::int64_t>(mm))];
    auto it = row_lookup_.find(v);
    if (it == row_lookup_.end()) throw std::logic_error("galois_conjugate_row: no matching row");
    return it->second;
  }

  // Least m | n with every value in Q(zeta_m).
  std::uint64_t conductor() const {
    std::uint64_t m = 1;
    for (auto [q, e] : factorize(n_)) {
      unsigned a = 0;
      for (; a < e; ++a) {
        auto gens = galois_generators(n_, q, a);
        bool fixed = true;
        for (std::size_t r = 0; r < size() && fixed; ++r)
          for (auto u : gens)
            if (galois_conjugate_row(r, static_cast<std::int64_t>(u)) != r) {
              fixed = false;
              break;
            }
        if (fixed) break;
      }
      m *= ipow(q, a);
    }
    return m;
  }

  OrthogonalityReport verify_orthogonality() const {
    OrthogonalityReport rep;
    const std::size_t k = size();
    const std::uint64_t order = g_.order();
    const auto& cls = classes();
    for (std::size_t r = 0; r < k; ++r) {
      rep.sum_of_squares += degrees_[r] * degrees_[r];
      if (order % degrees_[r]) rep.violations.push_back("degree " + std::to_string(degrees_[r]) + " does not divide |G|");
      auto first = value(r, 0);
      if (!first.is_rational() || first.rational_value() != static_cast<std::int64_t>(degrees_[r]))
        rep.violations.push_back("row " + std::to_string(r) + ": value at identity differs from degree");
      for (std::size_t c = 0; c < k; ++c)
        if (std::abs(value_complex(r, c)) > static_cast<double>(degrees_[r]) + 1e-6)
          rep.violations.push_back("row " + std::to_string(r) + ": |chi(g)| exceeds chi(1)");
    }
    if (rep.sum_of_squares != order) rep.violations.push_back("sum of squared degrees differs from |G|");

    std::vector<std::int64_t> acc(n_);
    const EigenTerm* pool = pool_.data();
    const std::uint32_t n32 = static_cast<std::uint32_t>(n_);
    // acc += w * chi_i(c_i) * conj(chi_j(c_j))
    auto accumulate = [&](std::size_t i, std::size_t j, std::int64_t w) {
      const EigenTerm* xe = pool + offsets_[i + 1];
      const EigenTerm* ye = pool + offsets_[j + 1];
      for (const EigenTerm* x = pool + offsets_[i]; x != xe; ++x)
        for (const EigenTerm* y = pool + offsets_[j]; y != ye; ++y) {
          std::uint32_t e = x->exponent + n32 - y->exponent;
          if (e >= n32) e -= n32;
          acc[e] += w * x->multiplicity * y->multiplicity;
        }
    };
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = a; b < k; ++b) {
        std::fill(acc.begin(), acc.end(), 0);
        for (std::size_t c = 0; c < k; ++c) accumulate(a * k + c, b * k + c, static_cast<std::int64_t>(cls[c].size));
        if (!dense_equals_integer(acc, n_, a == b ? static_cast<std::int64_t>(order) : 0))
          rep.violations.push_back("row orthogonality fails for rows " + std::to_string(a) + ", " + std::to_string(b));
      }
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = a; b < k; ++b) {
        std::fill(acc.begin(), acc.end(), 0);
        for (std::size_t r = 0; r < k; ++r) accumulate(r * k + a, r * k + b, 1);
        if (!dense_equals_integer(acc, n_, a == b ? static_cast<std::int64_t>(g_.centralizer_order(a)) : 0))
          rep.violations.push_back("column orthogonality fails for classes " + std::to_string(a) + ", " +
                                   std::to_string(b));
      }
    rep.ok = rep.violations.empty();
    return rep;
  }

  BlockDistribution block_distribution(std::uint64_t p) const {
    if (!is_prime(p)) throw InputError("block_distribution: p must be prime");
    BlockDistribution bd;
    bd.p = p;
    const std::size_t k = size();
    bd.block_of.resize(k);
    if (g_.order() % p != 0) {
      bd.degenerate = true;
      for (std::size_t r = 0; r < k; ++r) bd.block_of[r] = r;
      bd.num_blocks = k;
      return bd;
    }
    auto split = [&](std::uint64_t x) {
      std::uint64_t xp = 1;
      while (x % p == 0) {
        x /= p;
        xp *= p;
      }
      return std::pair{xp, x};
    };
    auto [np, nq] = split(n_);
    std::size_t f = nq == 1 ? 1 : multiplicative_order(p % nq, nq);
    // values live in Z[zeta_m]; reduce there when its residue field is smaller
    const std::uint64_t m = conductor();
    auto [mp, mq] = split(m);
    const std::size_t fm = mq == 1 ? 1 : multiplicative_order(p % mq, mq);
    const bool sub = fm < f;
    const std::uint64_t bq = sub ? mq : nq, bp = sub ? mp : np;
    FiniteField field(p, sub ? fm : f);
    auto theta0 = field.element_of_order(bq);
    std::uint64_t a = bq == 1 ? 0 : inv_mod(bp % bq, bq);
    auto img = field.pow(theta0, a);
    std::vector<FiniteField::Elem> pw(bq);
    pw[0] = field.one();
    for (std::size_t j = 1; j < bq; ++j) pw[j] = field.mul(pw[j - 1], img);
    bd.field_degree = field.degree();
    bd.field_modulus = field.modulus();
    bd.root_image = theta0;

    // coordinates mod p in the Z[zeta_m] basis from coordinates in the Z[zeta_n] basis
    std::vector<std::size_t> pivots;
    std::vector<std::vector<std::uint64_t>> inv;
    if (sub) std::tie(pivots, inv) = subfield_coordinates(m, p);
    auto reduce = [&](const CyclotomicValue& v, std::int64_t div) {
      const auto& co = v.coeffs();
      std::vector<std::uint64_t> r(co.size());
      for (std::size_t i = 0; i < co.size(); ++i) {
        if (!co[i]) continue;
        if (co[i] % div) throw std::logic_error("central character is not integral");
        r[i] = static_cast<std::uint64_t>(mod_floor(co[i] / div, static_cast<std::int64_t>(p)));
      }
      if (!sub) return r;
      std::vector<std::uint64_t> b(inv.size());
      for (std::size_t i = 0; i < inv.size(); ++i) {
        std::uint64_t t = 0;
        for (std::size_t j = 0; j < pivots.size(); ++j) t = (t + mul_mod(inv[i][j], r[pivots[j]], p)) % p;
        b[i] = t;
      }
      return b;
    };

    const auto& cls = classes();
    std::map<std::vector<FiniteField::Elem>, std::size_t> ids;
    for (std::size_t r = 0; r < k; ++r) {
      const std::uint64_t d = degrees_[r];
      const unsigned vd = valuation(d, p);
      std::vector<FiniteField::Elem> key(k);
      for (std::size_t c = 0; c < k; ++c) {
        const std::uint64_t h = cls[c].size;
        const unsigned vh = valuation(h, p);
        FiniteField::Elem acc;
        if (vh > vd) {
          // zero
        } else if (vh == vd && !sub) {
          std::uint64_t pv = ipow(p, vh);
          std::uint64_t s = mul_mod((h / pv) % p, inv_mod((d / pv) % p, p), p);
          for (auto e : eigenvalues(r, c)) acc = field.add(acc, field.scale(pw[e.exponent % nq], e.multiplicity));
          acc = field.scale(acc, s);
        } else {
          std::vector<std::uint64_t> co;
          if (vh == vd) {
            std::uint64_t pv = ipow(p, vh);
            std::uint64_t s = mul_mod((h / pv) % p, inv_mod((d / pv) % p, p), p);
            co = reduce(value(r, c).scaled(static_cast<std::int64_t>(s)), 1);
          } else {
            co = reduce(value(r, c).scaled(static_cast<std::int64_t>(h)), static_cast<std::int64_t>(d));
          }
          for (std::size_t i = 0; i < co.size(); ++i)
            if (co[i]) acc = field.add(acc, field.scale(pw[i % bq], co[i]));
        }
        key[c] = std::move(acc);
      }
      auto [it, fresh] = ids.emplace(std::move(key), ids.size());
      bd.block_of[r] = it->second;
    }
    bd.num_blocks = ids.size();
    bd.principal_block_id = bd.block_of[0];
    return bd;
  }

 private:
  // Rows of the embedding Z[zeta_m] -> Z[zeta_n] (mod p) that form an invertible block, and its inverse.
  std::pair<std::vector<std::size_t>, std::vector<std::vector<std::uint64_t>>> subfield_coordinates(std::uint64_t m,
                                                                                                    std::uint64_t p) const {
    const std::size_t dm = euler_phi(m), dn = euler_phi(n_);
    std::vector<std::vector<std::uint64_t>> e(dn, std::vector<std::uint64_t>(dm));
    for (std::size_t i = 0; i < dm; ++i) {
      std::vector<std::int64_t> unit(dm, 0);
      unit[i] = 1;
      auto col = CyclotomicValue(m, unit).embed(n_).coeffs();
      for (std::size_t r = 0; r < dn; ++r) e[r][i] = static_cast<std::uint64_t>(mod_floor(col[r], static_cast<std::int64_t>(p)));
    }
    // eliminate on a copy to choose pivot rows
    auto w = e;
    std::vector<std::size_t> pivots;
    std::vector<bool> used(dn, false);
    for (std::size_t c = 0; c < dm; ++c) {
      std::size_t r = 0;
      while (r < dn && (used[r] || w[r][c] == 0)) ++r;
      if (r == dn) throw std::logic_error("subfield embedding is singular mod p");
      used[r] = true;
      pivots.push_back(r);
      std::uint64_t iv = inv_mod(w[r][c], p);
      for (std::size_t r2 = 0; r2 < dn; ++r2) {
        if (r2 == r || w[r2][c] == 0) continue;
        std::uint64_t t = mul_mod(w[r2][c], iv, p);
        for (std::size_t j = c; j < dm; ++j) w[r2][j] = (w[r2][j] + p - mul_mod(t, w[r][j], p)) % p;
      }
    }
    // invert the square block e[pivots]
    std::vector<std::vector<std::uint64_t>> a(dm, std::vector<std::uint64_t>(2 * dm, 0));
    for (std::size_t i = 0; i < dm; ++i) {
      for (std::size_t j = 0; j < dm; ++j) a[i][j] = e[pivots[i]][j];
      a[i][dm + i] = 1;
    }
    for (std::size_t c = 0; c < dm; ++c) {
      std::size_t r = c;
      while (a[r][c] == 0) ++r;
      std::swap(a[r], a[c]);
      std::uint64_t iv = inv_mod(a[c][c], p);
      for (auto& x : a[c]) x = mul_mod(x, iv, p);
      for (std::size_t r2 = 0; r2 < dm; ++r2) {
        if (r2 == c || a[r2][c] == 0) continue;
        std::uint64_t t = a[r2][c];
        for (std::size_t j = c; j < 2 * dm; ++j) a[r2][j] = (a[r2][j] + p - mul_mod(t, a[c][j], p)) % p;
      }
    }
    std::vector<std::vector<std::uint64_t>> inv(dm, std::vector<std::uint64_t>(dm));
    for (std::size_t i = 0; i < dm; ++i)
      for (std::size_t j = 0; j < dm; ++j) inv[i][j] = a[i][dm + j];
    return {pivots, inv};
  }

  void setup_roots() {
    std::uint64_t gen = primitive_root(ell_);
    z_ = pow_mod(gen, (ell_ - 1) / n_, ell_);
    zpow_.resize(n_);
    zpow_[0] = 1;
    for (std::size_t i = 1; i < n_; ++i) zpow_[i] = mul_mod(zpow_[i - 1], z_, ell_);
  }

  void lift(const detail::ModularTable& mt) {
    const std::size_t k = g_.num_classes();
    const auto& cls = g_.classes();
    std::unordered_map<std::uint64_t, std::uint32_t> dlog;
    for (std::uint32_t i = 0; i < n_; ++i) dlog.emplace(zpow_[i], i);
    degrees_ = mt.degrees;
    offsets_.assign(1, 0);
    pool_.clear();
    for (std::size_t r = 0; r < k; ++r) {
      const std::uint64_t d = mt.degrees[r];
      for (std::size_t c = 0; c < k; ++c) {
        const std::uint64_t o = cls[c].element_order;
        const std::uint64_t step = n_ / o;
        if (d == 1) {
          auto it = dlog.find(mt.values[r][c]);
          if (it == dlog.end()) throw std::logic_error("linear character value is not a root of unity");
          pool_.push_back({it->second, 1});
        } else {
          std::vector<std::uint64_t> vals(o);
          for (std::size_t t = 0; t < o; ++t) vals[t] = mt.values[r][g_.power_class(c, static_cast<std::int64_t>(t))];
          auto terms = o > 4 * d ? lift_recurrence(vals, d, step) : std::vector<EigenTerm>{};
          if (terms.empty()) terms = lift_dft(vals, d, step);
          pool_.insert(pool_.end(), terms.begin(), terms.end());
        }
        offsets_.push_back(pool_.size());
      }
    }
  }

  // Multiplicities m_j = (1/o) sum_t chi(g^t) zeta_o^{-jt}.
  std::vector<EigenTerm> lift_dft(const std::vector<std::uint64_t>& vals, std::uint64_t d, std::uint64_t step) const {
    const std::uint64_t o = vals.size();
    const detail::LazyMod lm(ell_);
    std::uint64_t inv_o = inv_mod(o % ell_, ell_);
    std::uint64_t tot = 0;
    std::vector<EigenTerm> out;
    for (std::uint64_t j = 0; j < o; ++j) {
      std::uint64_t s = 0;
      for (std::uint64_t t = 0, jt = 0; t < o; ++t, jt = (jt + j) % o) lm.addmul(s, vals[t], zpow_[(o - jt) % o * step]);
      s = lm.mul(s % ell_, inv_o);
      if (s > d) throw std::logic_error("eigenvalue multiplicity out of range");
      if (s) out.push_back({static_cast<std::uint32_t>(j * step), static_cast<std::uint32_t>(s)});
      tot += s;
    }
    if (tot != d) throw std::logic_error("eigenvalue multiplicities do not sum to the degree");
    return out;
  }

  // Eigenvalues as roots of the recurrence satisfied by t -> chi(g^t); empty on failure.
  std::vector<EigenTerm> lift_recurrence(const std::vector<std::uint64_t>& vals, std::uint64_t d,
                                         std::uint64_t step) const {
    const std::uint64_t o = vals.size();
    const std::uint64_t l = ell_;
    std::vector<std::uint64_t> head(vals.begin(), vals.begin() + static_cast<std::ptrdiff_t>(2 * d));
    auto c = detail::berlekamp_massey(head, l);
    const std::size_t len = c.size() - 1;
    std::vector<std::uint64_t> js;
    for (std::uint64_t j = 0; j < o && js.size() <= len; ++j) {
      std::uint64_t x = zpow_[j * step], acc = 1;
      for (std::size_t i = 1; i <= len; ++i) acc = (acc * x + c[i]) % l;
      if (!acc) js.push_back(j);
    }
    if (js.size() != len) return {};
    // Vandermonde system sum_i m_i x_i^t = s_t, t < len
    std::vector<std::vector<std::uint64_t>> a(len, std::vector<std::uint64_t>(len + 1));
    for (std::size_t i = 0; i < len; ++i) {
      std::uint64_t x = zpow_[js[i] * step], pw = 1;
      for (std::size_t t = 0; t < len; ++t) {
        a[t][i] = pw;
        pw = pw * x % l;
      }
    }
    for (std::size_t t = 0; t < len; ++t) a[t][len] = vals[t];
    for (std::size_t col = 0; col < len; ++col) {
      std::size_t piv = col;
      while (piv < len && !a[piv][col]) ++piv;
      if (piv == len) return {};
      std::swap(a[piv], a[col]);
      std::uint64_t iv = inv_mod(a[col][col], l);
      for (auto& x : a[col]) x = x * iv % l;
      for (std::size_t r = 0; r < len; ++r) {
        if (r == col || !a[r][col]) continue;
        std::uint64_t f = l - a[r][col];
        for (std::size_t j = col; j <= len; ++j) a[r][j] = (a[r][j] + f * a[col][j]) % l;
      }
    }
    std::vector<EigenTerm> out;
    std::uint64_t tot = 0;
    for (std::size_t i = 0; i < len; ++i) {
      std::uint64_t m = a[i][len];
      if (m == 0 || m > d) return {};
      tot += m;
      out.push_back({static_cast<std::uint32_t>(js[i] * step), static_cast<std::uint32_t>(m)});
    }
    if (tot != d) return {};
    for (std::uint64_t t = 0; t < o; ++t) {
      std::uint64_t v = 0;
      for (auto e : out) v = (v + e.multiplicity * zpow_[(e.exponent / step) * t % o * step]) % l;
      if (v != vals[t]) return {};
    }
    return out;
  }

  void sort_rows() {
    const std::size_t k = size();
    std::vector<std::size_t> perm(k);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    auto is_trivial = [&](std::size_t r) {
      if (degrees_[r] != 1) return false;
      for (std::size_t c = 0; c < k; ++c) {
        auto e = eigenvalues(r, c);
        if (e[0].exponent != 0) return false;
      }
      return true;
    };
    auto less = [&](std::size_t a, std::size_t b) {
      bool ta = is_trivial(a), tb = is_trivial(b);
      if (ta != tb) return ta;
      if (degrees_[a] != degrees_[b]) return degrees_[a] < degrees_[b];
      for (std::size_t c = 0; c < k; ++c) {
        auto ea = eigenvalues(a, c), eb = eigenvalues(b, c);
        if (std::equal(ea.begin(), ea.end(), eb.begin(), eb.end())) continue;
        auto va = value(a, c), vb = value(b, c);
        if (va != vb) return va < vb;
      }
      return false;
    };
    std::sort(perm.begin(), perm.end(), less);
    std::vector<std::uint64_t> deg(k);
    std::vector<EigenTerm> pool;
    std::vector<std::size_t> off{0};
    for (std::size_t i = 0; i < k; ++i) {
      deg[i] = degrees_[perm[i]];
      for (std::size_t c = 0; c < k; ++c) {
        auto e = eigenvalues(perm[i], c);
        pool.insert(pool.end(), e.begin(), e.end());
        off.push_back(pool.size());
      }
    }
    degrees_ = std::move(deg);
    pool_ = std::move(pool);
    offsets_ = std::move(off);
    build_modular();
  }

  void build_modular() {
    const std::size_t k = size();
    modvals_.assign(k, std::vector<std::uint64_t>(k, 0));
    row_lookup_.clear();
    for (std::size_t r = 0; r < k; ++r) {
      for (std::size_t c = 0; c < k; ++c) {
        std::uint64_t s = 0;
        for (auto e : eigenvalues(r, c)) s = (s + mul_mod(e.multiplicity, zpow_[e.exponent], ell_)) % ell_;
        modvals_[r][c] = s;
      }
      if (!row_lookup_.emplace(modvals_[r], r).second) throw std::logic_error("character table rows coincide mod l");
    }
  }

  Group g_;
  std::uint64_t n_ = 1;
  std::uint64_t ell_ = 0;
  std::uint64_t z_ = 1;
  std::vector<std::uint64_t> zpow_;
  std::vector<std::uint64_t> degrees_;
  std::vector<EigenTerm> pool_;
  std::vector<std::size_t> offsets_;
  std::vector<std::vector<std::uint64_t>> modvals_;
  std::map<std::vector<std::uint64_t>, std::size_t> row_lookup_;
};

}  // namespace aprat
