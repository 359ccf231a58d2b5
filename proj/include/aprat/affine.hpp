#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "aprat/constructions.hpp"
#include "aprat/errors.hpp"
#include "aprat/group.hpp"
#include "aprat/matrix.hpp"
#include "aprat/modular.hpp"
#include "aprat/rationality.hpp"

namespace aprat {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr std::uint64_t kMaxAffineVectors = 1'000'000;
inline constexpr std::uint64_t kSandwichSlack = 7200;

// A p'-subgroup H of GL_n(p). Elements live in a permutation shadow: the action of H on
// the union of the H-orbits of the standard basis vectors, which is faithful.
class MatGroup {
 public:
  MatGroup(std::uint64_t p, std::size_t n, std::vector<ModMatrix> gens) : p_(p), n_(n), gens_(std::move(gens)) {
    if (n == 0) throw InputError("matrix group: dimension must be positive");
    construct::check_matrices(p, n, gens_);
    std::erase_if(gens_, [](const ModMatrix& m) { return m.is_identity(); });
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::uint64_t> e(n, 0);
      e[i] = 1 % p;
      point_of(e);
    }
    for (std::size_t i = 0; i < points_.size(); ++i)
      for (const auto& m : gens_) point_of(m.act(points_[i]));
    std::vector<Permutation> perms;
    for (const auto& m : gens_) {
      std::vector<Point> im(points_.size());
      for (std::size_t i = 0; i < points_.size(); ++i) im[i] = point_of(m.act(points_[i]));
      perms.emplace_back(std::move(im));
    }
    shadow_ = Group::generate(points_.size(), std::move(perms));
    if (shadow_.order() % p == 0) throw InputError("matrix group: p divides |H|, the action is not coprime");
  }

  std::uint64_t prime() const { return p_; }
  std::size_t dim() const { return n_; }
  const std::vector<ModMatrix>& generators() const { return gens_; }
  std::uint64_t order() const { return shadow_.order(); }
  const Group& shadow() const { return shadow_; }

  ModMatrix element_matrix(std::size_t idx) const {
    auto x = shadow_.element(idx);
    ModMatrix m(n_, p_);
    for (std::size_t i = 0; i < n_; ++i) {
      const auto& row = points_[x[i]];
      for (std::size_t j = 0; j < n_; ++j) m.at(i, j) = row[j];
    }
    return m;
  }

  // v * element(idx)
  std::vector<std::uint64_t> act(std::span<const std::uint64_t> v, std::size_t idx) const {
    auto x = shadow_.element(idx);
    std::vector<std::uint64_t> out(n_, 0);
    for (std::size_t i = 0; i < n_; ++i) {
      if (!v[i]) continue;
      const auto& row = points_[x[i]];
      for (std::size_t j = 0; j < n_; ++j) out[j] = (out[j] + mul_mod(v[i], row[j], p_)) % p_;
    }
    return out;
  }

  std::size_t class_count() const { return shadow_.num_classes(); }

 private:
  Point point_of(const std::vector<std::uint64_t>& v) {
    auto [it, fresh] = index_.emplace(v, static_cast<Point>(points_.size()));
    if (fresh) {
      if (points_.size() >= kDefaultElementCap) throw ResourceLimitError("matrix group: shadow degree exceeds cap");
      points_.push_back(v);
    }
    return it->second;
  }

  std::uint64_t p_;
  std::size_t n_;
  std::vector<ModMatrix> gens_;
  std::vector<std::vector<std::uint64_t>> points_;
  std::map<std::vector<std::uint64_t>, Point> index_;
  Group shadow_;
};

inline MatGroup matgroup(std::uint64_t p, std::size_t n, std::vector<ModMatrix> mats) { return MatGroup(p, n, std::move(mats)); }

struct OrbitRecord {
  std::uint64_t representative = 0;  // encoded vector, lexicographically least in its orbit
  std::uint64_t size = 0;
  std::uint64_t stabilizer_order = 0;
  std::size_t stabilizer_classes = 0;
};

struct ClassCountReport {
  std::uint64_t p = 0;
  std::size_t n = 0;
  std::uint64_t order_h = 0;
  std::size_t k_h = 0;
  std::uint64_t k_hv = 0;
  std::string method;
  std::vector<OrbitRecord> orbits;
  // k(H) + (|V| - 1)/|H| as an exact fraction num/order_h
  std::uint64_t clifford_num = 0;
  bool clifford_holds = false;
  bool sandwich_checked = false;
  bool sandwich_holds = false;
  double clifford_lower() const { return static_cast<double>(clifford_num) / static_cast<double>(order_h); }
};

// k(HV) as the sum of k(C_H(v)) over orbit representatives v of H on V.
inline ClassCountReport k_semidirect(const MatGroup& h) {
  const std::uint64_t p = h.prime();
  const std::size_t n = h.dim();
  std::uint64_t size = 1;
  for (std::size_t i = 0; i < n; ++i) {
    size *= p;
    if (size > kMaxAffineVectors) throw ResourceLimitError("k_semidirect: |V| exceeds the enumeration cap");
  }
  const std::uint64_t oh = h.order();
  std::vector<char> seen(size, 0);
  ClassCountReport rep;
  rep.p = p;
  rep.n = n;
  rep.order_h = oh;
  rep.k_h = h.class_count();
  rep.method = "orbit_reps";
  std::map<std::vector<std::size_t>, std::size_t> k_cache;
  std::vector<std::uint64_t> queue;
  for (std::uint64_t x = 0; x < size; ++x) {
    if (seen[x]) continue;
    seen[x] = 1;
    queue.assign(1, x);
    for (std::size_t i = 0; i < queue.size(); ++i) {
      auto v = decode_vector(queue[i], n, p);
      for (const auto& m : h.generators()) {
        auto y = encode_vector(m.act(v), p);
        if (!seen[y]) {
          seen[y] = 1;
          queue.push_back(y);
        }
      }
    }
    OrbitRecord o;
    o.representative = x;
    o.size = queue.size();
    if (oh % o.size) throw std::logic_error("k_semidirect: orbit size does not divide |H|");
    o.stabilizer_order = oh / o.size;
    if (o.stabilizer_order == 1) {
      o.stabilizer_classes = 1;
    } else if (o.stabilizer_order == oh) {
      o.stabilizer_classes = rep.k_h;
    } else {
      auto v = decode_vector(x, n, p);
      std::vector<std::size_t> idx;
      for (std::size_t e = 0; e < oh; ++e)
        if (h.act(v, e) == v) idx.push_back(e);
      if (idx.size() != o.stabilizer_order) throw std::logic_error("k_semidirect: stabilizer order mismatch");
      auto it = k_cache.find(idx);
      if (it == k_cache.end()) it = k_cache.emplace(idx, h.shadow().subgroup_from_indices(idx).num_classes()).first;
      o.stabilizer_classes = it->second;
    }
    rep.k_hv += o.stabilizer_classes;
    rep.orbits.push_back(o);
  }
  rep.clifford_num = rep.k_h * oh + size - 1;
  rep.clifford_holds = rep.k_hv * oh >= rep.clifford_num;
  if (n == 2 && rep.k_hv <= p) {
    rep.sandwich_checked = true;
    rep.sandwich_holds = rep.clifford_holds && rep.k_hv * oh <= rep.clifford_num + kSandwichSlack * oh;
  }
  return rep;
}

// Independent path: class count of the affine permutation group on p^n points.
inline std::uint64_t k_semidirect_oracle(const MatGroup& h) {
  return construct::elementary_abelian_semidirect(h.prime(), h.dim(), h.generators()).num_classes();
}

inline std::uint64_t metacyclic_k(std::uint64_t p, std::uint64_t e) {
  if (!is_prime(p)) throw InputError("metacyclic_k: p must be prime");
  if (e == 0 || (p - 1) % e) throw InputError("metacyclic_k: e must divide p-1");
  return e + (p - 1) / e;
}

// Orbits of H on V by counting fixed points: (1/|H|) sum_h p^{dim fix(h)}.
inline BigInt burnside_orbit_count(const MatGroup& h) {
  const Group& s = h.shadow();
  BigInt total = 0;
  for (const auto& cl : s.classes()) {
    auto idx = *s.index_of(cl.representative);
    auto d = h.element_matrix(idx).fixed_space_dim();
    BigInt t = 1;
    for (std::size_t i = 0; i < d; ++i) t *= h.prime();
    total += t * cl.size;
  }
  if (total % h.order() != 0) throw std::logic_error("burnside: orbit count is not an integer");
  return total / h.order();
}

struct LowerBoundCertificate {
  std::uint64_t p = 0;
  std::size_t n = 0;
  std::uint64_t order_h = 0;
  std::size_t k_h = 0;
  BigInt orbits;
  BigInt bound;
  bool exceeds_p = false;
};

// k(HV) >= k(H) + r - 1: the zero orbit contributes k(H), every other orbit at least 1.
inline LowerBoundCertificate k_lower_bound_certificate(const MatGroup& h) {
  LowerBoundCertificate c;
  c.p = h.prime();
  c.n = h.dim();
  c.order_h = h.order();
  c.k_h = h.class_count();
  c.orbits = burnside_orbit_count(h);
  c.bound = BigInt(c.k_h) + c.orbits - 1;
  c.exceeds_p = c.bound > c.p;
  return c;
}

struct PrimeConditionVerdict {
  std::uint64_t p = 0;
  bool cond_i = false;
  std::uint64_t witness_i = 0;
  bool cond_ii = false;
  std::uint64_t witness_ii = 0;
  bool any = false;
  std::string caveat;
};

// (i) p = 1 mod m for an even m in [12, 36];
// (ii) p = 1 mod 5 and some m | p-1 has 5 <= m <= 55 with (p-1)/m even, or 12 <= m <= 48 with (p-1)/m odd.
inline PrimeConditionVerdict classify_prime_conditions(std::uint64_t p) {
  if (!is_prime(p)) throw InputError("classify: p must be prime");
  PrimeConditionVerdict v;
  v.p = p;
  for (std::uint64_t m = 12; m <= 36 && !v.cond_i; m += 2)
    if ((p - 1) % m == 0) {
      v.cond_i = true;
      v.witness_i = m;
    }
  if (p % 5 == 1) {
    for (std::uint64_t m = 5; m <= 55 && !v.cond_ii; ++m) {
      if ((p - 1) % m) continue;
      bool even = ((p - 1) / m) % 2 == 0;
      if ((even && m <= 55) || (!even && m >= 12 && m <= 48)) {
        v.cond_ii = true;
        v.witness_ii = m;
      }
    }
  }
  v.any = v.cond_i || v.cond_ii;
  v.caveat = "equivalence with k(HV) <= p for some solvable H is only claimed for p > 7300000";
  return v;
}

struct SpScanReport {
  std::uint64_t p = 0;
  std::size_t n = 0;
  std::uint64_t k_hv = 0;
  std::vector<std::uint64_t> sp;
  bool in_sp = false;
  bool counterexample = false;  // n >= 2 and k(HV) in S_p
};

inline SpScanReport sp_exclusion_scan(const MatGroup& h) {
  if (h.dim() < 2) throw InputError("S_p scan: dimension must be at least 2");
  SpScanReport r;
  r.p = h.prime();
  r.n = h.dim();
  r.k_hv = k_semidirect(h).k_hv;
  auto s = sp_set(r.p);
  r.sp = s.values;
  r.in_sp = s.contains(r.k_hv);
  r.counterexample = r.in_sp;
  return r;
}

// k(Y)/|X:Y| <= k(X) for Y <= X.
inline bool ernest_inequality_holds(const Group& x, const Group& y) {
  if (!y.is_subgroup_of(x)) throw InputError("ernest check: Y is not a subgroup of X");
  return y.num_classes() <= x.num_classes() * (x.order() / y.order());
}

}  // namespace aprat
