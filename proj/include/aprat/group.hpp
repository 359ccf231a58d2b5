#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aprat/errors.hpp"
#include "aprat/permutation.hpp"

namespace aprat {

// Desk-scale limit on the number of enumerated group elements.
inline constexpr std::size_t kDefaultElementCap = 2'000'000;

namespace detail {

inline std::uint64_t hash_points(std::span<const Point> x) noexcept {
  std::uint64_t h = 0x9E3779B97F4A7C15ull ^ x.size();
  for (Point v : x) {
    h ^= v + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
    h *= 0xBF58476D1CE4E5B9ull;
  }
  return h ^ (h >> 31);
}

// Flat store of equal-length point arrays with open-addressing lookup.
class ElementStore {
 public:
  explicit ElementStore(std::size_t degree = 0) : degree_(degree), slots_(16, kEmpty) {}

  std::size_t size() const noexcept { return count_; }
  std::size_t degree() const noexcept { return degree_; }

  std::span<const Point> operator[](std::size_t i) const noexcept {
    return {data_.data() + i * degree_, degree_};
  }

  std::optional<std::size_t> find(std::span<const Point> x) const noexcept {
    std::size_t mask = slots_.size() - 1;
    for (std::size_t s = hash_points(x) & mask;; s = (s + 1) & mask) {
      std::uint32_t v = slots_[s];
      if (v == kEmpty) return std::nullopt;
      if (std::equal(x.begin(), x.end(), data_.begin() + v * degree_)) return v;
    }
  }

  // Returns (index, inserted).
  std::pair<std::size_t, bool> insert(std::span<const Point> x) {
    if (auto f = find(x)) return {*f, false};
    if ((count_ + 1) * 2 > slots_.size()) grow();
    data_.insert(data_.end(), x.begin(), x.end());
    place(static_cast<std::uint32_t>(count_));
    return {count_++, true};
  }

 private:
  static constexpr std::uint32_t kEmpty = 0xFFFFFFFFu;

  void place(std::uint32_t idx) {
    std::size_t mask = slots_.size() - 1;
    std::size_t s = hash_points((*this)[idx]) & mask;
    while (slots_[s] != kEmpty) s = (s + 1) & mask;
    slots_[s] = idx;
  }

  void grow() {
    slots_.assign(slots_.size() * 2, kEmpty);
    for (std::size_t i = 0; i < count_; ++i) place(static_cast<std::uint32_t>(i));
  }

  std::size_t degree_;
  std::size_t count_ = 0;
  std::vector<Point> data_;
  std::vector<std::uint32_t> slots_;
};

inline bool is_prime_small(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::uint64_t p_part(std::uint64_t n, std::uint64_t p) {
  std::uint64_t r = 1;
  while (n % p == 0) {
    n /= p;
    r *= p;
  }
  return r;
}

}  // namespace detail

struct ConjugacyClass {
  Permutation representative;
  std::uint64_t size = 0;
  std::uint64_t element_order = 0;
};

// Finite permutation group held by full element enumeration. Copies share the
// immutable element store; class data is computed once on first use.
class Group {
 public:
  Group() : Group(generate(0, {})) {}

  static Group generate(std::size_t degree, std::vector<Permutation> gens,
                        std::size_t cap = kDefaultElementCap) {
    for (const auto& g : gens)
      if (g.degree() != degree) throw InputError("generator degree does not match group degree");
    auto impl = std::make_shared<Impl>();
    impl->degree = degree;
    impl->store = detail::ElementStore(degree);
    impl->store.insert(Permutation::identity(degree).images());
    std::vector<Point> buf(degree);
    for (std::size_t i = 0; i < impl->store.size(); ++i) {
      for (const auto& g : gens) {
        auto x = impl->store[i];
        for (std::size_t j = 0; j < degree; ++j) buf[j] = g[x[j]];
        if (impl->store.insert(buf).second && impl->store.size() > cap)
          throw ResourceLimitError("group order exceeds enumeration cap of " + std::to_string(cap));
      }
    }
    std::erase_if(gens, [](const Permutation& g) { return g.is_identity(); });
    impl->generators = std::move(gens);
    return Group(std::move(impl));
  }

  std::size_t degree() const noexcept { return impl_->degree; }
  std::uint64_t order() const noexcept { return impl_->store.size(); }
  const std::vector<Permutation>& generators() const noexcept { return impl_->generators; }

  std::span<const Point> element(std::size_t i) const noexcept { return impl_->store[i]; }
  Permutation element_perm(std::size_t i) const { return Permutation(element(i), true); }

  std::optional<std::size_t> index_of(std::span<const Point> x) const noexcept {
    if (x.size() != degree()) return std::nullopt;
    return impl_->store.find(x);
  }
  std::optional<std::size_t> index_of(const Permutation& x) const noexcept { return index_of(x.images()); }
  bool contains(const Permutation& x) const noexcept { return index_of(x).has_value(); }

  // Index of element(a) * element(b), found through the images of a base.
  std::size_t product_index(std::size_t a, std::size_t b) const {
    ensure_base();
    const auto& base = impl_->base;
    Point small[32];
    std::vector<Point> big;
    Point* buf = small;
    if (base.size() > 32) {
      big.resize(base.size());
      buf = big.data();
    }
    auto x = element(a), y = element(b);
    for (std::size_t j = 0; j < base.size(); ++j) buf[j] = y[x[base[j]]];
    return *impl_->base_store.find({buf, base.size()});
  }

  // Points whose images determine a group element.
  const std::vector<Point>& base() const {
    ensure_base();
    return impl_->base;
  }

  std::size_t inverse_index(std::size_t a) const {
    std::vector<Point> buf(degree());
    auto x = element(a);
    for (std::size_t j = 0; j < buf.size(); ++j) buf[x[j]] = static_cast<Point>(j);
    return *index_of(buf);
  }

  // Classes sorted by (element order, size, representative); the identity class is index 0.
  const std::vector<ConjugacyClass>& classes() const {
    ensure_classes();
    return impl_->classes;
  }
  std::size_t num_classes() const { return classes().size(); }

  std::size_t class_of_index(std::size_t element_index) const {
    ensure_classes();
    return impl_->class_of[element_index];
  }

  std::size_t class_of(const Permutation& g) const {
    auto idx = index_of(g);
    if (!idx) throw InputError("element is not in the group");
    return class_of_index(*idx);
  }

  // Class of rep(c)^m.
  std::size_t power_class(std::size_t c, std::int64_t m) const {
    ensure_powers();
    const auto& row = impl_->power_table[c];
    auto o = static_cast<std::int64_t>(row.size());
    return row[static_cast<std::size_t>(((m % o) + o) % o)];
  }

  std::size_t inverse_class(std::size_t c) const { return power_class(c, -1); }

  std::uint64_t exponent() const {
    std::uint64_t e = 1;
    for (const auto& k : classes()) e = std::lcm(e, k.element_order);
    return e;
  }

  std::uint64_t centralizer_order(std::size_t c) const { return order() / classes()[c].size; }

  bool is_subgroup_of(const Group& parent) const {
    if (parent.degree() != degree()) return false;
    return std::all_of(generators().begin(), generators().end(),
                       [&](const Permutation& g) { return parent.contains(g); });
  }

  bool is_abelian() const {
    const auto& gs = generators();
    for (std::size_t i = 0; i < gs.size(); ++i)
      for (std::size_t j = i + 1; j < gs.size(); ++j)
        if (gs[i] * gs[j] != gs[j] * gs[i]) return false;
    return true;
  }

  // Subgroup from a list of element indices that is known to be closed.
  Group subgroup_from_indices(std::vector<std::size_t> indices) const {
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    std::vector<char> in_set(order(), 0);
    for (auto i : indices) in_set[i] = 1;
    std::vector<char> reached(order(), 0);
    std::vector<std::size_t> reached_list{0};
    reached[0] = 1;
    std::vector<std::size_t> gen_idx;
    for (auto i : indices) {
      if (reached[i]) continue;
      gen_idx.push_back(i);
      // Rescan from the start so earlier elements also meet the new generator.
      for (std::size_t pos = 0; pos < reached_list.size(); ++pos) {
        for (auto g : gen_idx) {
          auto y = product_index(reached_list[pos], g);
          if (!reached[y]) {
            if (!in_set[y]) throw std::logic_error("index set is not closed under multiplication");
            reached[y] = 1;
            reached_list.push_back(y);
          }
        }
      }
    }
    if (reached_list.size() != indices.size() && !(indices.empty() && reached_list.size() == 1))
      throw std::logic_error("index set is not a subgroup");
    std::vector<Permutation> gens;
    for (auto g : gen_idx) gens.push_back(element_perm(g));
    return generate(degree(), std::move(gens));
  }

  Group subgroup(std::vector<Permutation> gens) const {
    for (const auto& g : gens)
      if (!contains(g)) throw InputError("subgroup generator not in parent group");
    return generate(degree(), std::move(gens));
  }

 private:
  struct Impl {
    std::size_t degree = 0;
    std::vector<Permutation> generators;
    detail::ElementStore store;
    std::once_flag classes_once;
    std::vector<ConjugacyClass> classes;
    std::vector<std::uint32_t> class_of;
    std::once_flag powers_once;
    std::vector<std::vector<std::size_t>> power_table;
    std::once_flag base_once;
    std::vector<Point> base;
    detail::ElementStore base_store;
  };

  explicit Group(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}

  void ensure_base() const {
    std::call_once(impl_->base_once, [this] {
      Impl& d = *impl_;
      const std::size_t n = d.store.size();
      std::vector<Point> base;
      std::size_t distinct = 1;
      std::vector<Point> buf;
      for (Point pt = 0; pt < d.degree && distinct < n; ++pt) {
        detail::ElementStore trial(base.size() + 1);
        buf.resize(base.size() + 1);
        for (std::size_t e = 0; e < n; ++e) {
          auto x = d.store[e];
          for (std::size_t j = 0; j < base.size(); ++j) buf[j] = x[base[j]];
          buf[base.size()] = x[pt];
          trial.insert(buf);
        }
        if (trial.size() > distinct) {
          distinct = trial.size();
          base.push_back(pt);
        }
      }
      d.base_store = detail::ElementStore(base.size());
      buf.resize(base.size());
      for (std::size_t e = 0; e < n; ++e) {
        auto x = d.store[e];
        for (std::size_t j = 0; j < base.size(); ++j) buf[j] = x[base[j]];
        d.base_store.insert(buf);
      }
      if (d.base_store.size() != n) throw std::logic_error("group base does not separate elements");
      d.base = std::move(base);
    });
  }

  void ensure_classes() const {
    std::call_once(impl_->classes_once, [this] { compute_classes(); });
  }

  void compute_classes() const {
    Impl& d = *impl_;
    const std::size_t n = d.store.size();
    constexpr std::uint32_t kUnset = 0xFFFFFFFFu;
    std::vector<std::uint32_t> raw(n, kUnset);
    std::vector<std::vector<std::size_t>> members;
    ensure_base();
    const auto& base = d.base;
    std::vector<Point> buf(base.size());
    std::vector<std::vector<Point>> ginv;
    for (const auto& g : d.generators) ginv.push_back(g.inverse().image_vector());
    for (std::size_t s = 0; s < n; ++s) {
      if (raw[s] != kUnset) continue;
      auto cid = static_cast<std::uint32_t>(members.size());
      members.push_back({s});
      raw[s] = cid;
      auto& orbit = members.back();
      for (std::size_t pos = 0; pos < orbit.size(); ++pos) {
        for (std::size_t gi = 0; gi < d.generators.size(); ++gi) {
          const auto& g = d.generators[gi];
          auto x = d.store[orbit[pos]];
          // y = g^-1 x g
          for (std::size_t j = 0; j < base.size(); ++j) buf[j] = g[x[ginv[gi][base[j]]]];
          auto y = *d.base_store.find(buf);
          if (raw[y] == kUnset) {
            raw[y] = cid;
            orbit.push_back(y);
          }
        }
      }
    }
    struct Tmp {
      std::size_t min_index;
      ConjugacyClass cls;
      std::size_t old_id;
    };
    std::vector<Tmp> tmp;
    for (std::size_t c = 0; c < members.size(); ++c) {
      std::size_t best = members[c][0];
      for (auto e : members[c]) {
        auto a = d.store[e], b = d.store[best];
        if (std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end())) best = e;
      }
      Permutation rep(d.store[best], true);
      auto ord = rep.order();
      tmp.push_back({best, ConjugacyClass{std::move(rep), members[c].size(), ord}, c});
    }
    std::sort(tmp.begin(), tmp.end(), [](const Tmp& a, const Tmp& b) {
      if (a.cls.element_order != b.cls.element_order) return a.cls.element_order < b.cls.element_order;
      if (a.cls.size != b.cls.size) return a.cls.size < b.cls.size;
      return a.cls.representative < b.cls.representative;
    });
    std::vector<std::uint32_t> remap(members.size());
    d.classes.clear();
    for (std::size_t i = 0; i < tmp.size(); ++i) {
      remap[tmp[i].old_id] = static_cast<std::uint32_t>(i);
      d.classes.push_back(std::move(tmp[i].cls));
    }
    d.class_of.resize(n);
    for (std::size_t e = 0; e < n; ++e) d.class_of[e] = remap[raw[e]];
  }

  void ensure_powers() const {
    ensure_classes();
    std::call_once(impl_->powers_once, [this] {
      Impl& d = *impl_;
      d.power_table.resize(d.classes.size());
      for (std::size_t c = 0; c < d.classes.size(); ++c) {
        const std::size_t rep = *d.store.find(d.classes[c].representative.images());
        std::size_t x = 0;  // identity
        auto& row = d.power_table[c];
        row.resize(d.classes[c].element_order);
        for (std::size_t t = 0; t < row.size(); ++t) {
          row[t] = d.class_of[x];
          x = product_index(x, rep);
        }
      }
    });
  }

  std::shared_ptr<Impl> impl_;
};

}  // namespace aprat
