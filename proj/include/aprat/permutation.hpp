#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace aprat {

using Point = std::uint32_t;

// Permutation of {0,...,degree-1} stored as an image array.
// Products compose left to right: (a * b)(i) = b(a(i)).
class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(std::size_t degree) : images_(degree) {
    std::iota(images_.begin(), images_.end(), Point{0});
  }

  explicit Permutation(std::vector<Point> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (std::size_t i = 0; i < images_.size(); ++i) {
      Point im = images_[i];
      if (im >= images_.size() || seen[im]) {
        std::ostringstream msg;
        msg << "not a permutation: image " << im << " at position " << i;
        throw std::invalid_argument(msg.str());
      }
      seen[im] = true;
    }
  }

  Permutation(std::span<const Point> images, bool /*trusted*/)
      : images_(images.begin(), images.end()) {}

  static Permutation identity(std::size_t degree) { return Permutation(degree); }

  // Builds a permutation from disjoint cycles, e.g. {{0,1,2},{3,4}}.
  static Permutation from_cycles(std::size_t degree,
                                 const std::vector<std::vector<Point>>& cycles) {
    std::vector<Point> im(degree);
    std::iota(im.begin(), im.end(), Point{0});
    for (const auto& c : cycles) {
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] >= degree) throw std::invalid_argument("cycle point out of range");
        im[c[i]] = c[(i + 1) % c.size()];
      }
    }
    return Permutation(std::move(im));
  }

  std::size_t degree() const noexcept { return images_.size(); }
  Point operator[](std::size_t i) const noexcept { return images_[i]; }
  std::span<const Point> images() const noexcept { return images_; }
  const std::vector<Point>& image_vector() const noexcept { return images_; }

  bool is_identity() const noexcept {
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (images_[i] != i) return false;
    return true;
  }

  Permutation operator*(const Permutation& rhs) const {
    if (rhs.degree() != degree()) throw std::invalid_argument("degree mismatch in product");
    Permutation out;
    out.images_.resize(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) out.images_[i] = rhs.images_[images_[i]];
    return out;
  }

  Permutation inverse() const {
    Permutation out;
    out.images_.resize(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) out.images_[images_[i]] = static_cast<Point>(i);
    return out;
  }

  // g^{-1} * this * g
  Permutation conjugate_by(const Permutation& g) const {
    Permutation out;
    out.images_.resize(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) out.images_[g.images_[i]] = g.images_[images_[i]];
    return out;
  }

  // Power by cycle decomposition; m may be negative.
  Permutation pow(std::int64_t m) const {
    const std::size_t n = images_.size();
    Permutation out;
    out.images_.resize(n);
    std::vector<bool> done(n, false);
    std::vector<Point> cyc;
    for (std::size_t s = 0; s < n; ++s) {
      if (done[s]) continue;
      cyc.clear();
      for (Point x = static_cast<Point>(s); !done[x]; x = images_[x]) {
        done[x] = true;
        cyc.push_back(x);
      }
      const auto len = static_cast<std::int64_t>(cyc.size());
      std::int64_t shift = ((m % len) + len) % len;
      for (std::int64_t i = 0; i < len; ++i) out.images_[cyc[i]] = cyc[(i + shift) % len];
    }
    return out;
  }

  std::vector<std::size_t> cycle_lengths() const {
    std::vector<std::size_t> lens;
    std::vector<bool> done(images_.size(), false);
    for (std::size_t s = 0; s < images_.size(); ++s) {
      if (done[s]) continue;
      std::size_t len = 0;
      for (Point x = static_cast<Point>(s); !done[x]; x = images_[x]) {
        done[x] = true;
        ++len;
      }
      lens.push_back(len);
    }
    return lens;
  }

  // Element order as the lcm of cycle lengths.
  std::uint64_t order() const {
    std::uint64_t o = 1;
    for (std::size_t len : cycle_lengths()) o = std::lcm(o, static_cast<std::uint64_t>(len));
    return o;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation& a, const Permutation& b) {
    return a.images_ <=> b.images_;
  }

  std::string to_cycle_string() const {
    std::ostringstream os;
    std::vector<bool> done(images_.size(), false);
    bool any = false;
    for (std::size_t s = 0; s < images_.size(); ++s) {
      if (done[s] || images_[s] == s) continue;
      os << '(';
      bool first = true;
      for (Point x = static_cast<Point>(s); !done[x]; x = images_[x]) {
        done[x] = true;
        if (!first) os << ' ';
        os << x;
        first = false;
      }
      os << ')';
      any = true;
    }
    if (!any) os << "()";
    return os.str();
  }

 private:
  std::vector<Point> images_;
};

}  // namespace aprat
