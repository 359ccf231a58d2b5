#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "aprat/errors.hpp"
#include "aprat/modular.hpp"

namespace aprat {

// Square matrix over the prime field F_p, row-major.
class ModMatrix {
 public:
  ModMatrix() = default;
  ModMatrix(std::size_t n, std::uint64_t p) : n_(n), p_(p), a_(n * n, 0) {}

  // Entries are reduced mod p (negative values allowed).
  static ModMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows, std::uint64_t p) {
    ModMatrix m(rows.size(), p);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows.size()) throw InputError("matrix is not square");
      for (std::size_t j = 0; j < rows.size(); ++j)
        m.at(i, j) = static_cast<std::uint64_t>(mod_floor(rows[i][j], static_cast<std::int64_t>(p)));
    }
    return m;
  }

  static ModMatrix identity(std::size_t n, std::uint64_t p) {
    ModMatrix m(n, p);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1 % p;
    return m;
  }

  static ModMatrix scalar(std::size_t n, std::uint64_t p, std::uint64_t s) {
    ModMatrix m(n, p);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = s % p;
    return m;
  }

  std::size_t dim() const noexcept { return n_; }
  std::uint64_t prime() const noexcept { return p_; }
  std::uint64_t& at(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  std::uint64_t at(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  std::span<const std::uint64_t> data() const noexcept { return a_; }

  ModMatrix operator*(const ModMatrix& b) const {
    ModMatrix c(n_, p_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t k = 0; k < n_; ++k) {
        std::uint64_t x = at(i, k);
        if (!x) continue;
        for (std::size_t j = 0; j < n_; ++j) c.at(i, j) = (c.at(i, j) + mul_mod(x, b.at(k, j), p_)) % p_;
      }
    return c;
  }

  // Row vector times matrix: v -> v M (the right action used on F_p^n).
  std::vector<std::uint64_t> act(std::span<const std::uint64_t> v) const {
    std::vector<std::uint64_t> out(n_, 0);
    for (std::size_t i = 0; i < n_; ++i) {
      if (!v[i]) continue;
      for (std::size_t j = 0; j < n_; ++j) out[j] = (out[j] + mul_mod(v[i], at(i, j), p_)) % p_;
    }
    return out;
  }

  std::size_t rank() const {
    std::vector<std::uint64_t> m = a_;
    std::size_t r = 0;
    for (std::size_t col = 0; col < n_ && r < n_; ++col) {
      std::size_t piv = r;
      while (piv < n_ && m[piv * n_ + col] == 0) ++piv;
      if (piv == n_) continue;
      for (std::size_t j = 0; j < n_; ++j) std::swap(m[piv * n_ + j], m[r * n_ + j]);
      std::uint64_t inv = inv_mod(m[r * n_ + col], p_);
      for (std::size_t i = r + 1; i < n_; ++i) {
        std::uint64_t f = mul_mod(m[i * n_ + col], inv, p_);
        if (!f) continue;
        for (std::size_t j = col; j < n_; ++j)
          m[i * n_ + j] = (m[i * n_ + j] + p_ - mul_mod(f, m[r * n_ + j], p_)) % p_;
      }
      ++r;
    }
    return r;
  }

  bool is_invertible() const { return rank() == n_; }

  // dim ker(M - I): dimension of the fixed space.
  std::size_t fixed_space_dim() const {
    ModMatrix d = *this;
    for (std::size_t i = 0; i < n_; ++i) d.at(i, i) = (d.at(i, i) + p_ - 1 % p_) % p_;
    return n_ - d.rank();
  }

  bool is_identity() const { return *this == identity(n_, p_); }

  friend bool operator==(const ModMatrix&, const ModMatrix&) = default;

  std::vector<std::vector<std::int64_t>> rows() const {
    std::vector<std::vector<std::int64_t>> out(n_, std::vector<std::int64_t>(n_));
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) out[i][j] = static_cast<std::int64_t>(at(i, j));
    return out;
  }

 private:
  std::size_t n_ = 0;
  std::uint64_t p_ = 2;
  std::vector<std::uint64_t> a_;
};

// Vectors of F_p^n are numbered so that numeric order is lexicographic order.
inline std::uint64_t encode_vector(std::span<const std::uint64_t> v, std::uint64_t p) {
  std::uint64_t x = 0;
  for (auto c : v) x = x * p + c;
  return x;
}

inline std::vector<std::uint64_t> decode_vector(std::uint64_t x, std::size_t n, std::uint64_t p) {
  std::vector<std::uint64_t> v(n);
  for (std::size_t i = n; i-- > 0;) {
    v[i] = x % p;
    x /= p;
  }
  return v;
}

}  // namespace aprat
