#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace dunkl {

/// Exponent multi-index of a monomial x^nu. Dimension is bounded by
/// kMaxVars (rank <= 5 systems plus slack); per-variable exponents fit
/// easily in a byte even at the deepest kernel truncation we cache.
class Monomial {
 public:
  static constexpr int kMaxVars = 8;
  static constexpr int kMaxExponent = 255;

  Monomial() = default;
  explicit Monomial(int dim) : dim_(check_dim(dim)) {}
  Monomial(std::initializer_list<int> exps) : dim_(check_dim(static_cast<int>(exps.size()))) {
    int i = 0;
    for (int v : exps) set(i++, v);
  }
  explicit Monomial(const std::vector<int>& exps) : dim_(check_dim(static_cast<int>(exps.size()))) {
    for (int i = 0; i < dim_; ++i) set(i, exps[i]);
  }

  int dim() const { return dim_; }
  int operator[](int i) const { return e_[static_cast<std::size_t>(i)]; }
  void set(int i, int v) {
    if (v < 0 || v > kMaxExponent) throw std::out_of_range("monomial exponent out of range");
    e_[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(v);
  }

  int degree() const {
    int d = 0;
    for (int i = 0; i < dim_; ++i) d += e_[static_cast<std::size_t>(i)];
    return d;
  }

  Monomial raised(int i, int by = 1) const {
    Monomial m = *this;
    m.set(i, (*this)[i] + by);
    return m;
  }
  Monomial lowered(int i, int by = 1) const {
    Monomial m = *this;
    m.set(i, (*this)[i] - by);
    return m;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.dim_ == b.dim_ && a.e_ == b.e_;
  }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }

  /// Graded lexicographic order: total degree first, then lex on exponents.
  /// Fixed once; used for serialization and Gram-Schmidt pivot order.
  friend bool operator<(const Monomial& a, const Monomial& b) {
    int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    return a.e_ < b.e_;
  }

  std::size_t hash() const {
    std::size_t h = static_cast<std::size_t>(dim_);
    for (int i = 0; i < dim_; ++i) h = h * 131 + e_[static_cast<std::size_t>(i)];
    return h;
  }

 private:
  static int check_dim(int d) {
    if (d < 0 || d > kMaxVars) throw std::out_of_range("monomial dimension out of range");
    return d;
  }
  std::array<std::uint8_t, kMaxVars> e_{};
  int dim_ = 0;
};

/// All monomials of the given total degree in `dim` variables, graded-lex order.
inline std::vector<Monomial> monomials_of_degree(int dim, int degree) {
  std::vector<Monomial> out;
  Monomial cur(dim);
  std::function<void(int, int)> rec = [&](int index, int remaining) {
    if (index == dim - 1) {
      cur.set(index, remaining);
      out.push_back(cur);
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      cur.set(index, v);
      rec(index + 1, remaining - v);
    }
  };
  if (dim == 0) return out;
  rec(0, degree);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<Monomial> monomials_up_to_degree(int dim, int max_degree) {
  std::vector<Monomial> out;
  for (int n = 0; n <= max_degree; ++n) {
    auto level = monomials_of_degree(dim, n);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

}  // namespace dunkl
