#pragma once

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include "dunkl/rational.hpp"

namespace dunkl {

/// Element of the quadratic field Q(sqrt 2), stored as a + b*sqrt(2) with
/// exact rational a, b. This is the coefficient field of the exact backend:
/// type-A roots are rational, type-B short roots rescale to sqrt(2)*e_i,
/// and all reflection matrices stay inside the field.
class Sqrt2 {
 public:
  Sqrt2() = default;
  Sqrt2(int v) : a_(v) {}  // NOLINT: implicit by design, mirrors Rational
  Sqrt2(Rational v) : a_(std::move(v)) {}
  Sqrt2(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}

  static Sqrt2 sqrt2() { return Sqrt2(0, 1); }

  const Rational& rational_part() const { return a_; }
  const Rational& sqrt2_part() const { return b_; }

  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_rational() const { return b_ == 0; }

  /// Exact rational value; throws if the sqrt(2) part is nonzero.
  const Rational& as_rational() const {
    if (b_ != 0) throw std::domain_error("value has a nonzero sqrt(2) part");
    return a_;
  }

  friend Sqrt2 operator+(const Sqrt2& x, const Sqrt2& y) { return Sqrt2(x.a_ + y.a_, x.b_ + y.b_); }
  friend Sqrt2 operator-(const Sqrt2& x, const Sqrt2& y) { return Sqrt2(x.a_ - y.a_, x.b_ - y.b_); }
  friend Sqrt2 operator-(const Sqrt2& x) { return Sqrt2(-x.a_, -x.b_); }
  friend Sqrt2 operator*(const Sqrt2& x, const Sqrt2& y) {
    return Sqrt2(x.a_ * y.a_ + 2 * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_);
  }
  friend Sqrt2 operator/(const Sqrt2& x, const Sqrt2& y) {
    // multiply by the conjugate; the norm a^2 - 2 b^2 vanishes only at 0
    Rational n = y.a_ * y.a_ - 2 * y.b_ * y.b_;
    if (n == 0) throw std::domain_error("division by zero in Q(sqrt 2)");
    return Sqrt2((x.a_ * y.a_ - 2 * x.b_ * y.b_) / n, (x.b_ * y.a_ - x.a_ * y.b_) / n);
  }

  Sqrt2& operator+=(const Sqrt2& y) { return *this = *this + y; }
  Sqrt2& operator-=(const Sqrt2& y) { return *this = *this - y; }
  Sqrt2& operator*=(const Sqrt2& y) { return *this = *this * y; }
  Sqrt2& operator/=(const Sqrt2& y) { return *this = *this / y; }

  friend bool operator==(const Sqrt2& x, const Sqrt2& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
  friend bool operator!=(const Sqrt2& x, const Sqrt2& y) { return !(x == y); }

  /// Exact sign of a + b*sqrt(2).
  int sign() const {
    int sa = a_ == 0 ? 0 : (a_ > 0 ? 1 : -1);
    int sb = b_ == 0 ? 0 : (b_ > 0 ? 1 : -1);
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sb;
    // opposite signs: compare a^2 with 2 b^2
    Rational d = a_ * a_ - 2 * b_ * b_;
    if (d == 0) return 0;  // cannot happen: sqrt 2 irrational, kept for safety
    return d > 0 ? sa : sb;
  }

  friend bool operator<(const Sqrt2& x, const Sqrt2& y) { return (x - y).sign() < 0; }
  friend bool operator>(const Sqrt2& x, const Sqrt2& y) { return (x - y).sign() > 0; }
  friend bool operator<=(const Sqrt2& x, const Sqrt2& y) { return (x - y).sign() <= 0; }
  friend bool operator>=(const Sqrt2& x, const Sqrt2& y) { return (x - y).sign() >= 0; }

  Sqrt2 abs() const { return sign() < 0 ? -*this : *this; }

  double to_double() const {
    return dunkl::to_double(a_) + dunkl::to_double(b_) * std::sqrt(2.0);
  }

  std::string str() const {
    if (b_ == 0) return dunkl::to_string(a_);
    std::string s;
    if (a_ != 0) s += dunkl::to_string(a_) + (b_ > 0 ? "+" : "");
    s += dunkl::to_string(b_) + "*sqrt2";
    return s;
  }

  friend std::ostream& operator<<(std::ostream& os, const Sqrt2& x) { return os << x.str(); }

 private:
  Rational a_, b_;
};

inline double to_double(const Sqrt2& x) { return x.to_double(); }

}  // namespace dunkl
