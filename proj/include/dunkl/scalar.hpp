#pragma once

#include <cmath>
#include <string>

#include "dunkl/rational.hpp"
#include "dunkl/sqrt2.hpp"

namespace dunkl {

/// Backend traits shared by the exact field Q(sqrt 2) and the double backend.
/// Every polynomial/operator routine is written once against this interface.
template <class S>
struct scalar_traits;

template <>
struct scalar_traits<Sqrt2> {
  static constexpr bool exact = true;
  static Sqrt2 zero() { return Sqrt2(); }
  static Sqrt2 one() { return Sqrt2(1); }
  static Sqrt2 from_rational(const Rational& q) { return Sqrt2(q); }
  static bool is_zero(const Sqrt2& x) { return x.is_zero(); }
  static bool is_negative(const Sqrt2& x) { return x.sign() < 0; }
  /// Zero test for division remainders; exact backend ignores the scale.
  static bool negligible(const Sqrt2& x, double /*scale*/) { return x.is_zero(); }
  static double to_double(const Sqrt2& x) { return x.to_double(); }
  static double abs_double(const Sqrt2& x) { return std::fabs(x.to_double()); }
  static std::string str(const Sqrt2& x) { return x.str(); }
};

template <>
struct scalar_traits<double> {
  static constexpr bool exact = false;
  // matches the float-backend comparison tolerance used for group matrices
  static constexpr double tol = 1e-9;
  static double zero() { return 0.0; }
  static double one() { return 1.0; }
  static double from_rational(const Rational& q) { return dunkl::to_double(q); }
  static bool is_zero(double x) { return x == 0.0; }
  static bool is_negative(double x) { return x < 0.0; }
  static bool negligible(double x, double scale) { return std::fabs(x) <= tol * std::max(1.0, scale); }
  static double to_double(double x) { return x; }
  static double abs_double(double x) { return std::fabs(x); }
  static std::string str(double x) { return std::to_string(x); }
};

}  // namespace dunkl
