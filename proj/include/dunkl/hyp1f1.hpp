#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "dunkl/errors.hpp"
#include "dunkl/quadrature.hpp"

namespace dunkl {

using Complex = std::complex<double>;

/// Kummer series for 1F1(a; b; z), term-ratio stopping at 1e-16. Accurate
/// only while cancellation is benign (|z| up to roughly 12).
inline Complex kummer_series_1f1(double a, double b, Complex z) {
  Complex term = 1.0, acc = 1.0;
  for (int n = 0; n < 400; ++n) {
    term *= (a + n) / (b + n) * z / static_cast<double>(n + 1);
    acc += term;
    if (std::abs(term) <= 1e-16 * std::abs(acc) && n > 3) break;
  }
  return acc;
}

/// Normalized spherical Bessel series
/// j_alpha(z) = Gamma(alpha+1) sum (-1)^n (z/2)^{2n} / (n! Gamma(n+alpha+1)).
inline Complex normalized_bessel_j(double alpha, Complex z) {
  Complex q = z * z / 4.0;
  Complex term = 1.0, acc = 1.0;
  for (int n = 1; n < 200; ++n) {
    term *= -q / (static_cast<double>(n) * (alpha + n));
    acc += term;
    if (std::abs(term) <= 1e-16 * std::abs(acc) && n > 3) break;
  }
  return acc;
}

namespace detail {

/// One asymptotic sum sum_n (p)_n (q)_n x^n / n! truncated at the smallest
/// term; returns the sum and the size of the first omitted term.
inline std::pair<Complex, double> asymptotic_sum(double p, double q, Complex x) {
  Complex term = 1.0, acc = 1.0;
  double best = 1.0;
  for (int n = 0; n < 80; ++n) {
    Complex next = term * (p + n) * (q + n) * x / static_cast<double>(n + 1);
    if (std::abs(next) >= std::abs(term) && n > 2) return {acc, std::abs(next)};
    term = next;
    acc += term;
    best = std::abs(term);
  }
  return {acc, best};
}

}  // namespace detail

/// Large-|z| expansion of 1F1(a; b; z) in the sectors S_+/S_-:
///   Gamma(b) [ e^{±i pi a} z^{-a}/Gamma(b-a) * sum (a)_n(a-b+1)_n (-z)^{-n}/n!
///            + e^z z^{a-b}/Gamma(a)   * sum (b-a)_n(1-a)_n z^{-n}/n! ].
/// The second piece vanishes for a = 0 (reciprocal gamma).
inline Complex asymptotic_1f1(double a, double b, Complex z) {
  // branch sign pairing with the principal-branch powers: the lower sign
  // belongs to arg z in (-pi, -pi/2], and std::arg separates -0.0 from +0.0
  const double sign = (std::arg(z) > -M_PI / 2.0) ? 1.0 : -1.0;
  auto [s1, e1] = detail::asymptotic_sum(a, a - b + 1.0, -1.0 / z);
  auto [s2, e2] = detail::asymptotic_sum(b - a, 1.0 - a, 1.0 / z);
  Complex t1 = std::exp(Complex(0.0, sign * M_PI * a)) * std::pow(z, -a) / std::tgamma(b - a) * s1;
  Complex t2 = (a > 0.0) ? std::exp(z) * std::pow(z, a - b) / std::tgamma(a) * s2 : Complex(0.0);
  return std::tgamma(b) * (t1 + t2);
}

/// Rank-one kernel evaluator through the product argument z = x*y:
/// E_k(x, y) = e^z 1F1(k; 2k+1; -2z). Three regimes: Kummer series for
/// small arguments, the weighted [-1,1] integral with Gauss-Jacobi nodes
/// (k > 0) in the middle, and the large-argument expansion beyond. The
/// regimes are cross-validated on their overlaps by the test suite.
class RankOneKernel {
 public:
  explicit RankOneKernel(double k, int integral_nodes = 96)
      : k_(k) {
    if (k < 0.0) throw ConfigError("rank-one kernel needs k >= 0");
    if (k > 0.0) {
      rule_ = detail::gauss_jacobi(k - 1.0, k, integral_nodes);
      // Gamma(k+1/2)/(Gamma(1/2) Gamma(k)) normalizes the measure to mass 1
      norm_ = std::exp(std::lgamma(k + 0.5) - std::lgamma(0.5) - std::lgamma(k));
    }
  }

  double multiplicity() const { return k_; }

  /// E_k at product argument z = x*y.
  Complex eval_product(Complex z) const {
    if (k_ == 0.0) return std::exp(z);
    double az = std::abs(z);
    if (az <= 6.0) return std::exp(z) * kummer_series_1f1(k_, 2.0 * k_ + 1.0, -2.0 * z);
    if (az <= 60.0) return integral_form(z);
    return std::exp(z) * asymptotic_1f1(k_, 2.0 * k_ + 1.0, -2.0 * z);
  }

  /// e^{-z} E_k at product argument z; safe for large real z where E itself
  /// overflows.
  Complex eval_product_scaled(Complex z) const {
    if (k_ == 0.0) return 1.0;
    double az = std::abs(z);
    if (az <= 6.0) return kummer_series_1f1(k_, 2.0 * k_ + 1.0, -2.0 * z);
    if (az <= 60.0) return std::exp(-z) * integral_form(z);
    return asymptotic_1f1(k_, 2.0 * k_ + 1.0, -2.0 * z);
  }

  /// Explicit integral form (k > 0): norm * integral e^{tz} (1-t)^{k-1}(1+t)^k dt.
  Complex integral_form(Complex z) const {
    Complex acc = 0.0;
    for (std::size_t i = 0; i < rule_.nodes.size(); ++i) acc += rule_.weights[i] * std::exp(rule_.nodes[i] * z);
    return norm_ * acc;
  }

  /// Rank-one generalized Bessel J_k(x,y) = j_{k-1/2}(i x y) at z = x*y.
  Complex bessel_product(Complex z) const {
    return 0.5 * (eval_product(z) + eval_product(-z));
  }

 private:
  double k_ = 0.0;
  detail::Gauss1D rule_;
  double norm_ = 1.0;
};

}  // namespace dunkl
