#include "doctest.h"

#include <cmath>
#include <random>

#include "dunkl/quadrature.hpp"

using namespace dunkl;

namespace {
const double kSqrt2Pi = std::sqrt(2.0 * M_PI);
}

TEST_CASE("rank-one gaussian-wk rule: classical limit and moments") {
  auto ctx = build_rank_one<Sqrt2>();
  ctx.set_multiplicity({Rational(0)});
  auto rule = build_gaussian_wk_rule(ctx, 48);
  for (double w : rule.weights) CHECK(w > 0.0);
  CHECK(rule.integrate_real([](const std::vector<double>&) { return 1.0; }) ==
        doctest::Approx(kSqrt2Pi).epsilon(1e-13));
  // k = 1: integral of |sqrt2 x|^2 e^{-x^2/2} = 2 sqrt(2 pi) as the total mass
  auto ctx1 = build_rank_one<Sqrt2>();
  ctx1.set_multiplicity({Rational(1)});
  auto rule1 = build_gaussian_wk_rule(ctx1, 48);
  CHECK(c_k_from_rule(rule1) == doctest::Approx(2.0 * kSqrt2Pi).epsilon(1e-12));
}

TEST_CASE("rank-one moments match the gamma closed form") {
  for (double k : {0.25, 0.5, 1.5}) {
    auto ctx = build_rank_one<Sqrt2>();
    ctx.set_multiplicity({Rational(static_cast<int>(k * 4), 4)});
    double kk = to_double(ctx.k[0]);
    auto rule = build_gaussian_wk_rule(ctx, 40);
    for (int m = 0; m <= 10; ++m) {
      double got = rule.integrate_real([m](const std::vector<double>& x) { return std::pow(x[0], 2 * m); });
      double expected = std::pow(2.0, kk) * std::pow(2.0, m + kk + 0.5) * std::tgamma(m + kk + 0.5);
      CHECK(got == doctest::Approx(expected).epsilon(1e-12));
    }
    // c_k closed form
    CHECK(c_k_from_rule(rule) == doctest::Approx(rank_one_c_k(kk)).epsilon(1e-10));
    // odd integrands vanish by symmetry
    double odd = rule.integrate_real([](const std::vector<double>& x) { return x[0] * x[0] * x[0]; });
    CHECK(std::fabs(odd) < 1e-14 * c_k_from_rule(rule));
  }
}

TEST_CASE("doubling nodes is stable") {
  auto ctx = build_rank_one<Sqrt2>();
  ctx.set_multiplicity({Rational(3, 4)});
  auto r1 = build_gaussian_wk_rule(ctx, 40);
  auto r2 = build_gaussian_wk_rule(ctx, 80);
  auto f = [](const std::vector<double>& x) { return std::cos(x[0]) * std::exp(0.3 * x[0]); };
  CHECK(std::fabs(r1.integrate_real(f) - r2.integrate_real(f)) < 1e-10);
}

TEST_CASE("B_2 polar rule: positivity, invariant moments, stability") {
  auto ctx = build_standard<Sqrt2>(GroupType::B, 2);
  ctx.set_multiplicity({Rational(1, 2), Rational(1, 2)});
  auto rule = build_gaussian_wk_rule(ctx, 28, 28);
  for (double w : rule.weights) CHECK(w > 0.0);
  double ck = c_k_from_rule(rule);
  CHECK(ck > 0.0);
  // radial moment against the gamma closed form:
  // integral of |x|^2 dGaussianWk = (2 gamma + 2) c_k by the substitution
  // r^2/2 = s (the measure has total radial index gamma + 1).
  double g = to_double(ctx.gamma());
  double m2 = rule.integrate_real([](const std::vector<double>& x) { return x[0] * x[0] + x[1] * x[1]; });
  CHECK(m2 / ck == doctest::Approx(2.0 * (g + 1.0)).epsilon(1e-12));
  auto rule2 = build_gaussian_wk_rule(ctx, 40, 40);
  auto f = [](const std::vector<double>& x) { return std::cos(x[0] + 0.5 * x[1]); };
  CHECK(std::fabs(rule.integrate_real(f) - rule2.integrate_real(f)) < 1e-10);
}

TEST_CASE("A_2 in three ambient dimensions reproduces the Mehta integral") {
  for (double kk : {0.5, 1.0}) {
    auto ctx = build_standard<Sqrt2>(GroupType::A, 3);
    ctx.set_multiplicity({Rational(static_cast<int>(kk * 2), 2)});
    auto rule = build_gaussian_wk_rule(ctx, 32, 32);
    double ck = c_k_from_rule(rule);
    double mehta = std::tgamma(1.0 + 2.0 * kk) * std::tgamma(1.0 + 3.0 * kk) /
                   (std::tgamma(1.0 + kk) * std::tgamma(1.0 + kk));
    double expected = std::pow(2.0 * M_PI, 1.5) * mehta;
    CHECK(ck == doctest::Approx(expected).epsilon(1e-10));
  }
}

TEST_CASE("macdonald pairing identity against quadrature") {
  // rank one, three multiplicities
  for (Rational k : {Rational(1, 4), Rational(1, 2), Rational(2)}) {
    auto ctx = build_rank_one<Sqrt2>();
    ctx.set_multiplicity({k});
    DunklOps<Sqrt2> ops(ctx);
    auto rule = build_gaussian_wk_rule(ctx, 48);
    auto rep = check_macdonald(ops, rule, 5);
    CHECK(rep.pass);
    CHECK(rep.worst_error < 1e-8);
  }
  // B_2 with k = (1/2, 1/2)
  auto b2 = build_standard<Sqrt2>(GroupType::B, 2);
  b2.set_multiplicity({Rational(1, 2), Rational(1, 2)});
  DunklOps<Sqrt2> ops(b2);
  auto rule = build_gaussian_wk_rule(b2, 36, 36);
  auto rep = check_macdonald(ops, rule, 4);
  CHECK(rep.pass);
  // hand value: rank-one [x,x]_k = 1 + 2k = 2 at k = 1/2
  auto r1 = build_rank_one<Sqrt2>();
  r1.set_multiplicity({Rational(1, 2)});
  DunklOps<Sqrt2> ops1(r1);
  auto rule1 = build_gaussian_wk_rule(r1, 48);
  auto x = MultiPoly<Sqrt2>::variable(1, 0);
  auto ex = ops1.exp_half_laplacian(x, -1);
  double integral = rule1.integrate_real([&](const std::vector<double>& p) {
    double v = ex.eval<double>(p);
    return v * v;
  }) / c_k_from_rule(rule1);
  CHECK(integral == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("antisymmetry of T against the weighted measure") {
  // rank one and B_2: integral of T_xi f * g dw_k = -integral of f * T_xi g dw_k
  // for gaussian-damped polynomials f~ = f e^{-|x|^2/4}. The damping commutes
  // with the reflection part, T_i(f e^{-|.|^2/4}) = (T_i f - x_i f / 2) e^{-|.|^2/4},
  // so the product of two damped factors matches the GaussianWk measure.
  auto check_pair = [](auto& ctx, int radial, int angular) {
    DunklOps<Sqrt2> ops(ctx);
    auto rule = build_gaussian_wk_rule(ctx, radial, angular);
    const int N = ctx.dim();
    std::mt19937_64 rng(91);
    std::uniform_int_distribution<int> c(-3, 3);
    for (int rep = 0; rep < 6; ++rep) {
      MultiPoly<Sqrt2> f(N), g(N);
      for (const auto& m : monomials_up_to_degree(N, 3)) {
        f.add_term(m, Sqrt2(c(rng)));
        g.add_term(m, Sqrt2(c(rng)));
      }
      for (int i = 0; i < N; ++i) {
        auto xi = MultiPoly<Sqrt2>::variable(N, i) * Sqrt2(Rational(1, 2));
        auto tf = ops.apply_T(i, f) - xi * f;
        auto tg = ops.apply_T(i, g) - xi * g;
        double lhs = rule.integrate_real([&](const std::vector<double>& x) {
          return tf.eval<double>(x) * g.eval<double>(x);
        });
        double rhs = rule.integrate_real([&](const std::vector<double>& x) {
          return f.eval<double>(x) * tg.eval<double>(x);
        });
        double scale = std::max({1.0, std::fabs(lhs), std::fabs(rhs)});
        CHECK(std::fabs(lhs + rhs) / scale < 1e-8);
      }
    }
  };
  auto r1 = build_rank_one<Sqrt2>();
  r1.set_multiplicity({Rational(3, 4)});
  check_pair(r1, 48, 0);
  auto b2 = build_standard<Sqrt2>(GroupType::B, 2);
  b2.set_multiplicity({Rational(1, 2), Rational(1)});
  check_pair(b2, 32, 32);
}

TEST_CASE("lebesgue-wk truncated rules") {
  // rank one: integral of x^2 * 2^k |x|^{2k} over [-L, L]
  auto ctx = build_rank_one<Sqrt2>();
  ctx.set_multiplicity({Rational(1, 2)});
  double L = 3.0;
  auto rule = build_lebesgue_wk_rule(ctx, L, 40);
  double got = rule.integrate_real([](const std::vector<double>& x) { return x[0] * x[0]; });
  // integral of x^2 * sqrt(2)|x| over [-L,L] = sqrt(2) L^4 / 2 for 2k = 1
  double expected = std::sqrt(2.0) * std::pow(L, 4.0) / 2.0;
  CHECK(got == doctest::Approx(expected).epsilon(1e-12));
  // gaussian integrand recovers the full-space value once L is generous
  auto rule8 = build_lebesgue_wk_rule(ctx, 9.0, 96);
  double full = rule8.integrate_real([](const std::vector<double>& x) { return std::exp(-x[0] * x[0] / 2.0); });
  CHECK(full == doctest::Approx(rank_one_c_k(0.5)).epsilon(1e-12));
  // B_2 truncated rule against the gaussian-wk rule on a damped integrand
  auto b2 = build_standard<Sqrt2>(GroupType::B, 2);
  b2.set_multiplicity({Rational(1, 2), Rational(1, 2)});
  auto leb = build_lebesgue_wk_rule(b2, 10.0, 48, 32);
  auto gw = build_gaussian_wk_rule(b2, 32, 32);
  double a = leb.integrate_real([](const std::vector<double>& x) {
    return std::exp(-(x[0] * x[0] + x[1] * x[1]) / 2.0) * std::cos(x[0]);
  });
  double b = gw.integrate_real([](const std::vector<double>& x) { return std::cos(x[0]); });
  CHECK(a == doctest::Approx(b).epsilon(1e-9));
}

TEST_CASE("jacobi rule mass and non-finite rejection") {
  auto rule = build_jacobi_rule(0.5, 1.5, 24);
  double mass = rule.integrate_real([](const std::vector<double>&) { return 1.0; });
  double expected = std::pow(2.0, 3.0) * std::exp(std::lgamma(1.5) + std::lgamma(2.5) - std::lgamma(4.0));
  CHECK(mass == doctest::Approx(expected).epsilon(1e-13));
  CHECK_THROWS_AS(rule.integrate_real([](const std::vector<double>& t) { return 1.0 / (t[0] - t[0]); }),
                  PreconditionError);
  CHECK_THROWS_AS(build_jacobi_rule(-1.5, 0.0, 8), ConfigError);
}

TEST_CASE("unsupported dimensions are rejected") {
  auto b3 = build_standard<Sqrt2>(GroupType::B, 3);
  b3.set_multiplicity({Rational(1, 2), Rational(1, 2)});
  CHECK_THROWS_AS(build_gaussian_wk_rule(b3, 16, 16), UnsupportedDimensionError);
  auto a4 = build_standard<Sqrt2>(GroupType::A, 4);
  a4.set_multiplicity({Rational(1, 2)});
  CHECK_THROWS_AS(build_gaussian_wk_rule(a4, 16, 16), UnsupportedDimensionError);
}
