#pragma once

#include <string>
#include <vector>

#include "dunkl/asymptotics.hpp"
#include "dunkl/hermite.hpp"
#include "dunkl/intertwiner.hpp"
#include "dunkl/kernel.hpp"
#include "dunkl/quadrature.hpp"
#include "dunkl/transform_heat.hpp"

namespace dunkl {

struct VerifyOptions {
  std::uint64_t seed = 1;
  int max_degree = 6;
  int truncation = 40;
  int nodes = 48;
};

namespace detail {
template <class S>
bool quadrature_feasible(const GroupContext<S>& ctx) {
  return ctx.dim() <= 3 && ctx.system.rank <= 2;
}
}  // namespace detail

/// Operator-layer identity suite on one context.
template <class S>
SuiteReport verify_operators(const GroupContext<S>& ctx, const VerifyOptions& opt) {
  SuiteReport suite{"operators", {}};
  DunklOps<S> ops(ctx);
  suite.checks.push_back(check_commutativity(ops, opt.max_degree, 5, opt.seed));
  suite.checks.push_back(check_equivariance_T(ops, 10, opt.seed + 1));
  suite.checks.push_back(check_product_rule(ops, 4, opt.seed + 2));
  suite.checks.push_back(check_laplacian_consistency(ops, opt.max_degree));
  suite.checks.push_back(sl2_bracket_check(ops, opt.max_degree));
  suite.checks.push_back(commutator_xi_delta_check(ops, opt.max_degree));
  suite.checks.push_back(check_pairing_adjointness(ops, 10, opt.seed + 3));
  suite.checks.push_back(check_minimum_principle(ops, 100, opt.seed + 4));
  if (detail::quadrature_feasible(ctx)) {
    // degree <= 4 integrands; lean rules are exact for them
    int radial = (ctx.dim() <= 2) ? opt.nodes : 12;
    int angular = (ctx.dim() <= 2) ? 32 : 10;
    auto rule = build_gaussian_wk_rule(ctx, radial, angular);
    suite.checks.push_back(check_antisymmetry(ops, rule, 6, opt.seed + 5));
  }
  return suite;
}

/// Intertwining operator suite: construction residual, rank-one closed
/// form, pairing transport, equivariance, positivity/norm sampling, and
/// the rank-one weighted-interval integral representation.
template <class S>
SuiteReport verify_intertwiner(const GroupContext<S>& ctx, const VerifyOptions& opt) {
  SuiteReport suite{"intertwiner", {}};
  IntertwinerTable<S> table(ctx, opt.max_degree);
  suite.checks.push_back(check_intertwining_residual(table, opt.max_degree));
  suite.checks.push_back(check_pairing_transport(table, std::min(opt.max_degree, 5)));
  suite.checks.push_back(check_equivariance_V(table, std::min(opt.max_degree, 5)));
  suite.checks.push_back(check_positivity_grid(table, 100, 1000, opt.seed + 11));

  if (ctx.dim() == 1) {
    // exact Pochhammer closed form up to degree 12
    IntertwinerTable<S> t12(ctx, 12);
    CheckReport rep{"rank-one closed form", "intertwiner-rank-one-closed-form", true, 0.0, 0.0, ""};
    for (int d = 1; d <= 12; ++d) {
      auto v = t12.apply_to_monomial(Monomial{d});
      auto expected = MultiPoly<S>::monomial(
          Monomial{d}, scalar_traits<S>::from_rational(rank_one_intertwiner_factor(ctx.k[0], d)));
      double err = v.max_coeff_distance(expected);
      rep.worst_error = std::max(rep.worst_error, err);
      bool ok = scalar_traits<S>::exact ? (v == expected) : (err <= 1e-9);
      if (!ok && rep.pass) {
        rep.pass = false;
        rep.detail = "mismatch at degree " + std::to_string(d);
      }
    }
    suite.checks.push_back(rep);

    // weighted-interval integral representation (k > 0), 64 nodes
    if (ctx.k[0] > 0) {
      double k = to_double(ctx.k[0]);
      auto rule = build_jacobi_rule(k - 1.0, k, 64);
      double norm = std::exp(std::lgamma(k + 0.5) - std::lgamma(0.5) - std::lgamma(k));
      CheckReport rep2{"rank-one integral representation", "intertwiner-integral-form", true, 0.0, 1e-10, ""};
      for (int m = 1; m <= 10; ++m) {
        for (double x : {0.7, -1.1, 1.9}) {
          double integral = norm * rule.integrate_real([&](const std::vector<double>& t) {
            return std::pow(x * t[0], m);
          });
          double exact = to_double(rank_one_intertwiner_factor(ctx.k[0], m)) * std::pow(x, m);
          double err = std::fabs(integral - exact) / std::max(1.0, std::fabs(exact));
          rep2.worst_error = std::max(rep2.worst_error, err);
          if (err > rep2.tolerance && rep2.pass) {
            rep2.pass = false;
            rep2.detail = "integral form off at degree " + std::to_string(m);
          }
        }
      }
      suite.checks.push_back(rep2);
    }
  }
  return suite;
}

/// Kernel suite: exact degree shift / symmetry / invariant system on the
/// cached components, numeric symmetries, bounds, positivity, the rank-one
/// hypergeometric oracle, and the reproducing identity.
template <class S>
SuiteReport verify_kernel(const GroupContext<S>& ctx, const VerifyOptions& opt) {
  SuiteReport suite{"kernel", {}};
  const int exact_cap = 8;
  // sampling radii sized so the series stays within the truncation: the
  // double backend caps its depth, and three ambient dimensions push the
  // norms of coordinate boxes up
  int truncation = opt.truncation;
  double radius = 1.5;
  if (!scalar_traits<S>::exact) radius = 0.6;
  if (ctx.dim() >= 3) {
    truncation = std::min(truncation, 26);
    radius = 0.9;
  }
  KernelEvaluator<S> ev(ctx, truncation, exact_cap);
  suite.checks.push_back(check_degree_shift(ev, exact_cap));
  suite.checks.push_back(check_component_symmetry(ev, exact_cap));
  suite.checks.push_back(check_bessel_system(ev, exact_cap));
  suite.checks.push_back(check_symmetries(ev, 10, opt.seed + 21));
  suite.checks.push_back(check_bound_and_positivity(ev, 1000, opt.seed + 22, radius));

  if (ctx.dim() == 1) {
    RankOneKernel oracle(to_double(ctx.k[0]));
    CheckReport rep{"rank-one hypergeometric oracle", "kernel-rank-one-oracle", true, 0.0, 1e-10, ""};
    for (int i = 0; i <= 8; ++i)
      for (int j = 0; j <= 8; ++j) {
        double x = -1.5 + i * 3.0 / 8.0, y = -1.5 + j * 3.0 / 8.0;
        double err = std::abs(ev.eval_E_real({x}, {y}).value - oracle.eval_product(x * y));
        rep.worst_error = std::max(rep.worst_error, err);
        if (err > rep.tolerance && rep.pass) {
          rep.pass = false;
          rep.detail = "grid mismatch";
        }
      }
    suite.checks.push_back(rep);
  }
  if (detail::quadrature_feasible(ctx) && ctx.dim() <= 2) {
    auto rule = build_gaussian_wk_rule(ctx, opt.nodes, 32);
    // y = z = 0 reduces to the c_k normalization
    auto rep0 = check_reproducing(ctx, rule, std::vector<double>(ctx.dim(), 0.0),
                                  std::vector<double>(ctx.dim(), 0.0), 1e-10);
    rep0.name = "reproducing identity at the origin";
    rep0.tag = "kernel-reproducing-origin";
    suite.checks.push_back(rep0);
    std::mt19937_64 rng(opt.seed + 23);
    // the double backend needs small arguments (series depth is capped and
    // the integration nodes reach far out)
    double rr = scalar_traits<S>::exact ? radius : 0.3;
    std::uniform_real_distribution<double> u(-rr, rr);
    CheckReport rep{"reproducing identity", "kernel-reproducing", true, 0.0, 1e-6, ""};
    int pairs = (ctx.dim() == 1) ? 10 : 3;
    for (int it = 0; it < pairs; ++it) {
      std::vector<double> y(static_cast<std::size_t>(ctx.dim())), z(static_cast<std::size_t>(ctx.dim()));
      for (auto& c : y) c = u(rng);
      for (auto& c : z) c = u(rng);
      auto one = check_reproducing(ctx, rule, y, z, 1e-6);
      rep.worst_error = std::max(rep.worst_error, one.worst_error);
      if (!one.pass && rep.pass) {
        rep.pass = false;
        rep.detail = one.detail;
      }
    }
    suite.checks.push_back(rep);
  }
  return suite;
}

/// Pairing-vs-integral suite.
template <class S>
SuiteReport verify_macdonald(const GroupContext<S>& ctx, const VerifyOptions& opt) {
  SuiteReport suite{"macdonald", {}};
  if (!detail::quadrature_feasible(ctx))
    throw UnsupportedDimensionError("macdonald suite needs a rank <= 2 system");
  DunklOps<S> ops(ctx);
  int radial = (ctx.dim() <= 2) ? opt.nodes : 16;
  int angular = (ctx.dim() <= 2) ? 32 : 14;
  auto rule = build_gaussian_wk_rule(ctx, radial, angular);
  suite.checks.push_back(check_macdonald(ops, rule, std::min(opt.max_degree, 5)));
  return suite;
}

/// Hermite suite.
template <class S>
SuiteReport verify_hermite(const GroupContext<S>& ctx, const VerifyOptions& opt) {
  SuiteReport suite{"hermite", {}};
  HermiteSystem<S> sys(ctx, opt.max_degree);
  suite.checks.push_back(check_hermite_orthogonality(sys));
  suite.checks.push_back(check_hermite_eigen(sys));
  suite.checks.push_back(check_hermite_parity(sys));
  suite.checks.push_back(check_hermite_span(sys));
  if (detail::quadrature_feasible(ctx)) {
    int radial = (ctx.dim() <= 2) ? opt.nodes : 16;
    int angular = (ctx.dim() <= 2) ? 32 : 14;
    auto rule = build_gaussian_wk_rule(ctx, radial, angular);
    suite.checks.push_back(check_hermite_quadrature_orthogonality(sys, rule));
    if (opt.max_degree <= 4 || ctx.dim() == 1) suite.checks.push_back(check_rodrigues(sys, rule));
  }
  if (ctx.dim() == 1) {
    HermiteSystem<S> deep(ctx, 30);
    KernelEvaluator<S> ev(ctx, opt.truncation);
    suite.checks.push_back(check_generating_and_mehler(deep, ev, {0.7}, {-0.4}, 0.5, 1e-8));
    suite.checks.push_back(check_kernel_basis_expansion(deep, ev, {0.7}, {0.6}));
  }
  return suite;
}

/// Transform suite (rank one).
inline SuiteReport verify_transform(const Rational& k, const VerifyOptions& opt) {
  SuiteReport suite{"transform", {}};
  auto ctx = build_rank_one<Sqrt2>();
  ctx.set_multiplicity({k});
  TransformPlan<Sqrt2> plan(ctx);
  HeatKernel<Sqrt2> heat(ctx);
  suite.checks.push_back(check_transform_fixed_points(plan, heat));
  suite.checks.push_back(check_plancherel_inversion(plan));
  suite.checks.push_back(check_translation(plan, heat));
  if (k == 0) suite.checks.push_back(check_translation_classical(plan));
  HermiteSystem<Sqrt2> sys(ctx, 6);
  suite.checks.push_back(check_transform_eigenfunctions(sys, plan));
  (void)opt;
  return suite;
}

/// Heat suite (rank one).
inline SuiteReport verify_heat(const Rational& k, const VerifyOptions& opt) {
  SuiteReport suite{"heat", {}};
  auto ctx = build_rank_one<Sqrt2>();
  ctx.set_multiplicity({k});
  HeatKernel<Sqrt2> heat(ctx);
  TransformPlan<Sqrt2> plan(ctx);
  suite.checks.push_back(check_heat_properties(heat, ctx, opt.seed + 31));
  suite.checks.push_back(check_heat_markov_transform(heat, plan));
  suite.checks.push_back(check_heat_semigroup_operator(heat, ctx));
  return suite;
}

/// Asymptotics suite (rank one).
inline SuiteReport verify_asymptotics(const Rational& k, const VerifyOptions& opt) {
  SuiteReport suite{"asymptotics", {}};
  suite.checks.push_back(check_limit_constants({Rational(1, 4), Rational(1, 2), Rational(1), Rational(3, 2)}));
  suite.checks.push_back(check_ray_monotonicity(Rational(1, 2), 1.0, 1.2, {50, 100, 200, 400}));
  suite.checks.push_back(check_ray_monotonicity(Rational(1, 4), 1.0, 1.0, {50, 100, 200, 400}));
  suite.checks.push_back(check_ray_monotonicity(Rational(1), 1.0, 1.0, {50, 100, 200, 400}));
  suite.checks.push_back(check_half_plane_decay(k > 0 ? k : Rational(1, 2), 1.0, 1.0, {50, 100, 200}));
  suite.checks.push_back(check_heat_ratio(Rational(1, 2), 1.0, 1.0, {1e-1, 1e-2, 1e-3}));
  suite.checks.push_back(observe_opposite_chamber_ratio(Rational(1, 2), 1.0));
  (void)opt;
  return suite;
}

/// --- report formatting -------------------------------------------------------

inline std::string format_report_line(const CheckReport& c) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%-4s [%s] %s  (worst %.3e, tol %.1e)%s%s",
                c.pass ? "ok" : "FAIL", c.tag.c_str(), c.name.c_str(), c.worst_error, c.tolerance,
                c.detail.empty() ? "" : " -- ", c.detail.c_str());
  return buf;
}

inline std::string format_suite(const SuiteReport& s) {
  std::string out = "suite " + s.suite + "\n";
  for (const auto& c : s.checks) out += "  " + format_report_line(c) + "\n";
  return out;
}

}  // namespace dunkl
