#pragma once

#include <functional>

#include "dunkl/hermite.hpp"
#include "dunkl/hyp1f1.hpp"
#include "dunkl/kernel.hpp"
#include "dunkl/quadrature.hpp"

namespace dunkl {

struct TransformValue {
  std::complex<double> value;
  double boundary_mass = 0.0;  // weighted integrand mass near the domain edge
};

/// Weighted integral transform on the line (rank one): plan bundles the
/// closed-form kernel, a truncated-domain rule for w_k dx and the
/// normalization c_k. The kernel at imaginary arguments,
/// E(-i xi, x) = E at product -i xi x, has modulus <= 1, so the truncated
/// domain only needs to exhaust the decay of f.
template <class S>
class TransformPlan {
 public:
  TransformPlan(const GroupContext<S>& ctx, double domain = 9.0, int nodes = 200)
      : kernel_(to_double(ctx.k[0])),
        rule_(build_lebesgue_wk_rule(ctx, domain, nodes)),
        domain_(domain),
        ck_(rank_one_c_k(to_double(ctx.k[0]))) {
    if (ctx.dim() != 1)
      throw UnsupportedDimensionError("transform plans are built for the rank-one system");
  }

  double c_k() const { return ck_; }
  double domain() const { return domain_; }
  const QuadratureRule& rule() const { return rule_; }
  const RankOneKernel& kernel() const { return kernel_; }

  /// f-hat(xi) = c_k^{-1} integral f(x) E(-i xi, x) w_k(x) dx.
  TransformValue transform(const std::function<double(double)>& f, double xi) const {
    TransformValue out;
    std::complex<double> acc = 0.0;
    double edge = 0.0, total = 0.0;
    for (std::size_t i = 0; i < rule_.size(); ++i) {
      double x = rule_.nodes[i][0];
      double fv = f(x);
      if (!std::isfinite(fv)) throw PreconditionError("transform integrand not finite");
      std::complex<double> contrib = rule_.weights[i] * fv * kernel_.eval_product(std::complex<double>(0.0, -xi * x));
      acc += contrib;
      total += rule_.weights[i] * std::fabs(fv);
      if (std::fabs(x) > 0.95 * domain_) edge += rule_.weights[i] * std::fabs(fv);
    }
    out.value = acc / ck_;
    out.boundary_mass = (total > 0) ? edge / total : 0.0;
    return out;
  }

  /// Inverse transform g^{vee}(x) = g-hat(-x) = c_k^{-1} integral g(xi) E(i x, xi) w_k dxi.
  TransformValue inverse(const std::function<std::complex<double>(double)>& g, double x) const {
    TransformValue out;
    std::complex<double> acc = 0.0;
    for (std::size_t i = 0; i < rule_.size(); ++i) {
      double xi = rule_.nodes[i][0];
      acc += rule_.weights[i] * g(xi) * kernel_.eval_product(std::complex<double>(0.0, x * xi));
    }
    out.value = acc / ck_;
    return out;
  }

  /// ||f||^2 in L^2(w_k) over the truncated domain.
  double l2_norm_sq(const std::function<double(double)>& f) const {
    return rule_.integrate_real([&](const std::vector<double>& x) {
      double v = f(x[0]);
      return v * v;
    });
  }

  /// Generalized translation through the transform side:
  /// tau_y f(x) = c_k^{-1} integral f-hat(xi) E(ix, xi) E(iy, xi) w_k(xi) dxi,
  /// with the transform of f supplied in closed form.
  double translation(const std::function<std::complex<double>(double)>& f_hat, double y, double x) const {
    std::complex<double> acc = 0.0;
    for (std::size_t i = 0; i < rule_.size(); ++i) {
      double xi = rule_.nodes[i][0];
      acc += rule_.weights[i] * f_hat(xi) * kernel_.eval_product(std::complex<double>(0.0, x * xi)) *
             kernel_.eval_product(std::complex<double>(0.0, y * xi));
    }
    return (acc / ck_).real();
  }

 private:
  RankOneKernel kernel_;
  QuadratureRule rule_;
  double domain_;
  double ck_;
};

/// Heat kernel
///   G_k(t,x,y) = (2t)^{-(gamma+N/2)} c_k^{-1} e^{-(|x|^2+|y|^2)/4t} E(x/sqrt(2t), y/sqrt(2t)).
/// The rank-one evaluation combines the gaussian prefactor with the scaled
/// kernel, e^{-(x-y)^2/4t} [e^{-z}E](z), which stays finite for t -> 0.
template <class S>
class HeatKernel {
 public:
  explicit HeatKernel(const GroupContext<S>& ctx)
      : gamma_(to_double(ctx.gamma())),
        dim_(ctx.dim()),
        kernel_(ctx.dim() == 1 ? to_double(ctx.k[0]) : 0.0),
        ck_(ctx.dim() == 1 ? rank_one_c_k(to_double(ctx.k[0])) : 0.0) {
    if (ctx.dim() != 1) {
      ev_ = std::make_unique<KernelEvaluator<S>>(ctx, 60, 2);
      auto rule = build_gaussian_wk_rule(ctx, 40, 32);
      ck_ = c_k_from_rule(rule);
    }
    kd_ = (dim_ == 1) ? to_double(ctx.k[0]) : 0.0;
  }

  double gamma_index() const { return gamma_; }
  double c_k() const { return ck_; }
  double multiplicity() const { return kd_; }

  double eval(double t, const std::vector<double>& x, const std::vector<double>& y) const {
    if (t <= 0.0) throw PreconditionError("heat kernel needs t > 0");
    double pre = std::pow(2.0 * t, -(gamma_ + dim_ / 2.0)) / ck_;
    if (dim_ == 1) {
      double z = x[0] * y[0] / (2.0 * t);
      double d = (x[0] - y[0]);
      double v = pre * std::exp(-d * d / (4.0 * t)) * kernel_.eval_product_scaled(z).real();
      return v;
    }
    double nx = 0, ny = 0;
    for (double c : x) nx += c * c;
    for (double c : y) ny += c * c;
    std::vector<double> xs(x), ys(y);
    double s = 1.0 / std::sqrt(2.0 * t);
    for (auto& c : xs) c *= s;
    for (auto& c : ys) c *= s;
    double e = ev_->eval_E_real(xs, ys).value.real();  // throws TruncationError when out of reach
    return pre * std::exp(-(nx + ny) / (4.0 * t)) * e;
  }

  /// Fundamental solution F_k(x,t) = G_k(t, x, 0).
  double fundamental(const std::vector<double>& x, double t) const {
    double nx = 0;
    for (double c : x) nx += c * c;
    return std::pow(2.0 * t, -(gamma_ + dim_ / 2.0)) / ck_ * std::exp(-nx / (4.0 * t));
  }

 private:
  double gamma_;
  int dim_;
  RankOneKernel kernel_;
  double ck_;
  double kd_ = 0.0;
  std::unique_ptr<KernelEvaluator<S>> ev_;
};

/// --- transform checks -------------------------------------------------------

/// Transform of the gaussian e^{-|x|^2/2} is itself; the fundamental
/// solution maps to c_k^{-1} e^{-t |xi|^2}.
template <class S>
CheckReport check_transform_fixed_points(const TransformPlan<S>& plan, const HeatKernel<S>& heat,
                                         double tol = 1e-6) {
  CheckReport rep{"transform fixed points", "transform-gaussian-fixed", true, 0.0, tol, ""};
  for (double xi : {0.0, 0.4, 1.0, 1.7, 2.5}) {
    auto got = plan.transform([](double x) { return std::exp(-x * x / 2.0); }, xi);
    double expected = std::exp(-xi * xi / 2.0);
    double err = std::abs(got.value - expected);
    rep.worst_error = std::max(rep.worst_error, err);
    if (err > tol && rep.pass) {
      rep.pass = false;
      rep.detail = "gaussian transform off at xi=" + std::to_string(xi);
    }
  }
  for (double t : {0.3, 1.0}) {
    for (double xi : {0.5, 1.5}) {
      auto got = plan.transform([&](double x) { return heat.fundamental({x}, t); }, xi);
      double expected = std::exp(-t * xi * xi) / plan.c_k();
      double err = std::abs(got.value - expected) / expected;
      rep.worst_error = std::max(rep.worst_error, err);
      if (err > tol && rep.pass) {
        rep.pass = false;
        rep.detail = "fundamental-solution transform off";
      }
    }
  }
  return rep;
}

/// Plancherel isometry and pointwise inversion on a battery of
/// gaussian-damped polynomials.
template <class S>
CheckReport check_plancherel_inversion(const TransformPlan<S>& plan, double tol = 1e-5) {
  CheckReport rep{"plancherel and inversion", "transform-plancherel-inversion", true, 0.0, tol, ""};
  std::vector<std::function<double(double)>> battery;
  for (int j = 0; j <= 5; ++j)
    battery.push_back([j](double x) { return std::pow(x, j) * std::exp(-x * x / 2.0); });
  battery.push_back([](double x) { return (1.0 + x * x) * std::exp(-0.75 * x * x); });
  battery.push_back([](double x) { return x * std::exp(-x * x); });
  battery.push_back([](double x) { return std::exp(-x * x / 2.0) * std::cos(x); });
  battery.push_back([](double x) { return (x * x * x - 2.0 * x) * std::exp(-0.6 * x * x); });

  // the kernel matrix over (frequency node, space node) is shared by the
  // whole battery; it is symmetric in the product argument
  const auto& rule = plan.rule();
  const std::size_t n = rule.size();
  std::vector<std::complex<double>> kmat(n * n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = j; i < n; ++i) {
      auto v = plan.kernel().eval_product(std::complex<double>(0.0, -rule.nodes[j][0] * rule.nodes[i][0]));
      kmat[j * n + i] = v;
      kmat[i * n + j] = v;
    }
  auto transform_at_nodes = [&](const std::function<double(double)>& f) {
    std::vector<std::complex<double>> out(n);
    std::vector<double> fv(n);
    for (std::size_t i = 0; i < n; ++i) fv[i] = f(rule.nodes[i][0]) * rule.weights[i];
    for (std::size_t j = 0; j < n; ++j) {
      std::complex<double> acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) acc += kmat[j * n + i] * fv[i];
      out[j] = acc / plan.c_k();
    }
    return out;
  };

  std::vector<std::vector<std::complex<double>>> hats;
  for (std::size_t bi = 0; bi < battery.size(); ++bi) {
    const auto& f = battery[bi];
    double nf = plan.l2_norm_sq(f);
    auto fh = transform_at_nodes(f);
    double nhat = 0.0;
    for (std::size_t j = 0; j < n; ++j) nhat += rule.weights[j] * std::norm(fh[j]);
    double err = std::fabs(nf - nhat) / std::fabs(nf);
    rep.worst_error = std::max(rep.worst_error, err);
    if (err > tol && rep.pass) {
      rep.pass = false;
      rep.detail = "isometry fails for battery function " + std::to_string(bi);
    }
    hats.push_back(std::move(fh));
  }
  // pointwise inversion at 20 sample points for two battery functions
  for (std::size_t bi : {std::size_t{1}, std::size_t{6}}) {
    const auto& f = battery[bi];
    const auto& fh = hats[bi];
    for (int s = 0; s < 20; ++s) {
      double x = -2.0 + s * (4.0 / 19.0);
      std::complex<double> acc = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        acc += rule.weights[i] * fh[i] *
               plan.kernel().eval_product(std::complex<double>(0.0, x * rule.nodes[i][0]));
      double err = std::abs(acc / plan.c_k() - f(x));
      rep.worst_error = std::max(rep.worst_error, err);
      if (err > tol && rep.pass) {
        rep.pass = false;
        rep.detail = "inversion fails at x=" + std::to_string(x);
      }
    }
  }
  return rep;
}

/// tau_0 f = f, symmetry tau_y f(x) = tau_x f(y), the k = 0 classical
/// translation, and the heat-kernel link tau_{-y} F_k(., t) = G_k(t, ., y).
template <class S>
CheckReport check_translation(const TransformPlan<S>& plan, const HeatKernel<S>& heat, double tol = 1e-6) {
  CheckReport rep{"generalized translation", "generalized-translation", true, 0.0, tol, ""};
  // f gaussian: f-hat = e^{-xi^2/2} exactly
  auto f = [](double x) { return std::exp(-x * x / 2.0); };
  auto f_hat = [](double xi) { return std::complex<double>(std::exp(-xi * xi / 2.0), 0.0); };
  auto record = [&](double err, const char* what) {
    rep.worst_error = std::max(rep.worst_error, err);
    if (err > tol && rep.pass) {
      rep.pass = false;
      rep.detail = what;
    }
  };
  for (double x : {-0.8, 0.3, 1.2}) {
    record(std::fabs(plan.translation(f_hat, 0.0, x) - f(x)), "tau_0 f != f");
    for (double y : {0.5, -1.0}) {
      record(std::fabs(plan.translation(f_hat, y, x) - plan.translation(f_hat, x, y)),
             "tau_y f(x) != tau_x f(y)");
    }
  }
  // heat-kernel link: tau_{-y} F_k(., t)(x) = G_k(t, x, y)
  for (double t : {0.4, 1.0}) {
    auto fk_hat = [&](double xi) {
      return std::complex<double>(std::exp(-t * xi * xi) / plan.c_k(), 0.0);
    };
    for (double x : {0.6, -0.9}) {
      for (double y : {0.2, 1.1}) {
        double lhs = plan.translation(fk_hat, -y, x);
        double rhs = heat.eval(t, {x}, {y});
        record(std::fabs(lhs - rhs) / std::max(1.0, std::fabs(rhs)), "translation vs heat kernel");
      }
    }
  }
  return rep;
}

/// k = 0: tau_y f(x) = f(x + y).
template <class S>
CheckReport check_translation_classical(const TransformPlan<S>& plan, double tol = 1e-6) {
  CheckReport rep{"classical translation limit", "translation-classical-limit", true, 0.0, tol, ""};
  auto f = [](double x) { return std::exp(-x * x / 2.0); };
  auto f_hat = [](double xi) { return std::complex<double>(std::exp(-xi * xi / 2.0), 0.0); };
  for (double x : {-0.7, 0.4, 1.3})
    for (double y : {-0.5, 0.8}) {
      double err = std::fabs(plan.translation(f_hat, y, x) - f(x + y));
      rep.worst_error = std::max(rep.worst_error, err);
      if (err > tol && rep.pass) {
        rep.pass = false;
        rep.detail = "k=0 translation differs from the shift";
      }
    }
  return rep;
}

/// --- heat checks ------------------------------------------------------------

/// Numeric Dunkl Laplacian on smooth functions: central second differences
/// plus the exact reflection-difference terms (rank one).
inline double numeric_dunkl_laplacian_1d(const std::function<double(double)>& f, double x, double k,
                                         double h = 1e-4) {
  double hh = h * std::max(1.0, std::fabs(x));
  double fpp = (f(x + hh) - 2.0 * f(x) + f(x - hh)) / (hh * hh);
  double fp = (f(x + hh) - f(x - hh)) / (2.0 * hh);
  return fpp + 2.0 * k * (fp / x - (f(x) - f(-x)) / (2.0 * x * x));
}

template <class S>
CheckReport check_heat_properties(const HeatKernel<S>& heat, const GroupContext<S>& ctx,
                                  std::uint64_t seed) {
  CheckReport rep{"heat kernel properties", "heat-kernel-suite", true, 0.0, 1e-6, ""};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ut(0.2, 2.0), ux(-2.0, 2.0);
  auto record = [&](double err, double tol, const char* what) {
    rep.worst_error = std::max(rep.worst_error, err / std::max(tol / 1e-6, 1.0));
    if (err > tol && rep.pass) {
      rep.pass = false;
      rep.detail = what;
    }
  };

  auto make_rule = [&](double t, double center) {
    double L = std::max(8.0, std::fabs(center) + 8.0 * std::sqrt(2.0 * t));
    int nodes = 120 + static_cast<int>(10 * L);
    return build_lebesgue_wk_rule(ctx, L, nodes);
  };

  // (mass) integral of G_k(t,x,y) w(y) dy = 1, including x = 0 (the
  // fundamental solution) and the sampled x of the spec battery
  for (double t : {0.25, 1.0}) {
    for (double x : {0.0, 0.5, 1.3}) {
      auto rule = make_rule(t, x);
      double mass = rule.integrate_real([&](const std::vector<double>& y) { return heat.eval(t, {x}, {y[0]}); });
      record(std::fabs(mass - 1.0), 1e-6, "heat kernel mass");
    }
  }

  // (semigroup) G(t+s,x,y) = integral G(t,x,z) G(s,y,z) w(z) dz on random tuples
  for (int it = 0; it < 10; ++it) {
    double t = ut(rng), s = ut(rng), x = ux(rng), y = ux(rng);
    auto rule = make_rule(std::max(t, s), 0.0);
    double conv = rule.integrate_real([&](const std::vector<double>& z) {
      return heat.eval(t, {x}, {z[0]}) * heat.eval(s, {y}, {z[0]});
    });
    double direct = heat.eval(t + s, {x}, {y});
    record(std::fabs(conv - direct) / std::max(1e-12, std::fabs(direct)), 1e-6, "semigroup identity");
    // s = t consistency with G(2t)
    double conv2 = rule.integrate_real([&](const std::vector<double>& z) {
      return heat.eval(t, {x}, {z[0]}) * heat.eval(t, {y}, {z[0]});
    });
    record(std::fabs(conv2 - heat.eval(2.0 * t, {x}, {y})) / std::max(1e-12, heat.eval(2.0 * t, {x}, {y})),
           1e-6, "semigroup at s=t");
  }

  // (pde) Delta_k u = du/dt pointwise, finite differences vs 5-point time stencil
  for (int it = 0; it < 8; ++it) {
    double t = ut(rng);
    double x = ux(rng), y = ux(rng);
    if (std::fabs(x) < 0.3) x += std::copysign(0.5, x);
    auto u = [&](double xx) { return heat.eval(t, {xx}, {y}); };
    double lap = numeric_dunkl_laplacian_1d(u, x, heat.multiplicity());
    double ht = 1e-3 * t;
    double dudt = (-heat.eval(t + 2 * ht, {x}, {y}) + 8 * heat.eval(t + ht, {x}, {y}) -
                   8 * heat.eval(t - ht, {x}, {y}) + heat.eval(t - 2 * ht, {x}, {y})) /
                  (12.0 * ht);
    record(std::fabs(lap - dudt), 1e-4, "heat equation residual");
  }

  // (gaussian bound) G <= (2t)^{-(g+1/2)} c_k^{-1} max_g e^{-|gx-y|^2/4t}; positivity
  for (int it = 0; it < 40; ++it) {
    double t = ut(rng), x = ux(rng), y = ux(rng);
    double v = heat.eval(t, {x}, {y});
    if (v <= 0.0) {
      rep.pass = false;
      rep.detail = "heat kernel not positive";
    }
    double bound = std::pow(2.0 * t, -(heat.gamma_index() + 0.5)) / heat.c_k() *
                   std::max(std::exp(-(x - y) * (x - y) / (4 * t)), std::exp(-(x + y) * (x + y) / (4 * t)));
    record(std::max(0.0, v - bound * (1.0 + 1e-12)), 1e-12, "gaussian upper bound");
  }
  return rep;
}

/// Transform side of the Markov property: the transform of y -> G_k(t,x,y)
/// equals c_k^{-1} E(-ix, xi) e^{-t xi^2}.
template <class S>
CheckReport check_heat_markov_transform(const HeatKernel<S>& heat, const TransformPlan<S>& plan,
                                        double tol = 1e-6) {
  CheckReport rep{"markov transform property", "heat-markov-transform", true, 0.0, tol, ""};
  for (double t : {0.3, 0.8}) {
    for (double x : {0.0, 0.7, -1.1}) {
      for (double xi : {0.4, 1.3, 2.2}) {
        auto got = plan.transform([&](double y) { return heat.eval(t, {x}, {y}); }, xi);
        std::complex<double> expected =
            plan.kernel().eval_product(std::complex<double>(0.0, -x * xi)) * std::exp(-t * xi * xi) / plan.c_k();
        double err = std::abs(got.value - expected) / std::abs(expected);
        rep.worst_error = std::max(rep.worst_error, err);
        if (err > tol && rep.pass) {
          rep.pass = false;
          rep.detail = "transform of the heat kernel off";
        }
      }
    }
  }
  return rep;
}

/// Sup-norm contraction of H(t) on positive data plus the small-t
/// continuity proxy (mass and first moments approach the delta limits).
template <class S>
CheckReport check_heat_semigroup_operator(const HeatKernel<S>& heat, const GroupContext<S>& ctx,
                                          double tol = 1e-8) {
  CheckReport rep{"semigroup operator bounds", "heat-semigroup-operator", true, 0.0, tol, ""};
  auto f = [](double y) { return 1.0 / (1.0 + y * y); };  // positive, bounded by 1
  auto rule = build_lebesgue_wk_rule(ctx, 10.0, 220);
  for (double t : {0.3, 1.0}) {
    for (double x : {0.0, 0.9, 1.8}) {
      double v = rule.integrate_real([&](const std::vector<double>& y) {
        return heat.eval(t, {x}, {y[0]}) * f(y[0]);
      });
      if (v > 1.0 + tol && rep.pass) {
        rep.pass = false;
        rep.detail = "sup-norm contraction violated";
      }
      rep.worst_error = std::max(rep.worst_error, v - 1.0);
    }
  }
  // continuity proxy at t -> 0: mass stays 1, first moment approaches x
  double x0 = 0.8;
  double prev = 1e9;
  for (double t : {0.5, 0.1, 0.02}) {
    double L = std::max(8.0, x0 + 8.0 * std::sqrt(2.0 * t));
    auto r = build_lebesgue_wk_rule(ctx, L, 300);
    double mass = r.integrate_real([&](const std::vector<double>& y) { return heat.eval(t, {x0}, {y[0]}); });
    double m1 = r.integrate_real([&](const std::vector<double>& y) { return y[0] * heat.eval(t, {x0}, {y[0]}); });
    if (std::fabs(mass - 1.0) > 1e-6 && rep.pass) {
      rep.pass = false;
      rep.detail = "mass drifts as t -> 0";
    }
    double dev = std::fabs(m1 - x0);
    if (dev > prev + 1e-9 && rep.pass) {
      rep.pass = false;
      rep.detail = "first moment does not approach the start point";
    }
    prev = dev;
  }
  return rep;
}

/// Hermite functions are transform eigenfunctions with eigenvalue
/// (-i)^{|nu|}. With this library's conventions (H_nu adapted to the
/// e^{-|x|^2/2} w_k measure, transform kernel E(-i xi, x)), the
/// eigenfunctions are the dilated functions
///   psi_nu(x) = H_nu(sqrt(2) x) e^{-|x|^2/2};
/// at k = 0 and nu = 0 this is the transform-fixed gaussian. Rank one.
template <class S>
CheckReport check_transform_eigenfunctions(const HermiteSystem<S>& sys, const TransformPlan<S>& plan,
                                           double tol = 1e-6) {
  CheckReport rep{"hermite transform eigenfunctions", "hermite-transform-eigenfunctions", true, 0.0, tol, ""};
  const double sq2 = std::sqrt(2.0);
  for (int n = 0; n <= sys.cap(); ++n) {
    const auto& e = sys.degree(n)[0];
    std::complex<double> eig = std::pow(std::complex<double>(0.0, -1.0), n);
    for (double xi : {0.35, 1.1, 1.9}) {
      auto got = plan.transform(
          [&](double x) { return e.h.template eval<double>({sq2 * x}) * std::exp(-x * x / 2.0); }, xi);
      std::complex<double> expected = eig * e.h.template eval<double>({sq2 * xi}) * std::exp(-xi * xi / 2.0);
      double err = std::abs(got.value - expected);
      rep.worst_error = std::max(rep.worst_error, err);
      if (err > tol && rep.pass) {
        rep.pass = false;
        rep.detail = "eigenfunction fails at degree " + std::to_string(n);
      }
    }
  }
  return rep;
}

}  // namespace dunkl
