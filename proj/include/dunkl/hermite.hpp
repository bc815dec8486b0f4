#pragma once

#include <vector>

#include "dunkl/dunkl_operator.hpp"
#include "dunkl/kernel.hpp"
#include "dunkl/quadrature.hpp"

namespace dunkl {

template <class S>
struct HermiteEntry {
  Monomial label;      // graded-lex Gram-Schmidt pivot
  MultiPoly<S> phi;    // orthogonal basis polynomial (unnormalized)
  S norm_sq;           // s_nu = [phi, phi]_k > 0
  MultiPoly<S> h;      // H_nu = e^{-Delta_k/2} phi
};

/// Generalized Hermite system: a graded [.,.]_k-orthogonal basis phi_nu
/// built by Gram-Schmidt over the graded-lex monomials (unnormalized, with
/// stored squared norms, so everything stays in the scalar field) and the
/// Hermite polynomials H_nu = e^{-Delta_k/2} phi_nu.
template <class S>
class HermiteSystem {
 public:
  HermiteSystem(const GroupContext<S>& ctx, int degree_cap)
      : ctx_(&ctx), ops_(ctx), cap_(degree_cap) {
    for (int n = 0; n <= degree_cap; ++n) build_degree(n);
  }

  const GroupContext<S>& context() const { return *ctx_; }
  const DunklOps<S>& ops() const { return ops_; }
  int cap() const { return cap_; }
  const std::vector<HermiteEntry<S>>& degree(int n) const { return by_degree_[static_cast<std::size_t>(n)]; }

  std::size_t total() const {
    std::size_t t = 0;
    for (const auto& d : by_degree_) t += d.size();
    return t;
  }

 private:
  void build_degree(int n) {
    const auto monos = monomials_of_degree(ctx_->dim(), n);
    const int m = static_cast<int>(monos.size());
    // Gram matrix of the monomials at this degree
    Matrix<S> gram(m, m);
    for (int j = 0; j < m; ++j) {
      auto col = ops_.pair_against_all_monomials(n, MultiPoly<S>::monomial(monos[static_cast<std::size_t>(j)], scalar_traits<S>::one()));
      for (int i = 0; i < m; ++i) gram(i, j) = col.at(monos[static_cast<std::size_t>(i)]);
    }
    // Gram-Schmidt in coefficient space over the monomial basis
    std::vector<std::vector<S>> coeffs;  // phi_j coordinates
    std::vector<HermiteEntry<S>> out;
    for (int j = 0; j < m; ++j) {
      std::vector<S> c(static_cast<std::size_t>(m), scalar_traits<S>::zero());
      c[static_cast<std::size_t>(j)] = scalar_traits<S>::one();
      // pair of x^j against previous phi: (gram . c_prev)_j
      for (int p = 0; p < j; ++p) {
        S ip = scalar_traits<S>::zero();
        for (int r = 0; r < m; ++r) ip += gram(j, r) * coeffs[static_cast<std::size_t>(p)][static_cast<std::size_t>(r)];
        S f = ip / out[static_cast<std::size_t>(p)].norm_sq;
        for (int r = 0; r < m; ++r) c[static_cast<std::size_t>(r)] -= f * coeffs[static_cast<std::size_t>(p)][static_cast<std::size_t>(r)];
      }
      S ns = scalar_traits<S>::zero();
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) ns += c[static_cast<std::size_t>(a)] * gram(a, b) * c[static_cast<std::size_t>(b)];
      bool bad;
      if constexpr (scalar_traits<S>::exact)
        bad = ns.sign() <= 0;
      else
        bad = ns <= 0.0;
      if (bad)
        throw RegularityError("Gram-Schmidt norm not positive at degree " + std::to_string(n) +
                              " (must not happen for k >= 0)");
      MultiPoly<S> phi(ctx_->dim());
      for (int r = 0; r < m; ++r) phi.add_term(monos[static_cast<std::size_t>(r)], c[static_cast<std::size_t>(r)]);
      HermiteEntry<S> e{monos[static_cast<std::size_t>(j)], phi, ns, ops_.exp_half_laplacian(phi, -1)};
      coeffs.push_back(std::move(c));
      out.push_back(std::move(e));
    }
    by_degree_.push_back(std::move(out));
  }

  const GroupContext<S>* ctx_;
  DunklOps<S> ops_;
  int cap_;
  std::vector<std::vector<HermiteEntry<S>>> by_degree_;
};

/// Exact pairwise orthogonality of the phi basis across all degrees.
template <class S>
CheckReport check_hermite_orthogonality(const HermiteSystem<S>& sys) {
  CheckReport rep{"basis orthogonality", "hermite-orthogonality", true, 0.0,
                  scalar_traits<S>::exact ? 0.0 : 1e-9, ""};
  const auto& ops = sys.ops();
  for (int n = 0; n <= sys.cap(); ++n) {
    const auto& deg = sys.degree(n);
    for (std::size_t i = 0; i < deg.size(); ++i)
      for (std::size_t j = i + 1; j < deg.size(); ++j) {
        S v = ops.fischer_pair(deg[i].phi, deg[j].phi);
        double err = scalar_traits<S>::abs_double(v);
        rep.worst_error = std::max(rep.worst_error, err);
        bool ok = scalar_traits<S>::exact ? scalar_traits<S>::is_zero(v) : (err <= rep.tolerance);
        if (!ok && rep.pass) {
          rep.pass = false;
          rep.detail = "pair at degree " + std::to_string(n);
        }
      }
  }
  return rep;
}

/// (-Delta_k + rho) H_nu = |nu| H_nu exactly; the harmonic-confinement
/// eigenvalue |nu| + gamma + N/2 is the gauge-conjugated reading of the
/// same identity.
template <class S>
CheckReport check_hermite_eigen(const HermiteSystem<S>& sys) {
  CheckReport rep{"hermite eigen-equations", "hermite-eigen", true, 0.0,
                  scalar_traits<S>::exact ? 0.0 : 1e-9, ""};
  const auto& ops = sys.ops();
  for (int n = 0; n <= sys.cap(); ++n)
    for (const auto& e : sys.degree(n)) {
      auto lhs = ops.euler(e.h) - ops.laplacian(e.h);
      auto rhs = e.h * S(n);
      double err = lhs.max_coeff_distance(rhs);
      rep.worst_error = std::max(rep.worst_error, err);
      bool ok = scalar_traits<S>::exact ? (lhs == rhs) : (err <= rep.tolerance);
      if (!ok && rep.pass) {
        rep.pass = false;
        rep.detail = "fails at degree " + std::to_string(n);
      }
    }
  return rep;
}

/// Parity H_nu(-x) = (-1)^{|nu|} H_nu(x) exactly.
template <class S>
CheckReport check_hermite_parity(const HermiteSystem<S>& sys) {
  CheckReport rep{"hermite parity", "hermite-parity", true, 0.0, 0.0, ""};
  for (int n = 0; n <= sys.cap(); ++n)
    for (const auto& e : sys.degree(n))
      for (const auto& [mono, c] : e.h.terms())
        if ((mono.degree() - n) % 2 != 0) {
          rep.pass = false;
          rep.detail = "mixed parity at degree " + std::to_string(n);
          return rep;
        }
  return rep;
}

/// span{H_nu : |nu| = n} has full dimension dim P_n (exact rank).
template <class S>
CheckReport check_hermite_span(const HermiteSystem<S>& sys) {
  CheckReport rep{"hermite span dimension", "hermite-span", true, 0.0, 0.0, ""};
  for (int n = 0; n <= sys.cap(); ++n) {
    const auto& deg = sys.degree(n);
    auto monos = monomials_up_to_degree(sys.context().dim(), n);
    Matrix<S> m(static_cast<int>(monos.size()), static_cast<int>(deg.size()));
    std::map<Monomial, int> index;
    for (std::size_t i = 0; i < monos.size(); ++i) index[monos[i]] = static_cast<int>(i);
    for (std::size_t j = 0; j < deg.size(); ++j)
      for (const auto& [mono, c] : deg[j].h.terms()) m(index.at(mono), static_cast<int>(j)) = c;
    try {
      solve_consistent(m, Matrix<S>(m.rows(), 0));
    } catch (const RegularityError&) {
      rep.pass = false;
      rep.detail = "rank deficiency at degree " + std::to_string(n);
      return rep;
    }
  }
  return rep;
}

/// The Dunkl image of a gaussian-damped polynomial stays in the family:
/// T_i (q e^{-|x|^2/2}) = (T_i q - x_i q) e^{-|x|^2/2}. Iterating over the
/// monomials of p gives p(T) applied to the plain gaussian.
template <class S>
MultiPoly<S> gaussian_damped_p_of_T(const DunklOps<S>& ops, const MultiPoly<S>& p) {
  const int N = ops.dim();
  MultiPoly<S> acc(N);
  for (const auto& [mono, coef] : p.terms()) {
    MultiPoly<S> r = MultiPoly<S>::constant(N, scalar_traits<S>::one());
    for (int i = 0; i < N; ++i)
      for (int e = 0; e < mono[i]; ++e) r = ops.apply_T(i, r) - MultiPoly<S>::variable(N, i) * r;
    acc += r * coef;
  }
  return acc;
}

/// Rodrigues relation in weak (integrated) form: for monomials p up to the
/// system cap,
///   integral H_nu p dm_k = (-1)^{|nu|} integral [phi_nu(T) e^{-|.|^2/2}] p e^{|.|^2/2} dm_k
/// with the right side evaluated through the damped-family closed form.
template <class S>
CheckReport check_rodrigues(const HermiteSystem<S>& sys, const QuadratureRule& rule, double tol = 1e-7) {
  CheckReport rep{"rodrigues weak form", "hermite-rodrigues", true, 0.0, tol, ""};
  const auto& ops = sys.ops();
  const int N = sys.context().dim();
  double ck = c_k_from_rule(rule);
  auto monos = monomials_up_to_degree(N, sys.cap());
  for (int n = 0; n <= sys.cap(); ++n)
    for (const auto& e : sys.degree(n)) {
      MultiPoly<S> damped = gaussian_damped_p_of_T(ops, e.phi);
      double sign = (n % 2 == 0) ? 1.0 : -1.0;
      for (const auto& mu : monos) {
        auto p = MultiPoly<S>::monomial(mu, scalar_traits<S>::one());
        double lhs = rule.integrate_real([&](const std::vector<double>& x) {
          return e.h.template eval<double>(x) * p.template eval<double>(x);
        }) / ck;
        double rhs = sign * rule.integrate_real([&](const std::vector<double>& x) {
          return damped.template eval<double>(x) * p.template eval<double>(x);
        }) / ck;
        double scale = std::max(1.0, std::fabs(lhs));
        double err = std::fabs(lhs - rhs) / scale;
        rep.worst_error = std::max(rep.worst_error, err);
        if (err > tol && rep.pass) {
          rep.pass = false;
          rep.detail = "fails at degree " + std::to_string(n);
        }
      }
    }
  return rep;
}

/// Quadrature orthonormality of the H_nu under dm_k:
/// integral H_mu H_nu dm_k = delta s_nu within rel_tol.
template <class S>
CheckReport check_hermite_quadrature_orthogonality(const HermiteSystem<S>& sys, const QuadratureRule& rule,
                                                   double rel_tol = 1e-7) {
  CheckReport rep{"hermite quadrature orthonormality", "hermite-quadrature-orthogonality", true, 0.0, rel_tol, ""};
  double ck = c_k_from_rule(rule);
  // flatten and evaluate at the nodes once
  std::vector<const HermiteEntry<S>*> all;
  for (int n = 0; n <= sys.cap(); ++n)
    for (const auto& e : sys.degree(n)) all.push_back(&e);
  std::vector<std::vector<double>> vals(all.size(), std::vector<double>(rule.size()));
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t t = 0; t < rule.size(); ++t) vals[i][t] = all[i]->h.template eval<double>(rule.nodes[t]);
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i; j < all.size(); ++j) {
      double acc = 0;
      for (std::size_t t = 0; t < rule.size(); ++t) acc += rule.weights[t] * vals[i][t] * vals[j][t];
      acc /= ck;
      double expected = (i == j) ? scalar_traits<S>::to_double(all[i]->norm_sq) : 0.0;
      double scale = std::max(std::sqrt(scalar_traits<S>::to_double(all[i]->norm_sq) *
                                        scalar_traits<S>::to_double(all[j]->norm_sq)),
                              1e-300);
      double err = std::fabs(acc - expected) / scale;
      rep.worst_error = std::max(rep.worst_error, err);
      if (err > rel_tol && rep.pass) {
        rep.pass = false;
        rep.detail = "pair (" + std::to_string(i) + "," + std::to_string(j) + ")";
      }
    }
  return rep;
}

/// Generating relation e^{-|y|^2/2} E_k(x,y) = sum H_nu(x) phi_nu(y)/s_nu
/// and the Mehler sum
///   sum H_nu(x) H_nu(y) r^{|nu|}/s_nu =
///   (1-r^2)^{-(gamma+N/2)} exp(-r^2(|x|^2+|y|^2)/(2(1-r^2))) E_k(rx/(1-r^2), y),
/// truncated at the cap, against the kernel evaluator. The unnormalized
/// basis carries the 1/s_nu factors explicitly.
template <class S>
CheckReport check_generating_and_mehler(const HermiteSystem<S>& sys, const KernelEvaluator<S>& ev,
                                        const std::vector<double>& x, const std::vector<double>& y,
                                        double r, double tol) {
  CheckReport rep{"generating and mehler sums", "hermite-generating-mehler", true, 0.0, tol, ""};
  const int N = sys.context().dim();
  double ny = 0, nx = 0;
  for (double c : y) ny += c * c;
  for (double c : x) nx += c * c;

  double gen_sum = 0.0, mehler_sum = 0.0;
  for (int n = 0; n <= sys.cap(); ++n)
    for (const auto& e : sys.degree(n)) {
      double s = scalar_traits<S>::to_double(e.norm_sq);
      double hx = e.h.template eval<double>(x);
      gen_sum += hx * e.phi.template eval<double>(y) / s;
      mehler_sum += hx * e.h.template eval<double>(y) * std::pow(r, n) / s;
    }
  double gen_target = std::exp(-ny / 2.0) * ev.eval_E_real(x, y).value.real();
  double gerr = std::fabs(gen_sum - gen_target) / std::max(1.0, std::fabs(gen_target));
  rep.worst_error = std::max(rep.worst_error, gerr);
  if (gerr > tol) {
    rep.pass = false;
    rep.detail = "generating relation off by " + std::to_string(gerr);
  }

  double gN = to_double(sys.context().gamma()) + N / 2.0;
  std::vector<double> xs(x);
  for (auto& c : xs) c *= r / (1.0 - r * r);
  double mehler_target = std::pow(1.0 - r * r, -gN) *
                         std::exp(-r * r * (nx + ny) / (2.0 * (1.0 - r * r))) *
                         ev.eval_E_real(xs, y).value.real();
  double merr = std::fabs(mehler_sum - mehler_target) / std::max(1.0, std::fabs(mehler_target));
  rep.worst_error = std::max(rep.worst_error, merr);
  if (merr > tol && rep.pass) {
    rep.pass = false;
    rep.detail = "mehler relation off by " + std::to_string(merr);
  }
  return rep;
}

/// Kernel expansion E_k(x,y) = sum phi_nu(x) phi_nu(y) / s_nu (truncated).
template <class S>
CheckReport check_kernel_basis_expansion(const HermiteSystem<S>& sys, const KernelEvaluator<S>& ev,
                                         const std::vector<double>& x, const std::vector<double>& y,
                                         double tol = 1e-8) {
  CheckReport rep{"kernel basis expansion", "kernel-basis-expansion", true, 0.0, tol, ""};
  double acc = 0.0;
  for (int n = 0; n <= sys.cap(); ++n)
    for (const auto& e : sys.degree(n))
      acc += e.phi.template eval<double>(x) * e.phi.template eval<double>(y) /
             scalar_traits<S>::to_double(e.norm_sq);
  double target = ev.eval_E_real(x, y).value.real();
  double err = std::fabs(acc - target) / std::max(1.0, std::fabs(target));
  rep.worst_error = err;
  if (err > tol) {
    rep.pass = false;
    rep.detail = "expansion off";
  }
  return rep;
}

}  // namespace dunkl
