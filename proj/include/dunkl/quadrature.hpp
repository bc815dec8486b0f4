#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "dunkl/dunkl_operator.hpp"
#include "dunkl/errors.hpp"
#include "dunkl/report.hpp"
#include "dunkl/root_system.hpp"

namespace dunkl {

enum class Measure {
  GaussianWk,           // w_k(x) e^{-|x|^2/2} dx on R^N
  LebesgueWkTruncated,  // w_k(x) dx on a ball/interval of radius L
  Jacobi,               // (1-t)^a (1+t)^b dt on [-1,1]
};

/// Nodes/weights with the target measure folded into the weights:
/// integrate(f) = sum w_i f(x_i) approximates the integral of f against
/// the tagged measure. Weights are positive.
struct QuadratureRule {
  Measure measure = Measure::GaussianWk;
  std::vector<std::vector<double>> nodes;
  std::vector<double> weights;
  int exactness_degree = -1;  // polynomial exactness when applicable, -1 = spectral estimate
  double truncation_radius = 0.0;

  std::size_t size() const { return weights.size(); }

  std::complex<double> integrate(const std::function<std::complex<double>(const std::vector<double>&)>& f) const {
    std::complex<double> acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      std::complex<double> v = f(nodes[i]);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw PreconditionError("integrand is not finite at node " + std::to_string(i));
      acc += weights[i] * v;
    }
    return acc;
  }

  double integrate_real(const std::function<double(const std::vector<double>&)>& f) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      double v = f(nodes[i]);
      if (!std::isfinite(v))
        throw PreconditionError("integrand is not finite at node " + std::to_string(i));
      acc += weights[i] * v;
    }
    return acc;
  }
};

namespace detail {

/// Symmetric tridiagonal QL with implicit shifts, accumulating only the
/// first row of the eigenvector matrix (all Golub-Welsch needs).
inline void tridiagonal_first_row(std::vector<double>& d, std::vector<double>& e, std::vector<double>& z) {
  const int n = static_cast<int>(d.size());
  const double eps = 1e-15;
  for (int i = 1; i < n; ++i) e[static_cast<std::size_t>(i - 1)] = e[static_cast<std::size_t>(i)];
  e[static_cast<std::size_t>(n - 1)] = 0.0;
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        double dd = std::fabs(d[static_cast<std::size_t>(m)]) + std::fabs(d[static_cast<std::size_t>(m + 1)]);
        if (std::fabs(e[static_cast<std::size_t>(m)]) <= eps * dd) break;
      }
      if (m != l) {
        if (iter++ == 80) throw std::runtime_error("tridiagonal eigensolve failed to converge");
        double g = (d[static_cast<std::size_t>(l + 1)] - d[static_cast<std::size_t>(l)]) / (2.0 * e[static_cast<std::size_t>(l)]);
        double r = std::hypot(g, 1.0);
        g = d[static_cast<std::size_t>(m)] - d[static_cast<std::size_t>(l)] +
            e[static_cast<std::size_t>(l)] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        bool underflow = false;
        for (int i = m - 1; i >= l; --i) {
          double f = s * e[static_cast<std::size_t>(i)];
          double b = c * e[static_cast<std::size_t>(i)];
          r = std::hypot(f, g);
          e[static_cast<std::size_t>(i + 1)] = r;
          if (r == 0.0) {
            d[static_cast<std::size_t>(i + 1)] -= p;
            e[static_cast<std::size_t>(m)] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[static_cast<std::size_t>(i + 1)] - p;
          r = (d[static_cast<std::size_t>(i)] - g) * s + 2.0 * c * b;
          p = s * r;
          d[static_cast<std::size_t>(i + 1)] = g + p;
          g = c * r - b;
          f = z[static_cast<std::size_t>(i + 1)];
          z[static_cast<std::size_t>(i + 1)] = s * z[static_cast<std::size_t>(i)] + c * f;
          z[static_cast<std::size_t>(i)] = c * z[static_cast<std::size_t>(i)] - s * f;
        }
        if (underflow) continue;
        d[static_cast<std::size_t>(l)] -= p;
        e[static_cast<std::size_t>(l)] = g;
        e[static_cast<std::size_t>(m)] = 0.0;
      }
    } while (m != l);
  }
}

struct Gauss1D {
  std::vector<double> nodes, weights;
};

/// Golub-Welsch from a three-term recurrence p_{n+1} = (x - a_n) p_n - b_n p_{n-1}
/// with b_0 = total mass of the weight.
inline Gauss1D gauss_from_recurrence(const std::vector<double>& a, const std::vector<double>& b) {
  const int n = static_cast<int>(a.size());
  std::vector<double> d = a, e(static_cast<std::size_t>(n), 0.0), z(static_cast<std::size_t>(n), 0.0);
  for (int i = 1; i < n; ++i) e[static_cast<std::size_t>(i)] = std::sqrt(b[static_cast<std::size_t>(i)]);
  z[0] = 1.0;
  tridiagonal_first_row(d, e, z);
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) { return d[static_cast<std::size_t>(i)] < d[static_cast<std::size_t>(j)]; });
  Gauss1D out;
  for (int i : order) {
    out.nodes.push_back(d[static_cast<std::size_t>(i)]);
    out.weights.push_back(b[0] * z[static_cast<std::size_t>(i)] * z[static_cast<std::size_t>(i)]);
  }
  return out;
}

/// Generalized Hermite weight |x|^{2 mu} e^{-x^2}: b_{2m} = m, b_{2m+1} = m + mu + 1/2
/// (the Laguerre connection of the even/odd parts supplies the coefficients).
inline Gauss1D gauss_generalized_hermite(double mu, int n) {
  std::vector<double> a(static_cast<std::size_t>(n), 0.0), b(static_cast<std::size_t>(n), 0.0);
  b[0] = std::tgamma(mu + 0.5);
  for (int i = 1; i < n; ++i)
    b[static_cast<std::size_t>(i)] = (i % 2 == 0) ? i / 2.0 : (i - 1) / 2.0 + mu + 0.5;
  return gauss_from_recurrence(a, b);
}

/// Jacobi weight (1-t)^a (1+t)^b on [-1,1].
inline Gauss1D gauss_jacobi(double a, double b, int n) {
  if (a <= -1.0 || b <= -1.0) throw ConfigError("Jacobi exponents must exceed -1");
  std::vector<double> al(static_cast<std::size_t>(n), 0.0), be(static_cast<std::size_t>(n), 0.0);
  double apb = a + b;
  be[0] = std::pow(2.0, apb + 1.0) * std::exp(std::lgamma(a + 1.0) + std::lgamma(b + 1.0) - std::lgamma(apb + 2.0));
  for (int i = 0; i < n; ++i) {
    if (i == 0)
      al[0] = (b - a) / (apb + 2.0);
    else
      al[static_cast<std::size_t>(i)] = (b * b - a * a) / ((2.0 * i + apb) * (2.0 * i + apb + 2.0));
  }
  for (int i = 1; i < n; ++i) {
    if (i == 1)
      be[1] = 4.0 * (a + 1.0) * (b + 1.0) / ((apb + 2.0) * (apb + 2.0) * (apb + 3.0));
    else
      be[static_cast<std::size_t>(i)] = 4.0 * i * (i + a) * (i + b) * (i + apb) /
                                        ((2.0 * i + apb) * (2.0 * i + apb) * (2.0 * i + apb + 1.0) * (2.0 * i + apb - 1.0));
  }
  return gauss_from_recurrence(al, be);
}

inline Gauss1D gauss_legendre(int n) { return gauss_jacobi(0.0, 0.0, n); }

/// Laguerre weight s^g e^{-s} on (0, inf).
inline Gauss1D gauss_laguerre(double g, int n) {
  std::vector<double> a(static_cast<std::size_t>(n)), b(static_cast<std::size_t>(n));
  b[0] = std::tgamma(g + 1.0);
  for (int i = 0; i < n; ++i) a[static_cast<std::size_t>(i)] = 2.0 * i + g + 1.0;
  for (int i = 1; i < n; ++i) b[static_cast<std::size_t>(i)] = i * (i + g);
  return gauss_from_recurrence(a, b);
}

/// Probabilists' Hermite weight e^{-z^2/2}.
inline Gauss1D gauss_hermite_prob(int n) {
  Gauss1D gh = gauss_generalized_hermite(0.0, n);
  for (auto& x : gh.nodes) x *= std::sqrt(2.0);
  for (auto& w : gh.weights) w *= std::sqrt(2.0);
  return gh;
}

/// Double view of a context: roots, reflection data and multiplicities.
template <class S>
struct ContextView {
  int dim = 0;
  std::vector<std::vector<double>> positive;  // positive roots
  std::vector<double> k;                      // multiplicity per positive root
  double gamma = 0.0;

  explicit ContextView(const GroupContext<S>& ctx) {
    dim = ctx.dim();
    for (int i = 0; i < ctx.num_positive(); ++i) {
      std::vector<double> a(static_cast<std::size_t>(dim));
      for (int j = 0; j < dim; ++j)
        a[static_cast<std::size_t>(j)] = scalar_traits<S>::to_double(ctx.system.positive[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
      positive.push_back(std::move(a));
      k.push_back(to_double(ctx.k_of_positive(i)));
    }
    gamma = to_double(ctx.gamma());
  }

  double weight(const std::vector<double>& x) const {
    double w = 1.0;
    for (std::size_t i = 0; i < positive.size(); ++i) {
      double ip = 0;
      for (int j = 0; j < dim; ++j) ip += positive[i][static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
      w *= std::pow(std::fabs(ip), 2.0 * k[i]);
    }
    return w;
  }
};

/// Orthonormal basis (as rows) whose first `rank` vectors span the roots.
inline std::vector<std::vector<double>> span_adapted_frame(const std::vector<std::vector<double>>& roots, int dim,
                                                           int& rank_out) {
  std::vector<std::vector<double>> basis;
  auto project_out = [&](std::vector<double> v) {
    for (const auto& b : basis) {
      double ip = 0;
      for (int j = 0; j < dim; ++j) ip += b[static_cast<std::size_t>(j)] * v[static_cast<std::size_t>(j)];
      for (int j = 0; j < dim; ++j) v[static_cast<std::size_t>(j)] -= ip * b[static_cast<std::size_t>(j)];
    }
    return v;
  };
  auto norm = [&](const std::vector<double>& v) {
    double s = 0;
    for (double c : v) s += c * c;
    return std::sqrt(s);
  };
  for (const auto& r : roots) {
    auto v = project_out(r);
    double n = norm(v);
    if (n > 1e-10) {
      for (auto& c : v) c /= n;
      basis.push_back(v);
    }
  }
  rank_out = static_cast<int>(basis.size());
  // complete with standard vectors
  for (int j = 0; j < dim && static_cast<int>(basis.size()) < dim; ++j) {
    std::vector<double> e(static_cast<std::size_t>(dim), 0.0);
    e[static_cast<std::size_t>(j)] = 1.0;
    auto v = project_out(e);
    double n = norm(v);
    if (n > 1e-10) {
      for (auto& c : v) c /= n;
      basis.push_back(v);
    }
  }
  return basis;
}

/// Sector decomposition of the circle by the reflecting lines of a rank-2
/// system expressed in-plane, plus everything the angular Jacobi rules need.
struct PlanarSectors {
  std::vector<double> boundaries;          // sorted angles in [0, 2pi)
  std::vector<double> left_exponent;       // 2k of the line at the left edge of sector i
  std::vector<double> right_exponent;      // 2k of the line at the right edge
};

inline PlanarSectors planar_sectors(const std::vector<std::vector<double>>& roots2d, const std::vector<double>& k) {
  struct Line {
    double angle;  // in [0, pi)
    double expo;   // 2k
  };
  std::vector<Line> lines;
  for (std::size_t i = 0; i < roots2d.size(); ++i) {
    double phi = std::atan2(roots2d[i][1], roots2d[i][0]);
    double ang = phi + M_PI / 2.0;  // direction of the hyperplane
    while (ang >= M_PI) ang -= M_PI;
    while (ang < 0) ang += M_PI;
    bool merged = false;
    for (auto& l : lines)
      if (std::fabs(l.angle - ang) < 1e-12 || std::fabs(std::fabs(l.angle - ang) - M_PI) < 1e-12) {
        l.expo += 2.0 * k[i];
        merged = true;
        break;
      }
    if (!merged) lines.push_back({ang, 2.0 * k[i]});
  }
  std::sort(lines.begin(), lines.end(), [](const Line& a, const Line& b) { return a.angle < b.angle; });
  PlanarSectors out;
  for (const auto& l : lines) {
    out.boundaries.push_back(l.angle);
    out.boundaries.push_back(l.angle + M_PI);
  }
  std::sort(out.boundaries.begin(), out.boundaries.end());
  const std::size_t ns = out.boundaries.size();
  for (std::size_t s = 0; s < ns; ++s) {
    double left = out.boundaries[s];
    auto expo_of = [&](double ang) {
      while (ang >= M_PI) ang -= M_PI;
      for (const auto& l : lines)
        if (std::fabs(l.angle - ang) < 1e-9) return l.expo;
      return 0.0;
    };
    double right = (s + 1 < ns) ? out.boundaries[s + 1] : out.boundaries[0] + 2.0 * M_PI;
    out.left_exponent.push_back(expo_of(left));
    out.right_exponent.push_back(expo_of(right));
  }
  return out;
}

}  // namespace detail

/// Gauss rule for the measure w_k(x) e^{-|x|^2/2} dx.
///
/// rank one: Golub-Welsch from the generalized Hermite recurrence, exact for
/// polynomials up to degree 2*nodes-1 against the weight. rank two: polar
/// construction, Gauss-Laguerre radially (parameter gamma) and per-sector
/// Gauss-Jacobi in the angle with the |<a,x>|^{2k} edge singularities built
/// into the rule. Systems of rank <= 2 embedded in up to three ambient
/// dimensions are handled by rotating to a span-adapted frame and adding
/// plain Gaussian factors; full rank 3 is not supported.
template <class S>
QuadratureRule build_gaussian_wk_rule(const GroupContext<S>& ctx, int radial_nodes, int angular_nodes = 32) {
  detail::ContextView<S> view(ctx);
  const int N = view.dim;
  if (N > 3) throw UnsupportedDimensionError("gaussian-wk rules support ambient dimension <= 3");

  int rank = 0;
  auto frame = detail::span_adapted_frame(view.positive, N, rank);
  if (rank > 2)
    throw UnsupportedDimensionError("gaussian-wk rules support root-system rank <= 2");

  QuadratureRule rule;
  rule.measure = Measure::GaussianWk;

  // in-plane root data
  std::vector<std::vector<double>> plane_roots;
  for (std::size_t i = 0; i < view.positive.size(); ++i) {
    std::vector<double> pr(static_cast<std::size_t>(rank));
    for (int r = 0; r < rank; ++r) {
      double ip = 0;
      for (int j = 0; j < N; ++j) ip += frame[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] * view.positive[i][static_cast<std::size_t>(j)];
      pr[static_cast<std::size_t>(r)] = ip;
    }
    plane_roots.push_back(std::move(pr));
  }

  struct WeightedPoint {
    std::vector<double> coords;  // length `rank`
    double weight;               // includes w_k restricted to the span
  };
  std::vector<WeightedPoint> core;

  if (rank == 0) {
    core.push_back({{}, 1.0});
  } else if (rank == 1) {
    // w_k restricted to the line: const * |t|^{2 gamma}
    double c = 1.0;
    for (std::size_t i = 0; i < plane_roots.size(); ++i)
      c *= std::pow(std::fabs(plane_roots[i][0]), 2.0 * view.k[i]);
    auto gh = detail::gauss_generalized_hermite(view.gamma, radial_nodes);
    for (std::size_t i = 0; i < gh.nodes.size(); ++i) {
      double t = gh.nodes[i] * std::sqrt(2.0);
      double w = gh.weights[i] * std::pow(2.0, view.gamma + 0.5) * c;
      core.push_back({{t}, w});
    }
    rule.exactness_degree = 2 * radial_nodes - 1;
  } else {
    auto sectors = detail::planar_sectors(plane_roots, view.k);
    auto lag = detail::gauss_laguerre(view.gamma, radial_nodes);
    const std::size_t ns = sectors.boundaries.size();
    for (std::size_t s = 0; s < ns; ++s) {
      double thL = sectors.boundaries[s];
      double thR = (s + 1 < ns) ? sectors.boundaries[s + 1] : sectors.boundaries[0] + 2.0 * M_PI;
      double h = thR - thL;
      double a = sectors.right_exponent[s], b = sectors.left_exponent[s];
      auto gj = detail::gauss_jacobi(a, b, angular_nodes);
      for (std::size_t j = 0; j < gj.nodes.size(); ++j) {
        double th = thL + (gj.nodes[j] + 1.0) * h / 2.0;
        std::vector<double> dir = {std::cos(th), std::sin(th)};
        double wk_plane = 1.0;
        for (std::size_t i = 0; i < plane_roots.size(); ++i) {
          double ip = plane_roots[i][0] * dir[0] + plane_roots[i][1] * dir[1];
          wk_plane *= std::pow(std::fabs(ip), 2.0 * view.k[i]);
        }
        double edge = std::pow(th - thL, b) * std::pow(thR - th, a);
        double wj = std::pow(h / 2.0, a + b + 1.0) * gj.weights[j] * wk_plane / edge;
        // radial factor: r^{2 gamma + 1} e^{-r^2/2} dr = 2^gamma s^gamma e^{-s} ds
        for (std::size_t ri = 0; ri < lag.nodes.size(); ++ri) {
          double r = std::sqrt(2.0 * lag.nodes[ri]);
          double wr = std::pow(2.0, view.gamma) * lag.weights[ri];
          core.push_back({{r * dir[0], r * dir[1]}, wr * wj});
        }
      }
    }
  }

  // lift to the ambient space with Gaussian factors on the complement
  detail::Gauss1D gz;
  const int extra = N - rank;
  if (extra > 0) gz = detail::gauss_hermite_prob(std::max(radial_nodes / 2, 24));
  std::vector<std::size_t> idx(static_cast<std::size_t>(extra), 0);
  for (const auto& cp : core) {
    // iterate over the tensor grid of the complement
    std::function<void(int, std::vector<double>, double)> emit = [&](int level, std::vector<double> acc, double w) {
      if (level == extra) {
        std::vector<double> x(static_cast<std::size_t>(N), 0.0);
        for (int r = 0; r < rank; ++r)
          for (int j = 0; j < N; ++j) x[static_cast<std::size_t>(j)] += cp.coords[static_cast<std::size_t>(r)] * frame[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)];
        for (int e2 = 0; e2 < extra; ++e2)
          for (int j = 0; j < N; ++j)
            x[static_cast<std::size_t>(j)] += acc[static_cast<std::size_t>(e2)] * frame[static_cast<std::size_t>(rank + e2)][static_cast<std::size_t>(j)];
        rule.nodes.push_back(std::move(x));
        rule.weights.push_back(w);
        return;
      }
      for (std::size_t i = 0; i < gz.nodes.size(); ++i) {
        auto acc2 = acc;
        acc2.push_back(gz.nodes[i]);
        emit(level + 1, std::move(acc2), w * gz.weights[i]);
      }
    };
    emit(0, {}, cp.weight);
  }
  return rule;
}

/// Truncated-domain rule for w_k(x) dx. rank one: two-sided Gauss-Jacobi on
/// [0,L] with the x^{2k} factor built in; rank two: polar with a radial
/// Jacobi rule carrying r^{2 gamma + 1} and the sector angular rules.
template <class S>
QuadratureRule build_lebesgue_wk_rule(const GroupContext<S>& ctx, double L, int radial_nodes,
                                      int angular_nodes = 32) {
  detail::ContextView<S> view(ctx);
  const int N = view.dim;
  int rank = 0;
  auto frame = detail::span_adapted_frame(view.positive, N, rank);
  if (N != rank)
    throw UnsupportedDimensionError("truncated lebesgue-wk rules expect a full-rank system (rank one or two)");

  QuadratureRule rule;
  rule.measure = Measure::LebesgueWkTruncated;
  rule.truncation_radius = L;

  if (N == 1) {
    // integral of f(x) c |x|^{2k} over [-L, L], c from the root normalization
    double two_k = 2.0 * view.gamma;
    double c = std::pow(std::fabs(view.positive[0][0]), two_k);
    auto gj = detail::gauss_jacobi(0.0, two_k, radial_nodes);
    for (std::size_t i = 0; i < gj.nodes.size(); ++i) {
      double x = (gj.nodes[i] + 1.0) * L / 2.0;
      double w = gj.weights[i] * std::pow(L / 2.0, two_k + 1.0) * c;
      rule.nodes.push_back({x});
      rule.weights.push_back(w);
      rule.nodes.push_back({-x});
      rule.weights.push_back(w);
    }
    return rule;
  }
  if (N == 2) {
    auto sectors = detail::planar_sectors(view.positive, view.k);
    auto rad = detail::gauss_jacobi(0.0, 2.0 * view.gamma + 1.0, radial_nodes);
    const std::size_t ns = sectors.boundaries.size();
    for (std::size_t s = 0; s < ns; ++s) {
      double thL = sectors.boundaries[s];
      double thR = (s + 1 < ns) ? sectors.boundaries[s + 1] : sectors.boundaries[0] + 2.0 * M_PI;
      double h = thR - thL;
      double a = sectors.right_exponent[s], b = sectors.left_exponent[s];
      auto gj = detail::gauss_jacobi(a, b, angular_nodes);
      for (std::size_t j = 0; j < gj.nodes.size(); ++j) {
        double th = thL + (gj.nodes[j] + 1.0) * h / 2.0;
        std::vector<double> dir = {std::cos(th), std::sin(th)};
        double wk_plane = 1.0;
        for (std::size_t i = 0; i < view.positive.size(); ++i) {
          double ip = view.positive[i][0] * dir[0] + view.positive[i][1] * dir[1];
          wk_plane *= std::pow(std::fabs(ip), 2.0 * view.k[i]);
        }
        double edge = std::pow(th - thL, b) * std::pow(thR - th, a);
        double wj = std::pow(h / 2.0, a + b + 1.0) * gj.weights[j] * wk_plane / edge;
        for (std::size_t ri = 0; ri < rad.nodes.size(); ++ri) {
          // map radial [0, L]: r = L(t+1)/2, weight carries r^{2g+1} via (1+t)^{2g+1}
          double t = rad.nodes[ri];
          double r = L * (t + 1.0) / 2.0;
          double wr = rad.weights[ri] * std::pow(L / 2.0, 2.0 * view.gamma + 2.0);
          rule.nodes.push_back({r * dir[0], r * dir[1]});
          rule.weights.push_back(wr * wj);
        }
      }
    }
    return rule;
  }
  throw UnsupportedDimensionError("truncated lebesgue-wk rules support rank <= 2");
}

/// Plain Gauss-Jacobi rule on [-1,1] for (1-t)^a (1+t)^b dt.
inline QuadratureRule build_jacobi_rule(double a, double b, int nodes) {
  auto gj = detail::gauss_jacobi(a, b, nodes);
  QuadratureRule rule;
  rule.measure = Measure::Jacobi;
  rule.exactness_degree = 2 * nodes - 1;
  for (std::size_t i = 0; i < gj.nodes.size(); ++i) {
    rule.nodes.push_back({gj.nodes[i]});
    rule.weights.push_back(gj.weights[i]);
  }
  return rule;
}

/// Normalization c_k = integral of e^{-|x|^2/2} w_k.
inline double c_k_from_rule(const QuadratureRule& gaussian_wk) {
  double acc = 0;
  for (double w : gaussian_wk.weights) acc += w;
  return acc;
}

/// Rank-one closed form c_k = 2^{2k+1/2} Gamma(k+1/2) (the 2^k part comes
/// from the sqrt(2)-normalized root inside w_k).
inline double rank_one_c_k(double k) { return std::pow(2.0, 2.0 * k + 0.5) * std::tgamma(k + 0.5); }

/// Anti-symmetry of T against the weighted measure on gaussian-damped
/// polynomials f~ = f e^{-|x|^2/4}: since the damping commutes with the
/// reflection part, T_i f~ = (T_i f - x_i f/2) e^{-|x|^2/4} and the product
/// of two damped factors reproduces the GaussianWk measure exactly.
template <class S>
CheckReport check_antisymmetry(const DunklOps<S>& ops, const QuadratureRule& rule, int samples,
                               std::uint64_t seed, double tol = 1e-8) {
  CheckReport rep{"antisymmetry of T in the weighted space", "dunkl-antisymmetry", true, 0.0, tol, ""};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> c(-3, 3);
  const int N = ops.dim();
  for (int it = 0; it < samples; ++it) {
    MultiPoly<S> f(N), g(N);
    for (const auto& m : monomials_up_to_degree(N, 3)) {
      f.add_term(m, scalar_traits<S>::from_rational(Rational(c(rng))));
      g.add_term(m, scalar_traits<S>::from_rational(Rational(c(rng))));
    }
    for (int i = 0; i < N; ++i) {
      auto half_xi = MultiPoly<S>::variable(N, i) * scalar_traits<S>::from_rational(Rational(1, 2));
      auto tf = ops.apply_T(i, f) - half_xi * f;
      auto tg = ops.apply_T(i, g) - half_xi * g;
      double lhs = rule.integrate_real([&](const std::vector<double>& x) {
        return tf.template eval<double>(x) * g.template eval<double>(x);
      });
      double rhs = rule.integrate_real([&](const std::vector<double>& x) {
        return f.template eval<double>(x) * tg.template eval<double>(x);
      });
      double scale = std::max({1.0, std::fabs(lhs), std::fabs(rhs)});
      double err = std::fabs(lhs + rhs) / scale;
      rep.worst_error = std::max(rep.worst_error, err);
      if (err > tol && rep.pass) {
        rep.pass = false;
        rep.detail = "antisymmetry fails at sample " + std::to_string(it);
      }
    }
  }
  return rep;
}

/// [p,q]_k = c_k^{-1} integral of e^{-D/2}p e^{-D/2}q dGaussianWk, exact side
/// against quadrature on all monomial pairs up to degree_cap.
template <class S>
CheckReport check_macdonald(const DunklOps<S>& ops, const QuadratureRule& rule, int degree_cap,
                            double rel_tol = 1e-8, double abs_tol = 1e-10) {
  CheckReport rep{"pairing vs weighted integral", "macdonald-pairing-integral", true, 0.0, rel_tol, ""};
  const int N = ops.dim();
  const double ck = c_k_from_rule(rule);
  auto monos = monomials_up_to_degree(N, degree_cap);
  // precompute e^{-Delta/2} of every monomial and its values at the nodes
  std::vector<std::vector<double>> values;
  std::vector<MultiPoly<S>> polys;
  for (const auto& m : monos) {
    auto em = ops.exp_half_laplacian(MultiPoly<S>::monomial(m, scalar_traits<S>::one()), -1);
    std::vector<double> v(rule.size());
    for (std::size_t i = 0; i < rule.size(); ++i) v[i] = em.template eval<double>(rule.nodes[i]);
    values.push_back(std::move(v));
    polys.push_back(em);
  }
  for (std::size_t i = 0; i < monos.size(); ++i)
    for (std::size_t j = i; j < monos.size(); ++j) {
      S exact = ops.fischer_pair(MultiPoly<S>::monomial(monos[i], scalar_traits<S>::one()),
                                 MultiPoly<S>::monomial(monos[j], scalar_traits<S>::one()));
      double lhs = scalar_traits<S>::to_double(exact);
      double rhs = 0;
      for (std::size_t t = 0; t < rule.size(); ++t) rhs += rule.weights[t] * values[i][t] * values[j][t];
      rhs /= ck;
      double err = (lhs == 0.0) ? std::fabs(rhs) : std::fabs(rhs - lhs) / std::fabs(lhs);
      double tol = (lhs == 0.0) ? abs_tol : rel_tol;
      rep.worst_error = std::max(rep.worst_error, err);
      if (err > tol && rep.pass) {
        rep.pass = false;
        rep.detail = "worst pair " + MultiPoly<S>::monomial(monos[i], scalar_traits<S>::one()).str() + " , " +
                     MultiPoly<S>::monomial(monos[j], scalar_traits<S>::one()).str();
      }
    }
  return rep;
}

}  // namespace dunkl
