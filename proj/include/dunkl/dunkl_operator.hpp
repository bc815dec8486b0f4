#pragma once

#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "dunkl/polynomial.hpp"
#include "dunkl/report.hpp"
#include "dunkl/root_system.hpp"

namespace dunkl {

/// Dunkl operator calculus bound to a group context with fixed
/// multiplicity: T_xi, the Laplacian, p(T), the Fischer-type pairing
/// [p,q]_k = (p(T)q)(0) and exponentials of the (degree-lowering)
/// Laplacian. All operations are pure; exact over the exact backend.
template <class S>
class DunklOps {
 public:
  using Poly = MultiPoly<S>;

  explicit DunklOps(const GroupContext<S>& ctx) : ctx_(&ctx) {
    for (int i = 0; i < ctx.num_positive(); ++i) {
      k_scalar_.push_back(scalar_traits<S>::from_rational(ctx.k_of_positive(i)));
    }
  }

  const GroupContext<S>& context() const { return *ctx_; }
  int dim() const { return ctx_->dim(); }

  /// T_xi p = d_xi p + sum_{a in R_+} k(a) <a,xi> (p - p∘sigma_a)/<a,x>.
  Poly apply_T(const Vec<S>& xi, const Poly& p) const {
    Poly out = p.partial_dir(xi);
    for (int i = 0; i < ctx_->num_positive(); ++i) {
      if (ctx_->k_of_positive(i) == 0) continue;
      const auto& alpha = ctx_->system.positive[static_cast<std::size_t>(i)];
      S factor = k_scalar_[static_cast<std::size_t>(i)] * inner(alpha, xi);
      if (scalar_traits<S>::is_zero(factor)) continue;
      Poly diff = p - p.compose_linear(ctx_->reflections[static_cast<std::size_t>(i)]);
      if (diff.is_zero()) continue;
      out += divide_by_linear(diff, alpha) * factor;
    }
    return out;
  }

  Poly apply_T(int i, const Poly& p) const {
    Vec<S> e(static_cast<std::size_t>(dim()), scalar_traits<S>::zero());
    e[static_cast<std::size_t>(i)] = scalar_traits<S>::one();
    return apply_T(e, p);
  }

  /// Dunkl Laplacian as the basis-independent sum of squares.
  Poly laplacian(const Poly& p) const {
    Poly out(dim());
    for (int i = 0; i < dim(); ++i) out += apply_T(i, apply_T(i, p));
    return out;
  }

  /// The alternative difference form Delta + 2 sum k(a) delta_a, with
  /// delta_a in the scale-invariant shape
  ///   delta_a f = [ <a,x> d_a f - (<a,a>/2) (f - f∘sigma_a) ] / <a,x>^2.
  /// Kept as a cross-check of `laplacian`, not as the primary path.
  Poly laplacian_difference_form(const Poly& p) const {
    Poly out(dim());
    for (int i = 0; i < dim(); ++i) out += p.partial(i).partial(i);
    for (int i = 0; i < ctx_->num_positive(); ++i) {
      if (ctx_->k_of_positive(i) == 0) continue;
      const auto& alpha = ctx_->system.positive[static_cast<std::size_t>(i)];
      Poly da = p.partial_dir(alpha);
      Poly numerator = MultiPoly<S>::linear_form(alpha) * da -
                       (inner(alpha, alpha) / S(2)) * (p - p.compose_linear(ctx_->reflections[static_cast<std::size_t>(i)]));
      Poly delta = divide_by_linear(divide_by_linear(numerator, alpha), alpha);
      out += delta * (S(2) * k_scalar_[static_cast<std::size_t>(i)]);
    }
    return out;
  }

  /// p(T) q: substitute T_i for x_i monomial-wise (order is irrelevant
  /// because the T_i commute).
  Poly apply_p_of_T(const Poly& p, const Poly& q) const {
    Poly out(dim());
    for (const auto& [mono, coef] : p.terms()) {
      Poly r = q;
      for (int i = 0; i < dim() && !r.is_zero(); ++i)
        for (int e = 0; e < mono[i] && !r.is_zero(); ++e) r = apply_T(i, r);
      out += r * coef;
    }
    return out;
  }

  /// [p, q]_k = (p(T) q)(0).
  S fischer_pair(const Poly& p, const Poly& q) const {
    S acc = scalar_traits<S>::zero();
    for (const auto& [mono, coef] : p.terms()) {
      Poly r = q;
      for (int i = 0; i < dim() && !r.is_zero(); ++i)
        for (int e = 0; e < mono[i] && !r.is_zero(); ++e) r = apply_T(i, r);
      acc += coef * r.coefficient(Monomial(dim()));
    }
    return acc;
  }

  /// Classical pairing [p,q]_0 = (p(∂)q)(0), independent of the context.
  static S classical_pair(const Poly& p, const Poly& q) {
    S acc = scalar_traits<S>::zero();
    for (const auto& [mono, coef] : p.terms()) {
      Poly r = q;
      for (int i = 0; i < p.dim() && !r.is_zero(); ++i)
        for (int e = 0; e < mono[i] && !r.is_zero(); ++e) r = r.partial(i);
      acc += coef * r.coefficient(Monomial(p.dim()));
    }
    return acc;
  }

  /// e^{sign * Delta_k / 2} p as the terminating series
  /// sum_j (sign/2)^j / j! Delta_k^j p.
  Poly exp_half_laplacian(const Poly& p, int sign = -1) const {
    Poly acc = p;
    Poly h = p;
    Rational c = 1;
    int steps = p.degree() / 2;
    for (int j = 1; j <= steps; ++j) {
      h = laplacian(h);
      if (h.is_zero()) break;
      c *= Rational(sign, 2 * j);
      acc += h * scalar_traits<S>::from_rational(c);
    }
    return acc;
  }

  /// Euler operator rho = sum x_i d_i; rho p = n p on homogeneous degree n.
  Poly euler(const Poly& p) const {
    Poly out(dim());
    for (const auto& [mono, coef] : p.terms()) out.add_term(mono, coef * S(mono.degree()));
    return out;
  }

  /// Group action g.p = p ∘ g^{-1} (orthogonal, so the inverse is the
  /// transpose).
  Poly act(const GroupElement<S>& g, const Poly& p) const {
    return p.compose_linear(g.matrix.transposed());
  }

  /// Gram column of the pairing at homogeneous degree n:
  /// out[mu] = [x^mu, q]_k for all |mu| = n. Each prefix T_1^{e_1}...T_i^{e_i} q
  /// is computed exactly once.
  std::map<Monomial, S> pair_against_all_monomials(int n, const Poly& q) const {
    std::map<Monomial, S> out;
    const int N = dim();
    std::function<void(int, const Poly&, Monomial)> rec = [&](int i, const Poly& r, Monomial mu) {
      int used = mu.degree();
      if (i == N - 1) {
        Poly cur = r;
        for (int e = 0; e < n - used && !cur.is_zero(); ++e) cur = apply_T(i, cur);
        mu.set(i, n - used);
        out[mu] = cur.coefficient(Monomial(N));
        return;
      }
      Poly cur = r;
      for (int e = 0; used + e <= n; ++e) {
        Monomial m2 = mu;
        m2.set(i, e);
        rec(i + 1, cur, m2);
        if (used + e < n) cur = apply_T(i, cur);
        if (cur.is_zero()) {
          // remaining exponents all pair to zero
          for (int e2 = e + 1; used + e2 <= n; ++e2) {
            Monomial m3 = mu;
            m3.set(i, e2);
            rec(i + 1, cur, m3);
          }
          break;
        }
      }
    };
    rec(0, q, Monomial(N));
    return out;
  }

 private:
  const GroupContext<S>* ctx_;
  std::vector<S> k_scalar_;
};

/// --- operator expressions -------------------------------------------------

/// Composable linear operator on polynomials; the CLI `apply` surface and a
/// convenience for building test batteries.
template <class S>
struct OperatorExpr {
  enum class Kind {
    DunklDirectional,  // T_xi
    Laplacian,         // Delta_k
    PolyOfT,           // p(T)
    ExpHalfLaplacian,  // e^{sign Delta_k/2}
    Euler,             // rho
    Multiply,          // multiplication by a fixed polynomial
    GroupAction,       // g .
    Compose,
    Scale,
    Sum,
  };

  Kind kind = Kind::Euler;
  Vec<S> direction;
  MultiPoly<S> poly;
  int sign = -1;
  int group_index = 0;
  S scale_factor = scalar_traits<S>::one();
  std::vector<OperatorExpr> children;

  static OperatorExpr dunkl(Vec<S> xi) {
    OperatorExpr e;
    e.kind = Kind::DunklDirectional;
    e.direction = std::move(xi);
    return e;
  }
  static OperatorExpr laplacian() {
    OperatorExpr e;
    e.kind = Kind::Laplacian;
    return e;
  }
  static OperatorExpr p_of_T(MultiPoly<S> p) {
    OperatorExpr e;
    e.kind = Kind::PolyOfT;
    e.poly = std::move(p);
    return e;
  }
  static OperatorExpr exp_half_laplacian(int sign) {
    OperatorExpr e;
    e.kind = Kind::ExpHalfLaplacian;
    e.sign = sign;
    return e;
  }
  static OperatorExpr euler() { return OperatorExpr{}; }
  static OperatorExpr multiply(MultiPoly<S> p) {
    OperatorExpr e;
    e.kind = Kind::Multiply;
    e.poly = std::move(p);
    return e;
  }
  static OperatorExpr group_action(int index) {
    OperatorExpr e;
    e.kind = Kind::GroupAction;
    e.group_index = index;
    return e;
  }
  static OperatorExpr compose(std::vector<OperatorExpr> chain) {
    OperatorExpr e;
    e.kind = Kind::Compose;
    e.children = std::move(chain);
    return e;
  }
  static OperatorExpr scale(S c, OperatorExpr inner_op) {
    OperatorExpr e;
    e.kind = Kind::Scale;
    e.scale_factor = std::move(c);
    e.children.push_back(std::move(inner_op));
    return e;
  }
  static OperatorExpr sum(std::vector<OperatorExpr> parts) {
    OperatorExpr e;
    e.kind = Kind::Sum;
    e.children = std::move(parts);
    return e;
  }

  MultiPoly<S> apply(const DunklOps<S>& ops, const MultiPoly<S>& p) const {
    switch (kind) {
      case Kind::DunklDirectional: return ops.apply_T(direction, p);
      case Kind::Laplacian: return ops.laplacian(p);
      case Kind::PolyOfT: return ops.apply_p_of_T(poly, p);
      case Kind::ExpHalfLaplacian: return ops.exp_half_laplacian(p, sign);
      case Kind::Euler: return ops.euler(p);
      case Kind::Multiply: return poly * p;
      case Kind::GroupAction: return ops.act(ops.context().group[static_cast<std::size_t>(group_index)], p);
      case Kind::Compose: {
        MultiPoly<S> r = p;
        for (auto it = children.rbegin(); it != children.rend(); ++it) r = it->apply(ops, r);
        return r;
      }
      case Kind::Scale: return children.front().apply(ops, p) * scale_factor;
      case Kind::Sum: {
        MultiPoly<S> r(p.dim());
        for (const auto& c : children) r += c.apply(ops, p);
        return r;
      }
    }
    throw std::logic_error("unreachable");
  }
};

/// --- structural identity checks -------------------------------------------

/// sl(2) triple E = |x|^2/2, F = -Delta_k/2, H = rho + (gamma + N/2):
/// verifies [H,E] = 2E, [H,F] = -2F, [E,F] = H on all monomials up to
/// degree_cap. Exact on the exact backend; float tolerance 1e-9 otherwise.
template <class S>
CheckReport sl2_bracket_check(const DunklOps<S>& ops, int degree_cap) {
  CheckReport rep{"sl2 triple brackets", "sl2-brackets", true, 0.0,
                  scalar_traits<S>::exact ? 0.0 : 1e-9, ""};
  const int N = ops.dim();
  const S half = scalar_traits<S>::from_rational(Rational(1, 2));
  const S h0 = scalar_traits<S>::from_rational(ops.context().gamma() + Rational(N, 2));
  auto E = [&](const MultiPoly<S>& p) { return MultiPoly<S>::squared_norm(N) * p * half; };
  auto F = [&](const MultiPoly<S>& p) { return ops.laplacian(p) * (-half); };
  auto H = [&](const MultiPoly<S>& p) { return ops.euler(p) + p * h0; };
  for (const auto& m : monomials_up_to_degree(N, degree_cap)) {
    auto p = MultiPoly<S>::monomial(m, scalar_traits<S>::one());
    struct Item {
      const char* label;
      MultiPoly<S> lhs, rhs;
    };
    Item items[] = {
        {"[H,E]=2E", H(E(p)) - E(H(p)), S(2) * E(p)},
        {"[H,F]=-2F", H(F(p)) - F(H(p)), S(-2) * F(p)},
        {"[E,F]=H", E(F(p)) - F(E(p)), H(p)},
    };
    for (auto& it : items) {
      double err = it.lhs.max_coeff_distance(it.rhs);
      rep.worst_error = std::max(rep.worst_error, err);
      bool ok = scalar_traits<S>::exact ? (it.lhs == it.rhs) : (err <= rep.tolerance);
      if (!ok && rep.pass) {
        rep.pass = false;
        rep.detail = std::string(it.label) + " fails on monomial " + p.str();
      }
    }
  }
  return rep;
}

namespace detail {

template <class S>
Vec<S> random_rational_direction(std::mt19937_64& rng, int dim) {
  std::uniform_int_distribution<int> v(-3, 3);
  Vec<S> xi(static_cast<std::size_t>(dim), scalar_traits<S>::zero());
  bool nonzero = false;
  for (auto& c : xi) {
    int val = v(rng);
    c = scalar_traits<S>::from_rational(Rational(val));
    nonzero = nonzero || val != 0;
  }
  if (!nonzero) xi[0] = scalar_traits<S>::one();
  return xi;
}

template <class S>
MultiPoly<S> random_rational_poly(std::mt19937_64& rng, int dim, int max_degree, int terms) {
  std::uniform_int_distribution<int> num(-6, 6), den(1, 4), deg(0, max_degree);
  MultiPoly<S> p(dim);
  for (int t = 0; t < terms; ++t) {
    Monomial m(dim);
    int budget = deg(rng);
    for (int i = 0; i < dim && budget > 0; ++i) {
      std::uniform_int_distribution<int> part(0, budget);
      int e = part(rng);
      m.set(i, e);
      budget -= e;
    }
    p.add_term(m, scalar_traits<S>::from_rational(Rational(num(rng), den(rng))));
  }
  return p;
}

}  // namespace detail

/// T_xi T_eta = T_eta T_xi on all monomials up to degree_cap, over
/// `direction_pairs` random rational direction pairs.
template <class S>
CheckReport check_commutativity(const DunklOps<S>& ops, int degree_cap, int direction_pairs,
                                std::uint64_t seed) {
  CheckReport rep{"dunkl operators commute", "dunkl-commutativity", true, 0.0,
                  scalar_traits<S>::exact ? 0.0 : 1e-9, ""};
  std::mt19937_64 rng(seed);
  const int N = ops.dim();
  auto monos = monomials_up_to_degree(N, degree_cap);
  for (int pairi = 0; pairi < direction_pairs; ++pairi) {
    auto xi = detail::random_rational_direction<S>(rng, N);
    auto eta = detail::random_rational_direction<S>(rng, N);
    for (const auto& m : monos) {
      auto p = MultiPoly<S>::monomial(m, scalar_traits<S>::one());
      auto ab = ops.apply_T(xi, ops.apply_T(eta, p));
      auto ba = ops.apply_T(eta, ops.apply_T(xi, p));
      double err = ab.max_coeff_distance(ba);
      rep.worst_error = std::max(rep.worst_error, err);
      bool ok = scalar_traits<S>::exact ? (ab == ba) : (err <= rep.tolerance);
      if (!ok && rep.pass) {
        rep.pass = false;
        rep.detail = "fails on monomial " + p.str();
      }
    }
  }
  return rep;
}

/// g ∘ T_xi ∘ g^{-1} = T_{g xi} on random (g, xi, p).
template <class S>
CheckReport check_equivariance_T(const DunklOps<S>& ops, int samples, std::uint64_t seed) {
  CheckReport rep{"dunkl operator equivariance", "dunkl-equivariance", true, 0.0,
                  scalar_traits<S>::exact ? 0.0 : 1e-9, ""};
  std::mt19937_64 rng(seed);
  const auto& ctx = ops.context();
  std::uniform_int_distribution<std::size_t> gi(0, ctx.group.size() - 1);
  for (int it = 0; it < samples; ++it) {
    const auto& g = ctx.group[gi(rng)];
    auto xi = detail::random_rational_direction<S>(rng, ctx.dim());
    auto p = detail::random_rational_poly<S>(rng, ctx.dim(), 5, 5);
    GroupElement<S> ginv{g.matrix.transposed(), g.word_length};
    auto lhs = ops.act(g, ops.apply_T(xi, ops.act(ginv, p)));
    auto rhs = ops.apply_T(g.matrix.apply(xi), p);
    double err = lhs.max_coeff_distance(rhs);
    rep.worst_error = std::max(rep.worst_error, err);
    bool ok = scalar_traits<S>::exact ? (lhs == rhs) : (err <= rep.tolerance);
    if (!ok && rep.pass) {
      rep.pass = false;
      rep.detail = "sample " + std::to_string(it);
    }
  }
  return rep;
}

/// Product rule T_xi(fg) = T_xi f g + f T_xi g for G-invariant f.
template <class S>
CheckReport check_product_rule(const DunklOps<S>& ops, int samples, std::uint64_t seed) {
  CheckReport rep{"product rule with invariant factor", "dunkl-product-rule", true, 0.0,
                  scalar_traits<S>::exact ? 0.0 : 1e-9, ""};
  std::mt19937_64 rng(seed);
  const auto& ctx = ops.context();
  const int N = ctx.dim();
  std::vector<MultiPoly<S>> invariants = {MultiPoly<S>::constant(N, scalar_traits<S>::one()),
                                          MultiPoly<S>::squared_norm(N)};
  if (ctx.system.type == GroupType::A && N >= 2) {
    MultiPoly<S> e1(N), e2(N);
    for (int i = 0; i < N; ++i) e1.add_term(Monomial(N).raised(i), scalar_traits<S>::one());
    for (int i = 0; i < N; ++i)
      for (int j = i + 1; j < N; ++j) {
        Monomial m(N);
        m.set(i, 1);
        m.set(j, 1);
        e2.add_term(m, scalar_traits<S>::one());
      }
    invariants.push_back(e1);
    invariants.push_back(e2);
  }
  for (const auto& f : invariants)
    for (int it = 0; it < samples; ++it) {
      auto g = detail::random_rational_poly<S>(rng, N, 4, 5);
      auto xi = detail::random_rational_direction<S>(rng, N);
      auto lhs = ops.apply_T(xi, f * g);
      auto rhs = ops.apply_T(xi, f) * g + f * ops.apply_T(xi, g);
      double err = lhs.max_coeff_distance(rhs);
      rep.worst_error = std::max(rep.worst_error, err);
      bool ok = scalar_traits<S>::exact ? (lhs == rhs) : (err <= rep.tolerance);
      if (!ok && rep.pass) {
        rep.pass = false;
        rep.detail = "invariant factor " + f.str();
      }
    }
  return rep;
}

/// Sum of squares vs difference form of the Laplacian; G-invariance of it.
template <class S>
CheckReport check_laplacian_consistency(const DunklOps<S>& ops, int degree_cap) {
  CheckReport rep{"laplacian forms agree", "laplacian-difference-form", true, 0.0,
                  scalar_traits<S>::exact ? 0.0 : 1e-9, ""};
  const int N = ops.dim();
  for (const auto& m : monomials_up_to_degree(N, degree_cap)) {
    auto p = MultiPoly<S>::monomial(m, scalar_traits<S>::one());
    auto a = ops.laplacian(p);
    auto b = ops.laplacian_difference_form(p);
    double err = a.max_coeff_distance(b);
    rep.worst_error = std::max(rep.worst_error, err);
    bool ok = scalar_traits<S>::exact ? (a == b) : (err <= rep.tolerance);
    if (!ok && rep.pass) {
      rep.pass = false;
      rep.detail = "fails on monomial " + p.str();
    }
  }
  return rep;
}

/// Adjointness [x_i p, q]_k = [p, T_i q]_k and G-invariance of the pairing.
template <class S>
CheckReport check_pairing_adjointness(const DunklOps<S>& ops, int samples, std::uint64_t seed) {
  CheckReport rep{"pairing adjointness and invariance", "pairing-adjointness", true, 0.0,
                  scalar_traits<S>::exact ? 0.0 : 1e-9, ""};
  std::mt19937_64 rng(seed);
  const auto& ctx = ops.context();
  const int N = ctx.dim();
  std::uniform_int_distribution<std::size_t> gi(0, ctx.group.size() - 1);
  for (int it = 0; it < samples; ++it) {
    auto p = detail::random_rational_poly<S>(rng, N, 5, 4);
    auto q = detail::random_rational_poly<S>(rng, N, 5, 4);
    for (int i = 0; i < N; ++i) {
      S a = ops.fischer_pair(MultiPoly<S>::variable(N, i) * p, q);
      S b = ops.fischer_pair(p, ops.apply_T(i, q));
      double err = scalar_traits<S>::abs_double(a - b);
      rep.worst_error = std::max(rep.worst_error, err);
      bool ok = scalar_traits<S>::exact ? scalar_traits<S>::is_zero(a - b) : (err <= rep.tolerance);
      if (!ok && rep.pass) {
        rep.pass = false;
        rep.detail = "adjointness sample " + std::to_string(it);
      }
    }
    const auto& g = ctx.group[gi(rng)];
    S a = ops.fischer_pair(ops.act(g, p), ops.act(g, q));
    S b = ops.fischer_pair(p, q);
    double err = scalar_traits<S>::abs_double(a - b);
    rep.worst_error = std::max(rep.worst_error, err);
    bool ok = scalar_traits<S>::exact ? scalar_traits<S>::is_zero(a - b) : (err <= rep.tolerance);
    if (!ok && rep.pass) {
      rep.pass = false;
      rep.detail = "pairing invariance sample " + std::to_string(it);
    }
  }
  return rep;
}

/// Positive minimum principle of the Laplacian on p = q^2 |x - x0|^2
/// batteries: Delta_k p(x0) >= -1e-12 at regular points x0 with p(x0) = 0.
template <class S>
CheckReport check_minimum_principle(const DunklOps<S>& ops, int samples, std::uint64_t seed) {
  CheckReport rep{"positive minimum principle", "laplacian-minimum-principle", true, 0.0, 1e-12, ""};
  std::mt19937_64 rng(seed);
  const auto& ctx = ops.context();
  const int N = ctx.dim();
  std::uniform_int_distribution<int> num(-4, 4), den(2, 5);
  int done = 0;
  while (done < samples) {
    std::vector<Rational> x0(static_cast<std::size_t>(N));
    for (auto& c : x0) c = Rational(num(rng), den(rng));
    // keep away from every reflecting hyperplane
    bool regular = true;
    std::vector<double> x0d(static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i) x0d[static_cast<std::size_t>(i)] = to_double(x0[static_cast<std::size_t>(i)]);
    for (int r = 0; r < ctx.num_positive() && regular; ++r) {
      double ip = 0;
      for (int j = 0; j < N; ++j)
        ip += scalar_traits<S>::to_double(ctx.system.positive[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)]) * x0d[static_cast<std::size_t>(j)];
      regular = std::fabs(ip) > 1e-3;
    }
    if (!regular) continue;
    ++done;
    auto q = detail::random_rational_poly<S>(rng, N, 2, 3);
    MultiPoly<S> shift(N);
    for (int i = 0; i < N; ++i) {
      auto d = MultiPoly<S>::variable(N, i) -
               MultiPoly<S>::constant(N, scalar_traits<S>::from_rational(x0[static_cast<std::size_t>(i)]));
      shift += d * d;
    }
    auto p = q * q * shift;
    double v = ops.laplacian(p).template eval<double>(x0d);
    rep.worst_error = std::max(rep.worst_error, -v);
    if (v < -1e-12 && rep.pass) {
      rep.pass = false;
      rep.detail = "negative laplacian at a zero of a nonnegative polynomial";
    }
  }
  return rep;
}

/// [x_i, Delta_k/2] = -T_i on all monomials up to degree_cap.
template <class S>
CheckReport commutator_xi_delta_check(const DunklOps<S>& ops, int degree_cap) {
  CheckReport rep{"coordinate/Laplacian commutator", "xi-delta-commutator", true, 0.0,
                  scalar_traits<S>::exact ? 0.0 : 1e-9, ""};
  const int N = ops.dim();
  const S half = scalar_traits<S>::from_rational(Rational(1, 2));
  for (const auto& m : monomials_up_to_degree(N, degree_cap)) {
    auto p = MultiPoly<S>::monomial(m, scalar_traits<S>::one());
    for (int i = 0; i < N; ++i) {
      auto xi = MultiPoly<S>::variable(N, i);
      auto lhs = (xi * (ops.laplacian(p) * half)) - ops.laplacian(xi * p) * half;
      auto rhs = -ops.apply_T(i, p);
      double err = lhs.max_coeff_distance(rhs);
      rep.worst_error = std::max(rep.worst_error, err);
      bool ok = scalar_traits<S>::exact ? (lhs == rhs) : (err <= rep.tolerance);
      if (!ok && rep.pass) {
        rep.pass = false;
        rep.detail = "fails at i=" + std::to_string(i + 1) + ", monomial " + p.str();
      }
    }
  }
  return rep;
}

}  // namespace dunkl
