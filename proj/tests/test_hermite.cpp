#include "doctest.h"

#include "dunkl/hermite.hpp"

using namespace dunkl;
using P = MultiPoly<Sqrt2>;

namespace {

GroupContext<Sqrt2> rank_one_ctx(const Rational& k) {
  auto ctx = build_rank_one<Sqrt2>();
  ctx.set_multiplicity({k});
  return ctx;
}

// physicists' Hermite polynomials with exact coefficients, argument x/sqrt2
P hermite_classical_scaled(int n) {
  // build in the variable u, then substitute u = x/sqrt2 monomial-wise
  std::vector<std::vector<Rational>> h = {{1}, {0, 2}};  // H_0 = 1, H_1 = 2u
  for (int m = 2; m <= n; ++m) {
    std::vector<Rational> next(static_cast<std::size_t>(m + 1), Rational(0));
    for (std::size_t i = 0; i + 1 < h.back().size() + 1; ++i) {
      if (i < h.back().size()) next[i + 1] += 2 * h.back()[i];
    }
    for (std::size_t i = 0; i < h[h.size() - 2].size(); ++i) next[i] -= 2 * (m - 1) * h[h.size() - 2][i];
    h.push_back(std::move(next));
  }
  P out(1);
  Sqrt2 inv_sqrt2 = Sqrt2(1) / Sqrt2::sqrt2();
  Sqrt2 pw(1);
  for (std::size_t i = 0; i < h[static_cast<std::size_t>(n)].size(); ++i) {
    out.add_term(Monomial{static_cast<int>(i)}, Sqrt2(h[static_cast<std::size_t>(n)][i]) * pw);
    pw = pw * inv_sqrt2;
  }
  return out;
}

// Laguerre polynomial L_n^alpha(t) composed with t = x^2/2, exact
P laguerre_composed(int n, const Rational& alpha) {
  P out(1);
  for (int i = 0; i <= n; ++i) {
    // (-1)^i / i! * C(n + alpha, n - i) * (x^2/2)^i
    Rational binom = 1;
    for (int j = i + 1; j <= n; ++j) binom *= (alpha + j);
    Rational fact = 1;
    for (int j = 2; j <= n - i; ++j) fact *= j;
    binom /= fact;
    Rational ifact = 1;
    for (int j = 2; j <= i; ++j) ifact *= j;
    Rational coef = binom / ifact;
    if (i % 2 == 1) coef = -coef;
    coef /= rational_pow(Rational(2), static_cast<unsigned>(i));
    out.add_term(Monomial{2 * i}, scalar_traits<Sqrt2>::from_rational(coef));
  }
  return out;
}

}  // namespace

TEST_CASE("classical limit k = 0 recovers scaled Hermite polynomials") {
  auto ctx = rank_one_ctx(Rational(0));
  HermiteSystem<Sqrt2> sys(ctx, 8);
  for (int n = 0; n <= 8; ++n) {
    const auto& e = sys.degree(n)[0];
    CHECK(e.phi == P::monomial(Monomial{n}, Sqrt2(1)));
    // H_n = 2^{-n/2} Hhat_n(x/sqrt2); 2^{-n/2} in Q(sqrt2)
    Sqrt2 scale(1);
    Sqrt2 inv_sqrt2 = Sqrt2(1) / Sqrt2::sqrt2();
    for (int j = 0; j < n; ++j) scale = scale * inv_sqrt2;
    CHECK(e.h == hermite_classical_scaled(n) * scale);
  }
}

TEST_CASE("rank-one general k: Laguerre connection") {
  for (Rational k : {Rational(1, 2), Rational(5, 4)}) {
    auto ctx = rank_one_ctx(k);
    HermiteSystem<Sqrt2> sys(ctx, 7);
    for (int n = 0; 2 * n <= 7; ++n) {
      // H_{2n} = (-2)^n n! L_n^{k-1/2}(x^2/2)
      Rational c = rational_pow(Rational(-2), static_cast<unsigned>(n));
      for (int j = 2; j <= n; ++j) c *= j;
      auto expected = laguerre_composed(n, k - Rational(1, 2)) * scalar_traits<Sqrt2>::from_rational(c);
      CHECK(sys.degree(2 * n)[0].h == expected);
      if (2 * n + 1 <= 7) {
        auto odd = laguerre_composed(n, k + Rational(1, 2)) * P::variable(1, 0) *
                   scalar_traits<Sqrt2>::from_rational(c);
        CHECK(sys.degree(2 * n + 1)[0].h == odd);
      }
    }
    // phi_0 = 1, H_0 = 1
    CHECK(sys.degree(0)[0].h == P::constant(1, Sqrt2(1)));
  }
}

TEST_CASE("orthogonality, eigen-equations, parity, span") {
  for (auto [type, dim] : {std::pair{GroupType::A, 3}, {GroupType::B, 2}}) {
    auto ctx = build_standard<Sqrt2>(type, dim);
    std::vector<Rational> k(static_cast<std::size_t>(ctx.num_orbits()), Rational(1, 2));
    ctx.set_multiplicity(k);
    HermiteSystem<Sqrt2> sys(ctx, 4);
    CHECK(check_hermite_orthogonality(sys).pass);
    CHECK(check_hermite_eigen(sys).pass);
    CHECK(check_hermite_parity(sys).pass);
    CHECK(check_hermite_span(sys).pass);
    for (int n = 0; n <= 4; ++n)
      for (const auto& e : sys.degree(n)) {
        CHECK(e.norm_sq.sign() > 0);
        CHECK(e.phi.is_homogeneous());
      }
  }
  // B_2 with k = (1/2, 1/2): gamma = 2, harmonic eigenvalue |nu| + 2 + 1
  auto b2 = build_standard<Sqrt2>(GroupType::B, 2);
  b2.set_multiplicity({Rational(1, 2), Rational(1, 2)});
  CHECK(b2.gamma() == Rational(2));
}

TEST_CASE("rodrigues weak form") {
  // rank one, k = 0: H_1 = x and -e^{x^2/2} d/dx e^{-x^2/2} = x
  auto c0 = rank_one_ctx(Rational(0));
  DunklOps<Sqrt2> ops0(c0);
  auto damped = gaussian_damped_p_of_T(ops0, P::variable(1, 0));
  CHECK(damped == -P::variable(1, 0));
  // quadrature form at k = 1/2, rank one
  auto ctx = rank_one_ctx(Rational(1, 2));
  HermiteSystem<Sqrt2> sys(ctx, 4);
  auto rule = build_gaussian_wk_rule(ctx, 48);
  auto rep = check_rodrigues(sys, rule);
  CHECK(rep.pass);
  // B_2
  auto b2 = build_standard<Sqrt2>(GroupType::B, 2);
  b2.set_multiplicity({Rational(1, 2), Rational(1)});
  HermiteSystem<Sqrt2> sysb(b2, 3);
  auto ruleb = build_gaussian_wk_rule(b2, 32, 32);
  CHECK(check_rodrigues(sysb, ruleb).pass);
}

TEST_CASE("quadrature orthonormality of H under dm_k") {
  auto ctx = rank_one_ctx(Rational(3, 4));
  HermiteSystem<Sqrt2> sys(ctx, 6);
  auto rule = build_gaussian_wk_rule(ctx, 48);
  auto rep = check_hermite_quadrature_orthogonality(sys, rule);
  CHECK(rep.pass);
  CHECK(rep.worst_error < 1e-7);
  auto b2 = build_standard<Sqrt2>(GroupType::B, 2);
  b2.set_multiplicity({Rational(1, 2), Rational(1, 2)});
  HermiteSystem<Sqrt2> sysb(b2, 4);
  auto ruleb = build_gaussian_wk_rule(b2, 36, 36);
  CHECK(check_hermite_quadrature_orthogonality(sysb, ruleb).pass);
}

TEST_CASE("generating and mehler relations, rank one") {
  auto ctx = rank_one_ctx(Rational(1, 2));
  HermiteSystem<Sqrt2> sys(ctx, 30);
  KernelEvaluator<Sqrt2> ev(ctx, 40);
  // r -> 0 limit: both mehler sides collapse to E-independent 1
  auto rep0 = check_generating_and_mehler(sys, ev, {0.3}, {0.0}, 1e-6, 1e-8);
  CHECK(rep0.pass);
  // the headline configuration
  auto rep = check_generating_and_mehler(sys, ev, {0.7}, {-0.4}, 0.5, 1e-8);
  CHECK(rep.pass);
  // kernel expansion in the phi basis
  CHECK(check_kernel_basis_expansion(sys, ev, {0.7}, {0.6}).pass);
  CHECK(check_kernel_basis_expansion(sys, ev, {0.9}, {-0.8}).pass);
}

TEST_CASE("generating relation at y = 0") {
  auto ctx = rank_one_ctx(Rational(1));
  HermiteSystem<Sqrt2> sys(ctx, 10);
  KernelEvaluator<Sqrt2> ev(ctx, 40);
  // LHS = 1, RHS = H_0(x) phi_0(0) = 1 plus vanishing higher terms
  auto rep = check_generating_and_mehler(sys, ev, {0.5}, {0.0}, 1e-9, 1e-10);
  CHECK(rep.pass);
}
