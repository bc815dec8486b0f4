#include "doctest.h"

#include <random>

#include "dunkl/dunkl_operator.hpp"

using namespace dunkl;
using P = MultiPoly<Sqrt2>;

namespace {

Rational random_k(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(0, 12), den(1, 4);
  return Rational(num(rng), den(rng));
}

Vec<Sqrt2> random_direction(std::mt19937_64& rng, int dim) {
  std::uniform_int_distribution<int> v(-3, 3);
  Vec<Sqrt2> xi(static_cast<std::size_t>(dim));
  bool nonzero = false;
  for (auto& c : xi) {
    int val = v(rng);
    c = Sqrt2(val);
    nonzero = nonzero || val != 0;
  }
  if (!nonzero) xi[0] = Sqrt2(1);
  return xi;
}

P random_poly(std::mt19937_64& rng, int dim, int max_degree, int terms) {
  std::uniform_int_distribution<int> num(-6, 6), den(1, 4), deg(0, max_degree);
  P p(dim);
  for (int t = 0; t < terms; ++t) {
    Monomial m(dim);
    int budget = deg(rng);
    for (int i = 0; i < dim && budget > 0; ++i) {
      std::uniform_int_distribution<int> part(0, budget);
      int e = part(rng);
      m.set(i, e);
      budget -= e;
    }
    p.add_term(m, Sqrt2(Rational(num(rng), den(rng))));
  }
  return p;
}

GroupContext<Sqrt2> rank_one_ctx(const Rational& k) {
  auto ctx = build_rank_one<Sqrt2>();
  ctx.set_multiplicity({k});
  return ctx;
}

}  // namespace

TEST_CASE("rank-one Dunkl operator on low monomials") {
  for (Rational k : {Rational(0), Rational(1, 2), Rational(2), Rational(3, 4)}) {
    auto ctx = rank_one_ctx(k);
    DunklOps<Sqrt2> ops(ctx);
    P x = P::variable(1, 0);
    // T x = 1 + 2k
    CHECK(ops.apply_T(0, x) == P::constant(1, scalar_traits<Sqrt2>::from_rational(1 + 2 * k)));
    // T x^2 = 2x  (even part kills the difference quotient)
    CHECK(ops.apply_T(0, x * x) == Sqrt2(2) * x);
    // T x^3 = (3 + 2k) x^2
    CHECK(ops.apply_T(0, x * x * x) == scalar_traits<Sqrt2>::from_rational(3 + 2 * k) * (x * x));
    // Delta_k x^2 = 2 (1 + 2k)
    CHECK(ops.laplacian(x * x) == P::constant(1, scalar_traits<Sqrt2>::from_rational(2 * (1 + 2 * k))));
    CHECK(ops.laplacian(P::constant(1, Sqrt2(7))).is_zero());
  }
}

TEST_CASE("classical limit k = 0") {
  auto ctx = build_standard<Sqrt2>(GroupType::A, 3);
  ctx.set_multiplicity({Rational(0)});
  DunklOps<Sqrt2> ops(ctx);
  // Delta |x|^2 = 2N
  CHECK(ops.laplacian(P::squared_norm(3)) == P::constant(3, Sqrt2(6)));
  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 10; ++rep) {
    P p = random_poly(rng, 3, 5, 6);
    auto xi = random_direction(rng, 3);
    CHECK(ops.apply_T(xi, p) == p.partial_dir(xi));
  }
}

TEST_CASE("T is homogeneous of degree -1") {
  auto ctx = build_standard<Sqrt2>(GroupType::B, 2);
  ctx.set_multiplicity({Rational(1, 2), Rational(5, 3)});
  DunklOps<Sqrt2> ops(ctx);
  for (const auto& m : monomials_up_to_degree(2, 6)) {
    P p = P::monomial(m, Sqrt2(1));
    P tp = ops.apply_T(0, p);
    if (m.degree() == 0)
      CHECK(tp.is_zero());
    else if (!tp.is_zero()) {
      CHECK(tp.is_homogeneous());
      CHECK(tp.degree() == m.degree() - 1);
    }
  }
}

TEST_CASE("commutativity T_xi T_eta = T_eta T_xi") {
  std::mt19937_64 rng(41);
  for (auto [type, dim] : {std::pair{GroupType::A, 3}, {GroupType::B, 2}}) {
    auto ctx = build_standard<Sqrt2>(type, dim);
    std::vector<Rational> k(static_cast<std::size_t>(ctx.num_orbits()));
    for (auto& v : k) v = random_k(rng);
    ctx.set_multiplicity(k);
    DunklOps<Sqrt2> ops(ctx);
    for (int rep = 0; rep < 3; ++rep) {
      auto xi = random_direction(rng, ctx.dim());
      auto eta = random_direction(rng, ctx.dim());
      for (const auto& m : monomials_up_to_degree(ctx.dim(), 4)) {
        P p = P::monomial(m, Sqrt2(1));
        CHECK(ops.apply_T(xi, ops.apply_T(eta, p)) == ops.apply_T(eta, ops.apply_T(xi, p)));
      }
    }
  }
}

TEST_CASE("equivariance g T_xi g^{-1} = T_{g xi}") {
  std::mt19937_64 rng(43);
  auto ctx = build_standard<Sqrt2>(GroupType::B, 2);
  ctx.set_multiplicity({random_k(rng), random_k(rng)});
  DunklOps<Sqrt2> ops(ctx);
  std::uniform_int_distribution<std::size_t> gi(0, ctx.group.size() - 1);
  for (int rep = 0; rep < 10; ++rep) {
    const auto& g = ctx.group[gi(rng)];
    auto xi = random_direction(rng, 2);
    P p = random_poly(rng, 2, 5, 5);
    auto gxi = g.matrix.apply(xi);
    P lhs = ops.act(g, ops.apply_T(xi, ops.act(GroupElement<Sqrt2>{g.matrix.transposed(), 0}, p)));
    CHECK(lhs == ops.apply_T(gxi, p));
  }
}

TEST_CASE("product rule with a G-invariant factor") {
  std::mt19937_64 rng(47);
  auto ctx = build_standard<Sqrt2>(GroupType::A, 3);
  ctx.set_multiplicity({Rational(2, 3)});
  DunklOps<Sqrt2> ops(ctx);
  // invariants of S_3: 1, |x|^2, elementary symmetric e1, e2
  std::vector<P> invariants = {
      P::constant(3, Sqrt2(1)),
      P::squared_norm(3),
      parse_poly<Sqrt2>("x1 + x2 + x3", 3),
      parse_poly<Sqrt2>("x1 x2 + x1 x3 + x2 x3", 3),
  };
  for (const auto& f : invariants) {
    for (int rep = 0; rep < 4; ++rep) {
      P g = random_poly(rng, 3, 4, 5);
      auto xi = random_direction(rng, 3);
      CHECK(ops.apply_T(xi, f * g) == ops.apply_T(xi, f) * g + f * ops.apply_T(xi, g));
    }
  }
}

TEST_CASE("Laplacian: sum of squares equals the difference form; G-invariance") {
  std::mt19937_64 rng(53);
  for (auto [type, dim] : {std::pair{GroupType::A, 3}, {GroupType::B, 2}}) {
    auto ctx = build_standard<Sqrt2>(type, dim);
    std::vector<Rational> k(static_cast<std::size_t>(ctx.num_orbits()));
    for (auto& v : k) v = random_k(rng);
    ctx.set_multiplicity(k);
    DunklOps<Sqrt2> ops(ctx);
    for (const auto& m : monomials_up_to_degree(ctx.dim(), 6)) {
      P p = P::monomial(m, Sqrt2(1));
      CHECK(ops.laplacian(p) == ops.laplacian_difference_form(p));
    }
    std::uniform_int_distribution<std::size_t> gi(0, ctx.group.size() - 1);
    for (int rep = 0; rep < 6; ++rep) {
      const auto& g = ctx.group[gi(rng)];
      P p = random_poly(rng, ctx.dim(), 5, 5);
      CHECK(ops.act(g, ops.laplacian(p)) == ops.laplacian(ops.act(g, p)));
    }
  }
}

TEST_CASE("p(T) substitution") {
  auto ctx = rank_one_ctx(Rational(1, 2));
  DunklOps<Sqrt2> ops(ctx);
  P x = P::variable(1, 0);
  P q = x * x * x;
  CHECK(ops.apply_p_of_T(x, q) == ops.apply_T(0, q));
  CHECK(ops.apply_p_of_T(P::constant(1, Sqrt2(1)), q) == q);
  auto b2 = build_standard<Sqrt2>(GroupType::B, 2);
  b2.set_multiplicity({Rational(1, 3), Rational(1)});
  DunklOps<Sqrt2> ops2(b2);
  P q2 = parse_poly<Sqrt2>("x1^2 x2^2 - x2^3", 2);
  CHECK(ops2.apply_p_of_T(P::squared_norm(2), q2) == ops2.laplacian(q2));
}

TEST_CASE("Fischer pairing basics and adjointness") {
  std::mt19937_64 rng(59);
  for (Rational k : {Rational(0), Rational(1, 2), Rational(7, 4)}) {
    auto ctx = rank_one_ctx(k);
    DunklOps<Sqrt2> ops(ctx);
    P x = P::variable(1, 0);
    CHECK(ops.fischer_pair(x, x) == scalar_traits<Sqrt2>::from_rational(1 + 2 * k));
    CHECK(ops.fischer_pair(x * x, x * x) == scalar_traits<Sqrt2>::from_rational(2 * (1 + 2 * k)));
    CHECK(ops.fischer_pair(x, x * x).is_zero());  // degree mismatch
  }
  auto ctx = build_standard<Sqrt2>(GroupType::B, 2);
  ctx.set_multiplicity({Rational(1, 2), Rational(3, 2)});
  DunklOps<Sqrt2> ops(ctx);
  for (int rep = 0; rep < 12; ++rep) {
    P p = random_poly(rng, 2, 5, 4);
    P q = random_poly(rng, 2, 5, 4);
    // adjointness [x_i p, q]_k = [p, T_i q]_k
    for (int i = 0; i < 2; ++i) {
      P xi = P::variable(2, i);
      CHECK(ops.fischer_pair(xi * p, q) == ops.fischer_pair(p, ops.apply_T(i, q)));
    }
    // symmetry
    CHECK(ops.fischer_pair(p, q) == ops.fischer_pair(q, p));
  }
  // G-invariance of the pairing
  std::uniform_int_distribution<std::size_t> gi(0, ctx.group.size() - 1);
  for (int rep = 0; rep < 8; ++rep) {
    const auto& g = ctx.group[gi(rng)];
    P p = random_poly(rng, 2, 4, 4);
    P q = random_poly(rng, 2, 4, 4);
    CHECK(ops.fischer_pair(ops.act(g, p), ops.act(g, q)) == ops.fischer_pair(p, q));
  }
}

TEST_CASE("pair_against_all_monomials matches per-pair evaluation") {
  auto ctx = build_standard<Sqrt2>(GroupType::A, 3);
  ctx.set_multiplicity({Rational(3, 2)});
  DunklOps<Sqrt2> ops(ctx);
  std::mt19937_64 rng(61);
  P q = random_poly(rng, 3, 4, 6);
  for (int n = 0; n <= 4; ++n) {
    auto col = ops.pair_against_all_monomials(n, q);
    for (const auto& mu : monomials_of_degree(3, n)) {
      CHECK(col.at(mu) == ops.fischer_pair(P::monomial(mu, Sqrt2(1)), q));
    }
  }
}

TEST_CASE("exponential of the half Laplacian") {
  auto ctx = rank_one_ctx(Rational(5, 6));
  DunklOps<Sqrt2> ops(ctx);
  P x = P::variable(1, 0);
  // degree <= 1 untouched
  CHECK(ops.exp_half_laplacian(x) == x);
  CHECK(ops.exp_half_laplacian(P::constant(1, Sqrt2(3))) == P::constant(1, Sqrt2(3)));
  // x^2 -> x^2 - (1 + 2k)
  Rational k(5, 6);
  CHECK(ops.exp_half_laplacian(x * x) == x * x - P::constant(1, scalar_traits<Sqrt2>::from_rational(1 + 2 * k)));
  // inverse pair on random polynomials
  std::mt19937_64 rng(67);
  auto b2 = build_standard<Sqrt2>(GroupType::B, 2);
  b2.set_multiplicity({Rational(1, 2), Rational(2)});
  DunklOps<Sqrt2> ops2(b2);
  for (int rep = 0; rep < 15; ++rep) {
    P p = random_poly(rng, 2, 6, 6);
    CHECK(ops2.exp_half_laplacian(ops2.exp_half_laplacian(p, -1), +1) == p);
  }
}

TEST_CASE("sl(2) bracket check") {
  auto a2 = build_standard<Sqrt2>(GroupType::A, 3);
  a2.set_multiplicity({Rational(1)});
  DunklOps<Sqrt2> ops(a2);
  auto rep = sl2_bracket_check(ops, 4);
  CHECK(rep.pass);
  // [E,F] 1 = H 1 = (gamma + N/2) on constants
  const Sqrt2 h0 = scalar_traits<Sqrt2>::from_rational(a2.gamma() + Rational(3, 2));
  P one = P::constant(3, Sqrt2(1));
  P ef = P::squared_norm(3) * (ops.laplacian(one) * Sqrt2(Rational(-1, 2))) * Sqrt2(Rational(1, 2)) -
         ops.laplacian(P::squared_norm(3) * one * Sqrt2(Rational(1, 2))) * Sqrt2(Rational(-1, 2));
  CHECK(ef == one * h0);
  // classical case
  auto cl = build_standard<Sqrt2>(GroupType::B, 2);
  cl.set_multiplicity({Rational(0), Rational(0)});
  DunklOps<Sqrt2> ops0(cl);
  CHECK(sl2_bracket_check(ops0, 5).pass);
}

TEST_CASE("commutator [x_i, Delta_k/2] = -T_i") {
  auto ctx = rank_one_ctx(Rational(1, 3));
  DunklOps<Sqrt2> ops(ctx);
  CHECK(commutator_xi_delta_check(ops, 5).pass);
  auto b2 = build_standard<Sqrt2>(GroupType::B, 2);
  b2.set_multiplicity({Rational(1, 2), Rational(1, 2)});
  DunklOps<Sqrt2> ops2(b2);
  CHECK(commutator_xi_delta_check(ops2, 5).pass);
}

TEST_CASE("operator expressions compose") {
  auto ctx = rank_one_ctx(Rational(1, 2));
  DunklOps<Sqrt2> ops(ctx);
  P x = P::variable(1, 0);
  using E = OperatorExpr<Sqrt2>;
  auto expr = E::compose({E::dunkl({Sqrt2(1)}), E::multiply(x)});  // T ∘ (x ·)
  // T(x * x^2) = T(x^3) = (3 + 2k) x^2 = 4 x^2
  CHECK(expr.apply(ops, x * x) == Sqrt2(4) * (x * x));
  auto s = E::sum({E::euler(), E::scale(Sqrt2(-1), E::euler())});
  CHECK(s.apply(ops, x * x).is_zero());
}

TEST_CASE("positive minimum principle samples") {
  std::mt19937_64 rng(71);
  auto ctx = build_standard<Sqrt2>(GroupType::B, 2);
  ctx.set_multiplicity({Rational(1, 2), Rational(1)});
  DunklOps<Sqrt2> ops(ctx);
  std::uniform_int_distribution<int> num(-4, 4);
  int tested = 0;
  for (int rep = 0; rep < 40 && tested < 10; ++rep) {
    // regular rational point (no coordinate relations)
    std::vector<Rational> x0 = {Rational(num(rng), 3), Rational(num(rng), 5)};
    if (x0[0] == 0 || x0[1] == 0 || x0[0] == x0[1] || x0[0] == -x0[1]) continue;
    P q = random_poly(rng, 2, 2, 3);
    // p = q^2 |x - x0|^2 vanishes at x0 and is nonnegative
    P shift(2);
    for (int i = 0; i < 2; ++i) {
      P d = P::variable(2, i) - P::constant(2, scalar_traits<Sqrt2>::from_rational(x0[static_cast<std::size_t>(i)]));
      shift += d * d;
    }
    P p = q * q * shift;
    std::vector<Sqrt2> pt = {scalar_traits<Sqrt2>::from_rational(x0[0]), scalar_traits<Sqrt2>::from_rational(x0[1])};
    CHECK(p.eval_exact(pt).is_zero());
    double val = scalar_traits<Sqrt2>::to_double(ops.laplacian(p).eval_exact(pt));
    CHECK(val >= -1e-12);
    ++tested;
  }
  CHECK(tested == 10);
}

TEST_CASE("float backend dihedral operators") {
  auto d5 = build_standard<double>(GroupType::Dihedral, 5);
  d5.set_multiplicity({Rational(1, 2)});
  DunklOps<double> ops(d5);
  std::mt19937_64 rng(73);
  std::uniform_real_distribution<double> u(-1, 1);
  for (const auto& m : monomials_up_to_degree(2, 5)) {
    MultiPoly<double> p = MultiPoly<double>::monomial(m, 1.0);
    std::vector<double> xi = {u(rng), u(rng)};
    std::vector<double> eta = {u(rng), u(rng)};
    auto ab = ops.apply_T(xi, ops.apply_T(eta, p));
    auto ba = ops.apply_T(eta, ops.apply_T(xi, p));
    CHECK(ab.max_coeff_distance(ba) < 1e-9);
  }
  CHECK(sl2_bracket_check(ops, 4).pass);
  CHECK(commutator_xi_delta_check(ops, 4).pass);
}
