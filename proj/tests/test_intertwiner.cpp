#include "doctest.h"

#include "dunkl/intertwiner.hpp"

using namespace dunkl;
using P = MultiPoly<Sqrt2>;

namespace {
GroupContext<Sqrt2> rank_one_ctx(const Rational& k) {
  auto ctx = build_rank_one<Sqrt2>();
  ctx.set_multiplicity({k});
  return ctx;
}
}  // namespace

TEST_CASE("rank-one closed form up to degree 12") {
  for (Rational k : {Rational(1, 2), Rational(1), Rational(7, 3)}) {
    auto ctx = rank_one_ctx(k);
    IntertwinerTable<Sqrt2> table(ctx, 12);
    for (int d = 1; d <= 12; ++d) {
      auto v = table.apply_to_monomial(Monomial{d});
      Rational expected = rank_one_intertwiner_factor(k, d);
      CHECK(v == P::monomial(Monomial{d}, scalar_traits<Sqrt2>::from_rational(expected)));
    }
    // headline low-degree values
    CHECK(table.apply_to_monomial(Monomial{1}) ==
          P::monomial(Monomial{1}, scalar_traits<Sqrt2>::from_rational(Rational(1) / (2 * k + 1))));
    CHECK(table.apply_to_monomial(Monomial{2}) ==
          P::monomial(Monomial{2}, scalar_traits<Sqrt2>::from_rational(Rational(1) / (2 * k + 1))));
    CHECK(table.apply_to_monomial(Monomial{3}) ==
          P::monomial(Monomial{3}, scalar_traits<Sqrt2>::from_rational(
                                        Rational(3, 4) / ((k + Rational(1, 2)) * (k + Rational(3, 2))))));
  }
}

TEST_CASE("k = 0 gives the identity at every degree") {
  auto ctx = build_standard<Sqrt2>(GroupType::B, 2);
  ctx.set_multiplicity({Rational(0), Rational(0)});
  IntertwinerTable<Sqrt2> table(ctx, 6);
  for (int n = 0; n <= 6; ++n) {
    CHECK(table.matrix_at(n) == Matrix<Sqrt2>::identity(static_cast<int>(table.basis(n).size())));
  }
  P p = parse_poly<Sqrt2>("2 x1^3 - x2", 2);
  CHECK(table.apply(p) == p);
}

TEST_CASE("V_k(1) = 1 and homogeneity of the output") {
  auto ctx = build_standard<Sqrt2>(GroupType::A, 3);
  ctx.set_multiplicity({Rational(2, 3)});
  IntertwinerTable<Sqrt2> table(ctx, 6);
  CHECK(table.apply(P::constant(3, Sqrt2(1))) == P::constant(3, Sqrt2(1)));
  for (int n = 1; n <= 6; ++n)
    for (const auto& nu : table.basis(n)) {
      auto v = table.apply_to_monomial(nu);
      CHECK(v.is_homogeneous());
      CHECK(v.degree() == n);
    }
  // degree overflow reports an extend-first error
  CHECK_THROWS_AS(table.apply(P::monomial(Monomial{7, 0, 0}, Sqrt2(1))), ConfigError);
}

TEST_CASE("intertwining residual, pairing transport, equivariance") {
  for (auto [type, dim] : {std::pair{GroupType::A, 3}, {GroupType::B, 2}}) {
    auto ctx = build_standard<Sqrt2>(type, dim);
    std::vector<Rational> k(static_cast<std::size_t>(ctx.num_orbits()), Rational(1, 2));
    if (ctx.num_orbits() > 1) k[1] = Rational(5, 4);
    ctx.set_multiplicity(k);
    IntertwinerTable<Sqrt2> table(ctx, 5);
    CHECK(check_intertwining_residual(table, 5).pass);
    CHECK(check_pairing_transport(table, 4).pass);
    CHECK(check_equivariance_V(table, 4).pass);
  }
}

TEST_CASE("pairing transport hand value: [V x, x]_k = 1") {
  auto ctx = rank_one_ctx(Rational(3, 2));
  IntertwinerTable<Sqrt2> table(ctx, 2);
  DunklOps<Sqrt2> ops(ctx);
  P x = P::variable(1, 0);
  auto vx = table.apply(x);
  CHECK(ops.fischer_pair(vx, x) == Sqrt2(1));
}

TEST_CASE("euler extension path agrees with the stacked path") {
  auto ctx = build_standard<Sqrt2>(GroupType::B, 2);
  ctx.set_multiplicity({Rational(1, 2), Rational(4, 3)});
  IntertwinerTable<Sqrt2> stacked(ctx, 0);
  stacked.extend(8, /*stacked_limit=*/8);
  IntertwinerTable<Sqrt2> euler(ctx, 0);
  euler.extend(8, /*stacked_limit=*/1);
  for (int n = 0; n <= 8; ++n) CHECK(stacked.matrix_at(n) == euler.matrix_at(n));
}

TEST_CASE("positivity grid and norm bound") {
  auto ctx = build_standard<Sqrt2>(GroupType::B, 2);
  ctx.set_multiplicity({Rational(1, 2), Rational(1)});
  IntertwinerTable<Sqrt2> table(ctx, 6);
  auto rep = check_positivity_grid(table, 20, 200, 12345);
  CHECK(rep.pass);
  // rank-one positivity from the closed form: V_k x^2 has a positive factor
  auto r1 = rank_one_ctx(Rational(1, 2));
  IntertwinerTable<Sqrt2> t1(r1, 6);
  auto rep1 = check_positivity_grid(t1, 20, 100, 99);
  CHECK(rep1.pass);
}

TEST_CASE("singularity detection outside k >= 0 (diagnostic path)") {
  // k = -1/2 is singular in rank one: the odd intertwining equations lose
  // solvability. The table must refuse rather than emit garbage.
  auto ctx = build_rank_one<Sqrt2>();
  ctx.k = {Rational(-1, 2)};  // bypasses set_multiplicity's k >= 0 guard
  CHECK_THROWS_AS(IntertwinerTable<Sqrt2>(ctx, 4), RegularityError);
}
