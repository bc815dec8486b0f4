#include "doctest.h"

#include <random>

#include "dunkl/root_system.hpp"

using namespace dunkl;

TEST_CASE("reflection formula") {
  // alpha ∝ e1 - e2 swaps the coordinates
  std::vector<Sqrt2> alpha = {Sqrt2(1), Sqrt2(-1)};
  std::vector<Sqrt2> x = {Sqrt2(1), Sqrt2(0)};
  auto y = reflect(alpha, x);
  CHECK(y == std::vector<Sqrt2>{Sqrt2(0), Sqrt2(1)});
  CHECK(reflect(alpha, y) == x);
  // fixed hyperplane
  std::vector<Sqrt2> h = {Sqrt2(3), Sqrt2(3)};
  CHECK(reflect(alpha, h) == h);
  // sigma_alpha(alpha) = -alpha
  auto na = reflect(alpha, alpha);
  CHECK(na == std::vector<Sqrt2>{Sqrt2(-1), Sqrt2(1)});
}

TEST_CASE("standard systems: root counts, group orders, orbits") {
  auto a3 = build_standard<Sqrt2>(GroupType::A, 3);
  CHECK(a3.system.roots.size() == 6);
  CHECK(a3.group.size() == 6);
  CHECK(a3.num_orbits() == 1);
  CHECK(a3.system.rank == 2);

  auto b2 = build_standard<Sqrt2>(GroupType::B, 2);
  CHECK(b2.system.roots.size() == 8);
  CHECK(b2.group.size() == 8);
  CHECK(b2.num_orbits() == 2);
  CHECK(b2.system.rank == 2);

  auto a2 = build_standard<Sqrt2>(GroupType::A, 2);
  CHECK(a2.system.roots.size() == 2);
  CHECK(a2.system.rank == 1);
  CHECK(a2.group.size() == 2);

  // dimension 1 is the rank-one system {±sqrt 2} for either letter
  auto r1 = build_standard<Sqrt2>(GroupType::A, 1);
  CHECK(r1.system.roots.size() == 2);
  CHECK(r1.group.size() == 2);
  CHECK(r1.system.roots[0][0] * r1.system.roots[0][0] == Sqrt2(2));

  CHECK_THROWS_AS(build_standard<Sqrt2>(GroupType::A, 0), ConfigError);
  CHECK_THROWS_AS(build_standard<Sqrt2>(GroupType::Dihedral, 5), ConfigError);
}

TEST_CASE("group orders across the tested size range") {
  auto factorial = [](int n) { std::size_t f = 1; for (int i = 2; i <= n; ++i) f *= static_cast<std::size_t>(i); return f; };
  for (int n = 2; n <= 5; ++n) {
    CHECK(build_standard<Sqrt2>(GroupType::A, n).group.size() == factorial(n));
    CHECK(build_standard<Sqrt2>(GroupType::B, n).group.size() == (static_cast<std::size_t>(1) << n) * factorial(n));
  }
  for (int n = 3; n <= 8; ++n) {
    auto d = build_standard<double>(GroupType::Dihedral, n);
    CHECK(d.group.size() == 2 * static_cast<std::size_t>(n));
    CHECK(d.num_orbits() == (n % 2 == 0 ? 2 : 1));
  }
}

TEST_CASE("group elements permute the roots; sigma_alpha(R) = R") {
  auto ctx = build_standard<Sqrt2>(GroupType::B, 3);
  for (const auto& a : ctx.system.roots) {
    for (const auto& b : ctx.system.roots) {
      auto img = reflect(a, b);
      CHECK(detail::find_vec<Sqrt2>(ctx.system.roots, img) >= 0);
    }
  }
  // orthogonality of every group matrix, exactly
  for (const auto& g : ctx.group) {
    CHECK(g.matrix * g.matrix.transposed() == Matrix<Sqrt2>::identity(3));
  }
}

TEST_CASE("conjugation g sigma_alpha g^{-1} = sigma_{g alpha}") {
  auto ctx = build_standard<Sqrt2>(GroupType::A, 3);
  // identity leaves roots fixed
  auto a0 = ctx.system.positive[0];
  CHECK(ctx.conjugated_root(ctx.group[0], a0) == a0);
  // sigma_alpha sends alpha to -alpha
  GroupElement<Sqrt2> s{reflection_matrix<Sqrt2>(a0), 1};
  auto na = ctx.conjugated_root(s, a0);
  for (std::size_t i = 0; i < na.size(); ++i) CHECK(na[i] == -a0[i]);
  // specific A_2 case: sigma_{e1-e2} maps e2-e3 to e1-e3
  std::vector<Sqrt2> r12 = {Sqrt2(1), Sqrt2(-1), Sqrt2(0)};
  std::vector<Sqrt2> r23 = {Sqrt2(0), Sqrt2(1), Sqrt2(-1)};
  GroupElement<Sqrt2> s12{reflection_matrix<Sqrt2>(r12), 1};
  CHECK(ctx.conjugated_root(s12, r23) == std::vector<Sqrt2>{Sqrt2(1), Sqrt2(0), Sqrt2(-1)});
  // random sample across the group and all roots
  std::mt19937_64 rng(7);
  auto b3 = build_standard<Sqrt2>(GroupType::B, 3);
  std::uniform_int_distribution<std::size_t> gi(0, b3.group.size() - 1);
  for (int rep = 0; rep < 20; ++rep) {
    const auto& g = b3.group[gi(rng)];
    for (const auto& a : b3.system.positive) CHECK_NOTHROW(b3.conjugated_root(g, a));
  }
}

TEST_CASE("multiplicity handling") {
  auto b2 = build_standard<Sqrt2>(GroupType::B, 2);
  b2.set_multiplicity({Rational(1, 2), Rational(1)});
  CHECK(b2.gamma() == Rational(3));  // 2 * 1/2 + 2 * 1
  CHECK_THROWS_AS(b2.set_multiplicity({Rational(1)}), ConfigError);
  CHECK_THROWS_AS(b2.set_multiplicity({Rational(-1), Rational(1)}), ConfigError);

  // same-orbit conflict across the two diagonal roots of B_2
  std::vector<std::pair<Vec<Sqrt2>, Rational>> bad = {
      {{Sqrt2(1), Sqrt2(1)}, Rational(1)},
      {{Sqrt2(1), Sqrt2(-1)}, Rational(2)},
  };
  CHECK_THROWS_AS(multiplicity_from_root_values(b2, bad), ConfigError);
  std::vector<std::pair<Vec<Sqrt2>, Rational>> good = {
      {{Sqrt2(1), Sqrt2(1)}, Rational(1)},
      {{Sqrt2::sqrt2(), Sqrt2(0)}, Rational(1, 2)},
  };
  auto k = multiplicity_from_root_values(b2, good);
  b2.set_multiplicity(k);
  CHECK(b2.gamma() == Rational(3));
}

TEST_CASE("weight function w_k") {
  // rank one inside R^2 (type A, dim 2): root sqrt2-normalized (e1-e2)
  auto a2 = build_standard<Sqrt2>(GroupType::A, 2);
  a2.set_multiplicity({Rational(3, 4)});
  const double kk = 0.75;
  // w_k(x) = |<e1-e2, x>|^{2k}
  std::vector<double> x = {1.3, -0.2};
  CHECK(a2.weight(x) == doctest::Approx(std::pow(std::fabs(1.5), 2 * kk)).epsilon(1e-12));
  // homogeneity of degree 2 gamma with rational scalings
  auto b2 = build_standard<Sqrt2>(GroupType::B, 2);
  b2.set_multiplicity({Rational(1, 2), Rational(2, 3)});
  double g = to_double(b2.gamma());
  std::vector<double> y = {0.7, 1.9};
  for (double r : {2.0, 3.0, 0.5}) {
    std::vector<double> ry = {r * y[0], r * y[1]};
    CHECK(b2.weight(ry) == doctest::Approx(std::pow(r, 2 * g) * b2.weight(y)).epsilon(1e-12));
  }
  // G-invariance across all group elements
  for (const auto& gel : b2.group) {
    std::vector<double> gy(2, 0.0);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) gy[i] += gel.matrix(i, j).to_double() * y[j];
    CHECK(b2.weight(gy) == doctest::Approx(b2.weight(y)).epsilon(1e-12));
  }
  // zero at the origin when gamma > 0
  CHECK(b2.weight({0.0, 0.0}) == 0.0);
}

TEST_CASE("custom root systems") {
  // B_2 handed in unnormalized: short roots e_i (norm 1 = 1^2), long (1,1)
  std::vector<std::vector<Rational>> raw = {
      std::vector<Rational>{Rational(1), Rational(0)},
      std::vector<Rational>{Rational(0), Rational(1)},
      std::vector<Rational>{Rational(1), Rational(1)},
      std::vector<Rational>{Rational(1), Rational(-1)},
  };
  auto ctx = build_custom(raw);
  CHECK(ctx.system.roots.size() == 8);
  CHECK(ctx.group.size() == 8);
  CHECK(ctx.num_orbits() == 2);
  // scaled copy of A_2-in-R^2: roots (3,-3) -> norm 18 = 2 * 3^2
  std::vector<std::vector<Rational>> scaled = {std::vector<Rational>{Rational(3), Rational(-3)}};
  auto a = build_custom(scaled);
  CHECK(a.system.roots.size() == 2);
  CHECK(a.group.size() == 2);
  // not a root system: missing reflected images
  std::vector<std::vector<Rational>> broken = {std::vector<Rational>{Rational(1), Rational(0)},
                                               std::vector<Rational>{Rational(1), Rational(1)}};
  CHECK_THROWS_AS(build_custom(broken), ConfigError);
  // norm not representable: (1,1,1) has norm 3
  std::vector<std::vector<Rational>> norm3 = {std::vector<Rational>{Rational(1), Rational(1), Rational(1)}};
  CHECK_THROWS_AS(build_custom(norm3), ConfigError);
}

TEST_CASE("generate_group on a single root pair") {
  std::vector<Vec<Sqrt2>> pos = {{Sqrt2(1), Sqrt2(-1)}};
  auto g = generate_group<Sqrt2>(pos, 2);
  CHECK(g.size() == 2);
  CHECK(g[0].word_length == 0);
  CHECK(g[1].word_length == 1);
}

TEST_CASE("group closure respects the cap") {
  auto pos = build_standard<Sqrt2>(GroupType::B, 3).system.positive;
  CHECK_THROWS_AS(generate_group<Sqrt2>(pos, 3, 10), ResourceError);
}
