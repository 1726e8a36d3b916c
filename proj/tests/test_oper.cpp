#include <doctest.h>

#include <random>

#include "rigid/newton.hpp"
#include "rigid/oper.hpp"
#include "rigid/principal.hpp"
#include "generators.hpp"

using namespace rigid;
using namespace rigid::gen;

TEST_CASE("assembly places p_-1 and the Kostant slots") {
  auto a2 = ChevalleyAlgebra::build(CartanType::A, 2);
  const auto &pd = principal(*a2);
  OperForm zero{a2, Coord::t, {LaurentSeries(), LaurentSeries()}};
  auto c0 = assemble(zero, RepKind::defining);
  CHECK(c0.A == to_series(a2->defining().image(pd.p_minus1)));

  std::mt19937 rng(5);
  auto v = random_oper(a2, rng), w = random_oper(a2, rng);
  OperForm sum = v;
  for (std::size_t i = 0; i < sum.v.size(); ++i) sum.v[i] += w.v[i];
  SeriesMatrix diff = assemble(sum, RepKind::defining).A - assemble(v, RepKind::defining).A;
  SeriesVector wx(a2->dim());
  for (std::size_t i = 0; i < w.v.size(); ++i)
    for (std::size_t k = 0; k < a2->dim(); ++k)
      if (!pd.kostant_basis[i][k].is_zero()) wx[k] += w.v[i].scaled(pd.kostant_basis[i][k]);
  CHECK(diff == assemble_matrix(a2->defining(), wx));
}

TEST_CASE("sl2 Frenkel-Gross canonical form at zero") {
  auto a1 = ChevalleyAlgebra::build(CartanType::A, 1);
  for (Rational lam : {Rational(1), Rational(-3), q(2, 7)}) {
    auto fg = at_zero(frenkel_gross(a1, RepKind::defining, Scalar(lam)));
    auto o = canonicalize(fg);
    LaurentSeries expect(LaurentSeries::Terms{{-2, Scalar(q(-1, 4))}, {-1, Scalar(lam)}}, std::nullopt);
    CHECK(o.v[0] == expect);

    // matrix oracle: rho_check(t^-1) then [[1, x], [0, 1]] solving the diagonal away
    Vector half(1);
    half[0] = Scalar(q(1, 2));
    auto c = gauge_transform(fg, cocharacter_gauge(*a1, RepKind::defining, half, -1));
    // lower-left is now 1; the diagonal is [[a, *], [1, -a]] and x = -a clears it
    REQUIRE(c.A(1, 0) == LaurentSeries(1));
    SeriesVector x(a1->dim());
    x[a1->root_index(a1->root_system().simple_root(0))] = -c.A(0, 0);
    auto d = gauge_transform(c, unipotent_gauge(*a1, RepKind::defining, x));
    CHECK(is_zero(d.A(0, 0)));
    CHECK(is_zero(d.A(1, 1)));
    CHECK(d.A(1, 0) == LaurentSeries(1));
    CHECK(d.A(0, 1) == expect);
  }
}

TEST_CASE("canonical form at infinity has the top pole order") {
  for (auto [t, r] : kSix) {
    auto alg = ChevalleyAlgebra::build(t, r);
    const int h = principal(*alg).coxeter_number;
    for (Rational lam : {Rational(1), Rational(2), q(1, 3)}) {
      auto inf = change_to_infinity(frenkel_gross(alg, natural_rep(t), Scalar(lam)));
      auto o = canonicalize(inf);
      CAPTURE(alg->name());
      REQUIRE(o.v.back().order());
      CHECK(*o.v.back().order() == -h - 1);
      Scalar top = o.v.back().coefficient(-h - 1);
      CHECK(!top.is_zero());
      CHECK((top == Scalar(lam) || top == -Scalar(lam)));
      CHECK(oper_slope(o) == q(1, h));
      // the slope of the canonical form agrees with the polygon of the connection
      CHECK(oper_slope(o) == slope(inf, PolygonMethod::matrix));
      CHECK(membership(o, OperSpaceSpec::slope_bounded()));
      CHECK_FALSE(membership(o, OperSpaceSpec::regular(*alg, std::vector<int>(r, 0))));
    }
  }
}

TEST_CASE("canonicalization keeps the companion exponents") {
  for (auto [t, r] : std::vector<std::pair<CartanType, int>>{{CartanType::A, 1}, {CartanType::A, 2}, {CartanType::B, 2}}) {
    auto alg = ChevalleyAlgebra::build(t, r);
    auto inf = change_to_infinity(frenkel_gross(alg, RepKind::defining, Scalar(3)));
    auto back = assemble(canonicalize(inf), RepKind::defining);
    CHECK(irregular_exponents(back) == irregular_exponents(inf));
  }
}

TEST_CASE("round trip on random opers") {
  std::mt19937 rng(77);
  for (auto [t, r] : std::vector<std::pair<CartanType, int>>{{CartanType::A, 1}, {CartanType::A, 2}, {CartanType::B, 2}}) {
    auto alg = ChevalleyAlgebra::build(t, r);
    for (int trial = 0; trial < 100; ++trial) {
      auto v = random_oper(alg, rng, trial % 2 ? std::optional<int>(6) : std::nullopt);
      auto back = canonicalize(assemble(v, RepKind::defining));
      CAPTURE(trial);
      for (std::size_t i = 0; i < v.v.size(); ++i) CHECK(back.v[i] == v.v[i]);
    }
  }
}

TEST_CASE("canonicalization retracts Borel gauge orbits") {
  std::mt19937 rng(314);
  for (auto [t, r] : std::vector<std::pair<CartanType, int>>{{CartanType::A, 1}, {CartanType::A, 2}, {CartanType::B, 2}}) {
    auto alg = ChevalleyAlgebra::build(t, r);
    for (int trial = 0; trial < 30; ++trial) {
      auto v = random_oper(alg, rng);
      auto c = gauge_transform(assemble(v, RepKind::defining), random_borel(*alg, RepKind::defining, rng));
      auto back = canonicalize(c);
      CAPTURE(trial);
      for (std::size_t i = 0; i < v.v.size(); ++i) CHECK(back.v[i] == v.v[i]);
    }
  }
}

TEST_CASE("non-opers are rejected") {
  auto a2 = ChevalleyAlgebra::build(CartanType::A, 2);
  SeriesVector x(a2->dim());
  x[a2->root_index({-1, -1})] = LaurentSeries(1);
  x[a2->root_index({-1, 0})] = LaurentSeries(1);
  x[a2->root_index({0, -1})] = LaurentSeries(1);
  auto bad = connection_from_lie(a2, RepKind::defining, Coord::t, x);
  CHECK_THROWS_AS(canonicalize(bad), Error);
  SeriesVector y(a2->dim());
  y[a2->root_index({-1, 0})] = LaurentSeries(1);
  CHECK_THROWS_AS(canonicalize(connection_from_lie(a2, RepKind::defining, Coord::t, y)), Error);
}

TEST_CASE("oper slope") {
  auto b2 = ChevalleyAlgebra::build(CartanType::B, 2);
  OperForm zero{b2, Coord::s, {LaurentSeries(), LaurentSeries()}};
  CHECK(oper_slope(zero) == 0);
  // degrees 2, 4: -ord/d - 1
  OperForm o{b2, Coord::s, {LaurentSeries::monomial(Scalar(1), -3), LaurentSeries::monomial(Scalar(1), -5)}};
  CHECK(oper_slope(o) == q(1, 2));
  o.v[0] = LaurentSeries();
  CHECK(oper_slope(o) == q(1, 4));
  // an unknown coefficient that could dominate
  o.v[0] = LaurentSeries::big_o(-6);
  CHECK_THROWS_AS(oper_slope(o), Error);
  o.v[0] = LaurentSeries::big_o(-1);
  CHECK(oper_slope(o) == q(1, 4));
}

TEST_CASE("membership examples") {
  for (auto [t, r] : kSix) {
    auto alg = ChevalleyAlgebra::build(t, r);
    CAPTURE(alg->name());
    OperForm zero{alg, Coord::t, std::vector<LaurentSeries>(r)};
    std::vector<Rational> minus_rho(r, Rational(-1));
    CHECK(membership(zero, OperSpaceSpec::punctured()));
    CHECK(membership(zero, OperSpaceSpec::regular_singular(*alg, minus_rho)));
    CHECK(membership(zero, OperSpaceSpec::regular(*alg, std::vector<int>(r, 0))));
    CHECK(membership(zero, OperSpaceSpec::slope_bounded()));
    CHECK_FALSE(membership(zero, OperSpaceSpec::regular(*alg, std::vector<int>(r, 1))));

    // Frenkel-Gross at 0: nilpotent residue class, reached by lambda_0 = -rho
    auto z = canonicalize(at_zero(frenkel_gross(alg, natural_rep(t), Scalar(2))));
    CHECK(membership(z, OperSpaceSpec::regular_singular(*alg, std::vector<Rational>(r, Rational(0)))));
    CHECK_FALSE(membership(z, OperSpaceSpec::regular_singular(*alg, minus_rho)));
    auto l0 = integral_residue_weight(z);
    REQUIRE(l0);
    CHECK(*l0 == std::vector<int>(r, -1));
  }
}

TEST_CASE("monotone membership on random opers") {
  std::mt19937 rng(99);
  for (auto [t, r] : std::vector<std::pair<CartanType, int>>{{CartanType::A, 1}, {CartanType::A, 2}, {CartanType::B, 2}}) {
    auto alg = ChevalleyAlgebra::build(t, r);
    const auto &pd = principal(*alg);
    auto reg = OperSpaceSpec::regular(*alg, std::vector<int>(r, 0));
    auto rs = OperSpaceSpec::regular_singular(*alg, std::vector<Rational>(r, Rational(-1)));
    auto bounded = OperSpaceSpec::slope_bounded();
    std::uniform_int_distribution<int> extra(-1, 2);
    int hits[3] = {0, 0, 0};
    for (int trial = 0; trial < 100; ++trial) {
      OperForm o{alg, Coord::t, {}};
      for (int d : pd.degrees) {
        int lo = -d + extra(rng);
        auto f = random_series(rng, lo, 3);
        // keep the residue slot empty half the time so the stricter classes are hit
        if (trial % 2 == 0) f -= LaurentSeries::monomial(f.coefficient(-d), -d);
        o.v.push_back(f);
      }
      bool in_reg = membership(o, reg), in_rs = membership(o, rs), in_b = membership(o, bounded);
      hits[0] += in_reg;
      hits[1] += in_rs;
      hits[2] += in_b;
      CHECK((!in_reg || in_rs));
      CHECK((!in_rs || in_b));
      CHECK(membership(o, OperSpaceSpec::punctured()));
    }
    CHECK(hits[0] > 0);
    CHECK(hits[2] > hits[0]);
  }
}

TEST_CASE("residue classes are Weyl invariant") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> c(-4, 4);
  for (auto [t, r] : kSix) {
    auto alg = ChevalleyAlgebra::build(t, r);
    const auto &a = alg->root_system().cartan_matrix();
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<Rational> mu(r);
      for (auto &m : mu) m = q(c(rng), 2);
      auto base = invariant_values(*alg, coweight_element(*alg, mu));
      auto spec = OperSpaceSpec::regular_singular(*alg, mu);
      for (int i = 0; i < r; ++i) {
        // s_i: alpha_j(x) -> alpha_j(x) - alpha_i(x) a_ij
        std::vector<Rational> w = mu;
        for (int j = 0; j < r; ++j) w[j] = mu[j] - mu[i] * a[i][j];
        CHECK(invariant_values(*alg, coweight_element(*alg, w)) == base);
        CHECK(OperSpaceSpec::regular_singular(*alg, w).residue_class == spec.residue_class);
      }
    }
  }
  // omega_1 and -omega_1 are not Weyl conjugate in A2 (w_0 sends omega_1 to -omega_2)
  auto a2 = ChevalleyAlgebra::build(CartanType::A, 2);
  CHECK(invariant_values(*a2, coweight_element(*a2, {1, 0})) != invariant_values(*a2, coweight_element(*a2, {-1, 0})));
  CHECK(invariant_values(*a2, coweight_element(*a2, {1, 0})) == invariant_values(*a2, coweight_element(*a2, {0, -1})));
  // the two spin coweights of D4 share a characteristic polynomial; the Pfaffian tells them apart
  auto d4 = ChevalleyAlgebra::build(CartanType::D, 4);
  auto s3 = invariant_values(*d4, coweight_element(*d4, {0, 0, 1, 0}));
  auto s4 = invariant_values(*d4, coweight_element(*d4, {0, 0, 0, 1}));
  CHECK(std::vector<Scalar>(s3.begin(), s3.end() - 1) == std::vector<Scalar>(s4.begin(), s4.end() - 1));
  CHECK(s3.back() == -s4.back());
  CHECK(!s3.back().is_zero());
}

TEST_CASE("oper JSON round trip") {
  std::mt19937 rng(8);
  auto g2 = ChevalleyAlgebra::build(CartanType::G, 2);
  auto o = random_oper(g2, rng, 4);
  o.coord = Coord::s;
  auto back = oper_from_json(oper_to_json(o));
  CHECK(back.coord == Coord::s);
  CHECK(back.alg == g2);
  for (std::size_t i = 0; i < o.v.size(); ++i) CHECK(back.v[i] == o.v[i]);
  CHECK_THROWS_AS(oper_from_json(nlohmann::json{{"type", "A"}, {"rank", 2}, {"coord", "t"}, {"v", nlohmann::json::array()}}), Error);
}
