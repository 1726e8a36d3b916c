#include <doctest.h>

#include <random>

#include "rigid/newton.hpp"
#include "rigid/principal.hpp"
#include "rigid/serialize.hpp"
#include "generators.hpp"

using namespace rigid;
using namespace rigid::gen;

namespace {

LaurentSeries mono(const Scalar &c, int e) { return LaurentSeries::monomial(c, e); }

SeriesMatrix series_of(const std::vector<std::vector<LaurentSeries>> &rows) {
  SeriesMatrix m(rows.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
  return m;
}

FormalConnection raw(AlgebraPtr alg, RepKind rep, Coord coord, SeriesMatrix a) {
  return FormalConnection{std::move(alg), rep, coord, std::move(a)};
}

}  // namespace

TEST_CASE("Frenkel-Gross assembly") {
  auto a1 = ChevalleyAlgebra::build(CartanType::A, 1);
  auto fg = frenkel_gross(a1, RepKind::defining, Scalar(1));
  CHECK(fg.coord == Coord::global);
  // N lower triangular, E upper triangular
  CHECK(fg.A == series_of({{LaurentSeries(), LaurentSeries(1)}, {mono(1, -1), LaurentSeries()}}));
  CHECK_THROWS_AS(frenkel_gross(a1, RepKind::defining, Scalar()), Error);
  for (auto [t, r] : kSix) {
    auto alg = ChevalleyAlgebra::build(t, r);
    RepKind rep = t == CartanType::G ? RepKind::adjoint : RepKind::defining;
    auto c = frenkel_gross(alg, rep, Scalar(Rational(1, 3)));
    CHECK(residue(at_zero(c)) == alg->representation(rep).image(principal(*alg).p_minus1));
  }
}

TEST_CASE("gauge transformations") {
  auto a2 = ChevalleyAlgebra::build(CartanType::A, 2);
  auto fg = at_zero(frenkel_gross(a2, RepKind::defining, Scalar(2)));
  GaugeElement id = constant_gauge(QMatrix::identity(3));
  CHECK(gauge_transform(fg, id).A == fg.A);

  QMatrix g(3, 3, {Scalar(1), Scalar(2), Scalar(0), Scalar(0), Scalar(1), Scalar(0), Scalar(1), Scalar(0), Scalar(1)});
  QMatrix gi = inverse(g);
  auto c = gauge_transform(fg, constant_gauge(g));
  CHECK(c.A == to_series(g) * fg.A * to_series(gi));

  std::mt19937 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    GaugeElement u = compose(random_unipotent(*a2, RepKind::defining, rng), random_cocharacter(*a2, RepKind::defining, rng));
    auto there = gauge_transform(fg, u);
    auto back = gauge_transform(there, inverse(u));
    for (std::size_t k = 0; k < fg.A.data().size(); ++k) CHECK(back.A.data()[k].agrees_with(fg.A.data()[k]));
  }
}

TEST_CASE("coordinate change at infinity") {
  for (auto [t, r] : kSix) {
    auto alg = ChevalleyAlgebra::build(t, r);
    RepKind rep = t == CartanType::G ? RepKind::adjoint : RepKind::defining;
    Scalar lambda(Rational(5, 2));
    auto fg = frenkel_gross(alg, rep, lambda);
    auto inf = change_to_infinity(fg);
    CHECK(inf.coord == Coord::s);
    // -(N + lambda s^-1 E) s^-1
    const auto &pd = principal(*alg);
    QMatrix n = alg->representation(rep).image(pd.p_minus1);
    QMatrix e = alg->representation(rep).images[alg->root_index(alg->root_system().highest_root())];
    SeriesMatrix expected = to_series(n).scaled(mono(-1, -1)) + to_series(e).scaled(mono(-lambda, -2));
    CHECK(inf.A == expected);
    CHECK(change_to_infinity(inf).A == fg.A);
    CHECK(change_to_infinity(inf).coord == Coord::global);
  }
  auto a1 = ChevalleyAlgebra::build(CartanType::A, 1);
  QMatrix cst(2, 2, {Scalar(1), Scalar(3), Scalar(-2), Scalar(-1)});
  auto reg = raw(a1, RepKind::defining, Coord::global, to_series(cst));
  CHECK(change_to_infinity(reg).A == to_series(cst).scaled(mono(-1, -2)));
  CHECK_THROWS_AS(change_to_infinity(at_zero(reg)), Error);
}

TEST_CASE("residue and monodromy") {
  auto a1 = ChevalleyAlgebra::build(CartanType::A, 1);
  QMatrix cst(2, 2, {Scalar(1), Scalar(3), Scalar(-2), Scalar(-1)});
  auto reg = raw(a1, RepKind::defining, Coord::t, to_series(cst));
  CHECK(residue(reg).is_zero_matrix());
  CHECK(monodromy_type(reg) == MonodromyType::unipotent);
  auto pole2 = raw(a1, RepKind::defining, Coord::t, to_series(cst).scaled(mono(1, -2)));
  try {
    residue(pole2);
    CHECK(false);
  } catch (const Error &e) {
    CHECK(e.kind() == ErrorKind::not_first_order);
  }
  auto diag = raw(a1, RepKind::defining, Coord::t,
                  series_of({{mono(Rational(1, 2), -1), LaurentSeries()}, {LaurentSeries(), mono(Rational(-1, 2), -1)}}));
  CHECK(monodromy_type(diag) == MonodromyType::other);
  auto triv = raw(a1, RepKind::defining, Coord::t, SeriesMatrix(2, 2));
  CHECK(monodromy_type(triv) == MonodromyType::unipotent);
  auto a2 = ChevalleyAlgebra::build(CartanType::A, 2);
  CHECK(monodromy_type(raw(a2, RepKind::defining, Coord::t, SeriesMatrix(3, 3))) == MonodromyType::unipotent);
  for (auto [t, r] : kSix) {
    auto alg = ChevalleyAlgebra::build(t, r);
    CHECK(monodromy_type(at_zero(frenkel_gross(alg, RepKind::adjoint, Scalar(2)))) == MonodromyType::unipotent_regular);
  }
}

TEST_CASE("slopes and irregularity") {
  auto a1 = ChevalleyAlgebra::build(CartanType::A, 1);
  CHECK(slope(change_to_infinity(frenkel_gross(a1, RepKind::defining, Scalar(1)))) == Rational(1, 2));
  QMatrix cst(2, 2, {Scalar(1), Scalar(3), Scalar(-2), Scalar(-1)});
  CHECK(slope(raw(a1, RepKind::defining, Coord::t, to_series(cst))) == 0);
  CHECK(adjoint_irregularity(at_zero(frenkel_gross(a1, RepKind::defining, Scalar(1)))) == 0);

  // oracle: A(s) = -s^-1 ad(N + lambda s^-1 E) is conjugate over the cover s = u^h to
  // -s^-1 (lambda/s)^(1/h) ad(N+E), so the nonzero eigenvalues of ad(N+E) give the
  // branches of valuation -1 - 1/h and the rest are zero.
  for (auto [t, r] : kSix) {
    auto alg = ChevalleyAlgebra::build(t, r);
    int h = principal(*alg).coxeter_number;
    Polynomial chi = characteristic_polynomial(alg->ad(cyclic_element(*alg)));
    int zero = 0;
    while (chi.coefficient(zero).is_zero()) ++zero;
    int nonzero = static_cast<int>(alg->dim()) - zero;
    auto inf = change_to_infinity(frenkel_gross(alg, RepKind::adjoint, Scalar(Rational(1, 3))));
    NewtonPolygon p = newton_polygon(inf, PolygonMethod::matrix);
    CHECK(p.zero_eigenvalues == zero);
    REQUIRE(p.edges.size() == 1);
    CHECK(p.edges[0].eigen_valuation == q(-1 - h, h));
    CHECK(p.edges[0].multiplicity() == nonzero);
    // the companion polygon has the same irregular part; its other branches have slope 0
    NewtonPolygon pc = newton_polygon(inf);
    int irregular_branches = 0;
    for (const auto &e : pc.edges) {
      if (e.slope == 0) continue;
      CHECK(e.eigen_valuation == q(-1 - h, h));
      irregular_branches += e.multiplicity();
    }
    CHECK(irregular_branches == nonzero);
    CHECK(irregular_exponents(inf) == irregular_exponents(inf, PolygonMethod::matrix));
    CHECK(slope(inf) == q(1, h));
    CHECK(irregularity(inf) == q(nonzero, h));
    CHECK(adjoint_irregularity(inf) == r);
  }
  auto a2 = ChevalleyAlgebra::build(CartanType::A, 2);
  CHECK(slope(change_to_infinity(frenkel_gross(a2, RepKind::adjoint, Scalar(1)))) == Rational(1, 3));
  CHECK(adjoint_irregularity(change_to_infinity(frenkel_gross(a1, RepKind::defining, Scalar(1)))) == 1);
  CHECK(adjoint_irregularity(change_to_infinity(frenkel_gross(a2, RepKind::defining, Scalar(1)))) == 2);
}

TEST_CASE("insufficient precision in the polygon") {
  // X^2 + O(s^-2) X - s^-3: the middle coefficient could move the polygon
  std::vector<LaurentSeries> c{mono(-1, -3), LaurentSeries::big_o(-2), LaurentSeries(1)};
  CHECK_THROWS_AS(newton_polygon(c), Error);
  std::vector<LaurentSeries> ok{mono(-1, -3), LaurentSeries::big_o(5), LaurentSeries(1)};
  CHECK(newton_polygon(ok).edges.size() == 1);
}

TEST_CASE("every supported type: local structure of the Frenkel-Gross connection") {
  for (CartanType t : {CartanType::A, CartanType::B, CartanType::C, CartanType::D, CartanType::G})
    for (int r = 1; r <= 4; ++r) {
      if (!is_supported(t, r)) continue;
      auto alg = ChevalleyAlgebra::build(t, r);
      CAPTURE(alg->name());
      RepKind rep = t == CartanType::G ? RepKind::adjoint : RepKind::defining;
      auto fg = frenkel_gross(alg, rep, Scalar(Rational(2, 7)));
      auto inf = change_to_infinity(fg);
      CHECK(slope(inf) == Rational(1, principal(*alg).coxeter_number));
      // the companion reduction of the big adjoint forms is slow; the FG form itself is
      // in a gauge where the matrix polygon is valid (checked against the companion above)
      PolygonMethod m = alg->dim() > 16 ? PolygonMethod::matrix : PolygonMethod::companion;
      CHECK(adjoint_irregularity(inf, m) == r);
      CHECK(monodromy_type(at_zero(fg)) == MonodromyType::unipotent_regular);
    }
}

TEST_CASE("representation independence") {
  for (auto [t, r] : kSix) {
    if (t == CartanType::G) continue;
    auto alg = ChevalleyAlgebra::build(t, r);
    for (Scalar lambda : {Scalar(1), Scalar(Rational(-3, 4))}) {
      auto d = change_to_infinity(frenkel_gross(alg, RepKind::defining, lambda));
      auto a = change_to_infinity(frenkel_gross(alg, RepKind::adjoint, lambda));
      CHECK(slope(d) == slope(a));
      CHECK(adjoint_irregularity(d) == adjoint_irregularity(a));
    }
  }
}

TEST_CASE("irregular exponents") {
  auto a1 = ChevalleyAlgebra::build(CartanType::A, 1);
  for (long l : {1L, 4L, 9L}) {
    auto ex = irregular_exponents(change_to_infinity(frenkel_gross(a1, RepKind::defining, Scalar(l))));
    REQUIRE(ex.size() == 1);
    CHECK(ex[0].exponent == Rational(-3, 2));
    CHECK(ex[0].multiplicity == 2);
    long root = l == 1 ? 1 : l == 4 ? 2 : 3;
    CHECK(ex[0].leading_coefficients == std::vector<Scalar>{Scalar(-root), Scalar(root)});
  }
  // lambda = 2: +-sqrt(2), and squaring the leading coefficient recovers lambda
  for (Rational lambda : {Rational(2), Rational(1, 3), Rational(-5)}) {
    auto ex = irregular_exponents(change_to_infinity(frenkel_gross(a1, RepKind::defining, Scalar(lambda))));
    REQUIRE(ex[0].leading_coefficients.size() == 2);
    for (const auto &c : ex[0].leading_coefficients) CHECK(c * c == Scalar(lambda));
    CHECK(ex[0].leading_coefficients[0] == -ex[0].leading_coefficients[1]);
  }
  QMatrix cst(2, 2, {Scalar(1), Scalar(3), Scalar(-2), Scalar(-1)});
  CHECK(irregular_exponents(raw(a1, RepKind::defining, Coord::t, to_series(cst))).empty());
  // a regular-singular pole has no irregular exponents either
  CHECK(irregular_exponents(at_zero(frenkel_gross(a1, RepKind::defining, Scalar(3)))).empty());
}

TEST_CASE("irregular exponents separate lambda") {
  std::vector<Rational> sample{1, 2, 3, -1, Rational(1, 2), Rational(1, 3), Rational(-2, 5), 7, Rational(9, 4), -6};
  for (auto [t, r] : kSix) {
    auto alg = ChevalleyAlgebra::build(t, r);
    RepKind rep = t == CartanType::G ? RepKind::adjoint : RepKind::defining;
    std::vector<std::vector<IrregularExponent>> inv;
    for (const auto &l : sample) inv.push_back(irregular_exponents(change_to_infinity(frenkel_gross(alg, rep, Scalar(l)))));
    for (std::size_t i = 0; i < inv.size(); ++i)
      for (std::size_t j = i + 1; j < inv.size(); ++j) CHECK(inv[i] != inv[j]);
  }
}

TEST_CASE("invariants are gauge-stable") {
  std::mt19937 rng(2024);
  for (auto [t, r] : kSix) {
    auto alg = ChevalleyAlgebra::build(t, r);
    const RepKind rep = natural_rep(t);
    auto fg = frenkel_gross(alg, rep, Scalar(3));
    auto inf = change_to_infinity(fg);
    auto zero = at_zero(fg);
    const Rational s0 = slope(inf), i0 = adjoint_irregularity(inf);
    const auto e0 = irregular_exponents(inf);
    for (int trial = 0; trial < 50; ++trial) {
      auto c = gauge_transform(inf, random_gauge(*alg, rep, rng, trial));
      CAPTURE(alg->name());
      CAPTURE(trial);
      CHECK(slope(c) == s0);
      CHECK(adjoint_irregularity(c) == i0);
      CHECK(irregular_exponents(c) == e0);
      // holomorphic gauges at 0 keep the pole simple
      auto u = random_unipotent(*alg, rep, rng);
      CHECK(monodromy_type(gauge_transform(zero, u)) == MonodromyType::unipotent_regular);
    }
  }
}

TEST_CASE("ramified pullback multiplies slopes") {
  for (auto [t, r] : kSix) {
    auto alg = ChevalleyAlgebra::build(t, r);
    int h = principal(*alg).coxeter_number;
    auto inf = change_to_infinity(frenkel_gross(alg, RepKind::adjoint, Scalar(2)));
    CHECK(slope(pullback(inf, h)) == 1);
    CHECK(slope(pullback(inf, 2)) == q(2, h));
  }
}

TEST_CASE("connection JSON round trip") {
  auto b2 = ChevalleyAlgebra::build(CartanType::B, 2);
  std::mt19937 rng(11);
  auto c = gauge_transform(change_to_infinity(frenkel_gross(b2, RepKind::defining, Scalar(Rational(1, 3)))),
                           random_unipotent(*b2, RepKind::defining, rng));
  auto j = connection_to_json(c);
  auto back = connection_from_json(j);
  CHECK(back.A == c.A);
  CHECK(back.coord == c.coord);
  CHECK(connection_to_json(back).dump() == j.dump());
  CHECK_THROWS_AS(connection_from_json(nlohmann::json::parse(R"({"rep":{"type":"A","rank":1},"coord":"t"})")), Error);
}
