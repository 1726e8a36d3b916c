#include <doctest.h>

#include "rigid/sl2.hpp"

using namespace rigid;

TEST_CASE("module relations") {
  for (int n : {0, 1, 2, 5, 12}) {
    auto d = sl2_weyl_data(n);
    CAPTURE(n);
    QMatrix two_e = d.e + d.e, two_f = d.f + d.f;
    CHECK(d.h * d.e - d.e * d.h == two_e);
    CHECK(d.h * d.f - d.f * d.h == -two_f);
    CHECK(d.e * d.f - d.f * d.e == d.h);
    // Casimir acts by n(n+2)/2
    QMatrix c = QMatrix::identity(n + 1);
    for (int k = 0; k <= n; ++k) c(k, k) = Scalar(Rational(n * (n + 2), 2));
    CHECK(d.casimir == c);
  }
}

TEST_CASE("small cases") {
  auto d0 = sl2_weyl_data(0);
  CHECK(d0.algebra_basis.size() == 1);
  CHECK(d0.cyclic_vector);
  auto d1 = sl2_weyl_data(1);
  REQUIRE(d1.algebra_basis.size() == 2);
  // span{1, f}
  CHECK(d1.algebra_basis[0] == QMatrix::identity(2));
  QMatrix m(4, 3);
  for (std::size_t k = 0; k < 4; ++k) {
    m(k, 0) = QMatrix::identity(2).data()[k];
    m(k, 1) = d1.f.data()[k];
    m(k, 2) = d1.algebra_basis[1].data()[k];
  }
  CHECK(rank(m) == 2);
  CHECK(d1.cyclic_vector);
  CHECK_THROWS_AS(sl2_weyl_data(-1), Error);
}

TEST_CASE("rank one freeness up to 40") {
  for (int n = 0; n <= 40; ++n) {
    auto d = sl2_weyl_data(n);
    CAPTURE(n);
    CHECK(d.commutative);
    CHECK(d.algebra_basis.size() == static_cast<std::size_t>(n + 1));
    CHECK(d.cyclic_vector);
    CHECK(d.orbit_rank == static_cast<std::size_t>(n + 1));
  }
  // oracle: f^k v_0 = k! v_k, so the orbit of the highest weight vector is a basis
  auto d = sl2_weyl_data(10);
  QMatrix orbit(11, 11);
  Vector v(11);
  v[0] = Scalar(1);
  for (int k = 0; k <= 10; ++k) {
    for (int r = 0; r <= 10; ++r) orbit(r, k) = v[r];
    v = mat_vec(d.f, v);
  }
  CHECK(rank(orbit) == 11);
}
