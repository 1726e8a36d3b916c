#include <doctest.h>

#include <algorithm>
#include <set>

#include "rigid/principal.hpp"

using namespace rigid;

namespace {

struct Case {
  CartanType type;
  int rank;
};

const std::vector<Case> kAll = {{CartanType::A, 1}, {CartanType::A, 2}, {CartanType::A, 3}, {CartanType::A, 4},
                                {CartanType::B, 2}, {CartanType::B, 3}, {CartanType::B, 4}, {CartanType::C, 2},
                                {CartanType::C, 3}, {CartanType::C, 4}, {CartanType::D, 4}, {CartanType::G, 2}};

// Roots as the Weyl-group orbit of the simple roots.
std::set<Root> weyl_orbit_roots(const std::vector<std::vector<int>> &a) {
  const int l = static_cast<int>(a.size());
  std::set<Root> seen;
  std::vector<Root> stack;
  for (int i = 0; i < l; ++i) {
    Root r(l, 0);
    r[i] = 1;
    stack.push_back(r);
  }
  while (!stack.empty()) {
    Root r = stack.back();
    stack.pop_back();
    if (!seen.insert(r).second) continue;
    for (int i = 0; i < l; ++i) {
      int pair = 0;
      for (int j = 0; j < l; ++j) pair += r[j] * a[i][j];
      Root s = r;
      s[i] -= pair;
      stack.push_back(s);
    }
  }
  return seen;
}

bool is_integral(const Scalar &s) { return s.is_rational() && s.rational().get_den() == 1; }

std::vector<int> expected_degrees(CartanType t, int n) {
  std::vector<int> d;
  switch (t) {
    case CartanType::A: for (int i = 2; i <= n + 1; ++i) d.push_back(i); break;
    case CartanType::B:
    case CartanType::C: for (int i = 1; i <= n; ++i) d.push_back(2 * i); break;
    case CartanType::D: d = {2, 4, 4, 6}; break;
    case CartanType::G: d = {2, 6}; break;
  }
  return d;
}

}  // namespace

TEST_CASE("small examples") {
  auto a1 = ChevalleyAlgebra::build(CartanType::A, 1);
  CHECK(a1->dim() == 3);
  CHECK(a1->root_system().roots() == std::vector<Root>{{1}, {-1}});

  auto g2 = ChevalleyAlgebra::build(CartanType::G, 2);
  CHECK(g2->dim() == 14);
  CHECK(g2->root_system().roots().size() == 12);

  auto a2 = ChevalleyAlgebra::build(CartanType::A, 2);
  CHECK(a2->dim() == 8);
  CHECK(a2->root_system().highest_root() == Root{1, 1});

  CHECK_THROWS_AS(ChevalleyAlgebra::build(CartanType::D, 3), Error);
  CHECK_THROWS_AS(ChevalleyAlgebra::build(CartanType::G, 3), Error);
  // 7-dimensional, a Lie algebra homomorphism, and faithful
  const auto &seven = g2->defining();
  CHECK(seven.dim == 7);
  for (std::size_t j = 0; j < g2->dim(); ++j)
    for (std::size_t k = 0; k < g2->dim(); ++k) {
      QMatrix want(7, 7);
      for (const auto &[i, c] : g2->structure(j, k)) want = want + seven.images[i].scaled(c);
      CHECK(commutator(seven.images[j], seven.images[k]) == want);
    }
  std::vector<Vector> flat;
  for (const auto &x : seven.images) flat.push_back(flatten(x));
  CHECK(rank(from_columns(flat, 49)) == 14);
}

TEST_CASE("root systems agree with the Weyl orbit oracle") {
  for (auto c : kAll) {
    CAPTURE(algebra_name(c.type, c.rank));
    auto alg = ChevalleyAlgebra::build(c.type, c.rank);
    const auto &rs = alg->root_system();
    auto orbit = weyl_orbit_roots(rs.cartan_matrix());
    auto roots = rs.roots();
    CHECK(std::set<Root>(roots.begin(), roots.end()) == orbit);
    CHECK(roots.size() == 2 * rs.positive_roots().size());
    // unique root of maximal height
    int top = height(rs.highest_root());
    CHECK(std::count_if(roots.begin(), roots.end(), [&](const Root &r) { return height(r) == top; }) == 1);
    for (int i = 0; i < c.rank; ++i)
      for (int j = 0; j < c.rank; ++j) {
        if (i == j) CHECK(rs.cartan_matrix()[i][j] == 2);
        else CHECK(rs.cartan_matrix()[i][j] <= 0);
      }
    CHECK(alg->dim() == static_cast<std::size_t>(c.rank) + roots.size());
  }
}

TEST_CASE("Jacobi identity on all basis triples") {
  for (auto c : kAll) {
    if (c.rank > 3 && c.type != CartanType::A) continue;  // the representation check below covers the rest
    CAPTURE(algebra_name(c.type, c.rank));
    auto alg = ChevalleyAlgebra::build(c.type, c.rank);
    const std::size_t n = alg->dim();
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a)
      for (std::size_t b = a + 1; b < n && ok; ++b)
        for (std::size_t d = b + 1; d < n && ok; ++d) {
          Vector x = alg->basis_vector(a), y = alg->basis_vector(b), z = alg->basis_vector(d);
          Vector s = alg->bracket(x, alg->bracket(y, z));
          Vector t = alg->bracket(y, alg->bracket(z, x));
          Vector u = alg->bracket(z, alg->bracket(x, y));
          for (std::size_t k = 0; k < n; ++k)
            if (!(s[k] + t[k] + u[k]).is_zero()) ok = false;
        }
    CHECK(ok);
  }
}

TEST_CASE("adjoint and construction matrices are representations") {
  for (auto c : kAll) {
    CAPTURE(algebra_name(c.type, c.rank));
    auto alg = ChevalleyAlgebra::build(c.type, c.rank);
    const std::size_t n = alg->dim();
    bool ok = true;
    for (const Representation *rep : {&alg->adjoint(), &alg->construction()})
      for (std::size_t a = 0; a < n && ok; ++a)
        for (std::size_t b = 0; b < n && ok; ++b) {
          QMatrix lhs = rep->image(alg->bracket(alg->basis_vector(a), alg->basis_vector(b)));
          if (lhs != commutator(rep->images[a], rep->images[b])) ok = false;
        }
    CHECK(ok);
    // faithfulness: images are linearly independent
    QMatrix m(n, alg->construction().dim * alg->construction().dim);
    for (std::size_t a = 0; a < n; ++a) {
      Vector f = flatten(alg->construction().images[a]);
      for (std::size_t k = 0; k < f.size(); ++k) m(a, k) = f[k];
    }
    CHECK(rank(m) == n);
  }
}

TEST_CASE("defining representations preserve their forms") {
  for (auto c : kAll) {
    if (c.type == CartanType::A || c.type == CartanType::G) continue;
    CAPTURE(algebra_name(c.type, c.rank));
    auto alg = ChevalleyAlgebra::build(c.type, c.rank);
    const std::size_t N = alg->defining().dim;
    QMatrix J(N, N);
    for (std::size_t i = 0; i < N; ++i)
      J(i, N - 1 - i) = Scalar((c.type == CartanType::C && i >= N / 2) ? -1 : 1);
    for (const auto &x : alg->defining().images) CHECK((x.transpose() * J + J * x).is_zero_matrix());
  }
}

TEST_CASE("Chevalley basis properties") {
  for (auto c : kAll) {
    CAPTURE(algebra_name(c.type, c.rank));
    auto alg = ChevalleyAlgebra::build(c.type, c.rank);
    const auto &rs = alg->root_system();
    for (std::size_t a = 0; a < alg->dim(); ++a)
      for (std::size_t b = 0; b < alg->dim(); ++b)
        for (const auto &[i, s] : alg->structure(a, b)) CHECK(is_integral(s));
    for (const Root &r : rs.positive_roots()) {
      Root neg = r;
      for (auto &x : neg) x = -x;
      Vector h = alg->bracket(alg->basis_vector(alg->root_index(r)), alg->basis_vector(alg->root_index(neg)));
      for (std::size_t k = c.rank; k < alg->dim(); ++k) CHECK(h[k].is_zero());
      CHECK(alg->root_value(r, h) == Scalar(2));
    }
    // N_{alpha,beta} = +-(p+1)
    for (const Root &a : rs.roots())
      for (const Root &b : rs.roots()) {
        Root s = a;
        for (int i = 0; i < c.rank; ++i) s[i] += b[i];
        if (!rs.is_root(s)) continue;
        int p = 0;
        Root down = b;
        while (true) {
          for (int i = 0; i < c.rank; ++i) down[i] -= a[i];
          if (!rs.is_root(down)) break;
          ++p;
        }
        Vector v = alg->bracket(alg->basis_vector(alg->root_index(a)), alg->basis_vector(alg->root_index(b)));
        Scalar n = v[alg->root_index(s)];
        CHECK((n == Scalar(p + 1) || n == Scalar(-(p + 1))));
      }
  }
}

TEST_CASE("principal data") {
  for (auto c : kAll) {
    CAPTURE(algebra_name(c.type, c.rank));
    auto alg = ChevalleyAlgebra::build(c.type, c.rank);
    const auto &pd = principal(*alg);
    CHECK(pd.degrees == expected_degrees(c.type, c.rank));
    CHECK(pd.coxeter_number == pd.degrees.back());
    // number of positive roots equals the sum of exponents
    int sum = 0;
    for (int d : pd.degrees) sum += d - 1;
    CHECK(static_cast<std::size_t>(sum) == alg->positive_count());
    auto scaled = [](Vector v, long s) {
      for (auto &x : v) x *= Scalar(s);
      return v;
    };
    CHECK(alg->bracket(pd.two_rho_check, pd.p_minus1) == scaled(pd.p_minus1, -2));
    CHECK(alg->bracket(pd.two_rho_check, pd.p1) == scaled(pd.p1, 2));
    CHECK(alg->bracket(pd.p1, pd.p_minus1) == pd.two_rho_check);
    for (std::size_t i = 0; i < pd.kostant_basis.size(); ++i) {
      const Vector &p = pd.kostant_basis[i];
      CHECK(alg->bracket(pd.p1, p) == alg->zero());
      CHECK(alg->bracket(pd.rho_check, p) == scaled(p, pd.degrees[i] - 1));
    }
    CHECK(pd.kostant_basis.front() == pd.p1);
    std::size_t theta = alg->root_index(alg->root_system().highest_root());
    CHECK(pd.kostant_basis.back() == alg->basis_vector(theta));
    CHECK(alg->root_value(alg->root_system().highest_root(), pd.rho_check) == Scalar(pd.coxeter_number - 1));
    // deterministic
    PrincipalData again = principal_data(*alg);
    CHECK(again.kostant_basis == pd.kostant_basis);
    CHECK(algebra_to_json(*alg).dump() == algebra_to_json(*ChevalleyAlgebra::build(c.type, c.rank)).dump());
  }
  CHECK(principal(*ChevalleyAlgebra::build(CartanType::A, 1)).degrees == std::vector<int>{2});
  CHECK(principal(*ChevalleyAlgebra::build(CartanType::A, 2)).coxeter_number == 3);
  CHECK(principal(*ChevalleyAlgebra::build(CartanType::G, 2)).degrees == std::vector<int>{2, 6});
}

TEST_CASE("regular semisimple and principal nilpotent checks") {
  for (auto c : kAll) {
    CAPTURE(algebra_name(c.type, c.rank));
    auto alg = ChevalleyAlgebra::build(c.type, c.rank);
    const auto &pd = principal(*alg);
    CHECK(regular_semisimple_check(*alg, cyclic_element(*alg)));
    CHECK_FALSE(regular_semisimple_check(*alg, pd.p_minus1));
    CHECK_FALSE(regular_semisimple_check(*alg, alg->zero()));
    CHECK(nilpotent_is_principal(*alg, pd.p_minus1));
    CHECK_FALSE(nilpotent_is_principal(*alg, alg->zero()));
    Vector e = alg->basis_vector(alg->root_index(alg->root_system().highest_root()));
    if (c.rank >= 2) CHECK_FALSE(nilpotent_is_principal(*alg, e));
    CHECK_FALSE(nilpotent_is_principal(*alg, cyclic_element(*alg)));
  }
}

TEST_CASE("Coxeter element and the torus element on the centralizer") {
  auto a1 = ChevalleyAlgebra::build(CartanType::A, 1);
  CHECK(coxeter_matrix(*a1) == QMatrix(1, 1, {Scalar(-1)}));
  for (auto c : kAll) {
    CAPTURE(algebra_name(c.type, c.rank));
    auto alg = ChevalleyAlgebra::build(c.type, c.rank);
    const auto &pd = principal(*alg);
    QMatrix w = coxeter_matrix(*alg);
    CHECK(coxeter_fixed_space(*alg) == 0);
    CHECK(!determinant(w - QMatrix::identity(c.rank)).is_zero());
    // w has order h
    QMatrix p = QMatrix::identity(c.rank);
    for (int k = 1; k <= pd.coxeter_number; ++k) {
      p = p * w;
      if (k < pd.coxeter_number) CHECK(p != QMatrix::identity(c.rank));
    }
    CHECK(p == QMatrix::identity(c.rank));
    CHECK(torus_fixed_space(*alg) == 0);
    // eigenvalues zeta_h^(d_i - 1) on both sides
    Scalar z = Scalar::root_of_unity(pd.coxeter_number);
    Polynomial expected(std::vector<Scalar>{Scalar(1)});
    for (int d : pd.degrees) expected = expected * Polynomial(std::vector<Scalar>{-z.pow(d - 1), Scalar(1)});
    CHECK(characteristic_polynomial(w) == expected);
    CHECK(characteristic_polynomial(torus_action_on_centralizer(*alg)) == expected);
  }
}
