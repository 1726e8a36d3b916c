#include "rigid/principal.hpp"

#include <map>
#include <mutex>

#include "rigid/serialize.hpp"

namespace rigid {

namespace {

Vector add(Vector a, const Vector &b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

Vector scale(Vector a, const Scalar &s) {
  for (auto &x : a) x *= s;
  return a;
}

}  // namespace

PrincipalData principal_data(const ChevalleyAlgebra &alg) {
  const int l = alg.rank();
  const auto &A = alg.root_system().cartan_matrix();
  PrincipalData pd;

  pd.p_minus1 = alg.zero();
  for (int i = 0; i < l; ++i) {
    Root r(l, 0);
    r[i] = -1;
    pd.p_minus1[alg.root_index(r)] = Scalar(1);
  }

  // sum_i c_i a_ij = 1 for every j
  QMatrix At(l, l);
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j) At(j, i) = Scalar(A[i][j]);
  auto c = solve(At, Vector(l, Scalar(1)));
  if (!c) fail(ErrorKind::invalid_argument, "singular Cartan matrix");
  pd.rho_check = alg.zero();
  for (int i = 0; i < l; ++i) pd.rho_check[i] = (*c)[i];
  pd.two_rho_check = scale(pd.rho_check, Scalar(2));
  pd.p1 = alg.zero();
  for (int i = 0; i < l; ++i) pd.p1[alg.root_index(alg.root_system().simple_root(i))] = Scalar(2) * (*c)[i];

  // centralizer of p1 in n, height by height
  const QMatrix ad_p1 = alg.ad(pd.p1);
  const int top = height(alg.root_system().highest_root());
  for (int k = 1; k <= top; ++k) {
    std::vector<std::size_t> src, dst;
    for (std::size_t b = alg.rank(); b < alg.dim(); ++b) {
      if (alg.basis_height(b) == k) src.push_back(b);
      if (alg.basis_height(b) == k + 1) dst.push_back(b);
    }
    std::vector<Vector> ker;
    if (dst.empty()) {
      for (std::size_t s = 0; s < src.size(); ++s) {
        Vector v(src.size());
        v[s] = Scalar(1);
        ker.push_back(v);
      }
    } else {
      QMatrix block(dst.size(), src.size());
      for (std::size_t a = 0; a < dst.size(); ++a)
        for (std::size_t s = 0; s < src.size(); ++s) block(a, s) = ad_p1(dst[a], src[s]);
      ker = kernel(block);
    }
    for (const auto &kv : ker) {
      Vector v = alg.zero();
      for (std::size_t s = 0; s < src.size(); ++s) v[src[s]] = kv[s];
      if (k == 1) v = pd.p1;
      if (k == top) v = alg.basis_vector(alg.root_index(alg.root_system().highest_root()));
      pd.kostant_basis.push_back(v);
      pd.degrees.push_back(k + 1);
    }
  }
  if (static_cast<int>(pd.kostant_basis.size()) != l)
    fail(ErrorKind::invalid_argument, "centralizer of p1 has the wrong dimension");
  pd.coxeter_number = pd.degrees.back();
  return pd;
}

const PrincipalData &principal(const ChevalleyAlgebra &alg) {
  static std::mutex mu;
  static std::map<std::string, std::unique_ptr<PrincipalData>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto &slot = cache[alg.name()];
  if (!slot) slot = std::make_unique<PrincipalData>(principal_data(alg));
  return *slot;
}

Vector cyclic_element(const ChevalleyAlgebra &alg) {
  Vector x = principal(alg).p_minus1;
  x[alg.root_index(alg.root_system().highest_root())] += Scalar(1);
  return x;
}

bool regular_semisimple_check(const ChevalleyAlgebra &alg, const Vector &x) {
  QMatrix ad = alg.ad(x);
  if (kernel(ad).size() != static_cast<std::size_t>(alg.rank())) return false;
  return minimal_polynomial(ad).is_squarefree();
}

bool nilpotent_is_principal(const ChevalleyAlgebra &alg, const Vector &x) {
  QMatrix ad = alg.ad(x);
  Polynomial chi = characteristic_polynomial(ad);
  if (chi != Polynomial::monomial(Scalar(1), static_cast<int>(alg.dim()))) return false;
  return kernel(ad).size() == static_cast<std::size_t>(alg.rank());
}

QMatrix coxeter_matrix(const ChevalleyAlgebra &alg) {
  const int l = alg.rank();
  const auto &A = alg.root_system().cartan_matrix();
  QMatrix w = QMatrix::identity(l);
  for (int i = 0; i < l; ++i) {
    // s_i(h_j) = h_j - alpha_i(h_j) h_i
    QMatrix s = QMatrix::identity(l);
    for (int j = 0; j < l; ++j) s(i, j) -= Scalar(A[j][i]);
    w = w * s;
  }
  return w;
}

std::size_t coxeter_fixed_space(const ChevalleyAlgebra &alg) {
  const int l = alg.rank();
  return kernel(coxeter_matrix(alg) - QMatrix::identity(l)).size();
}

QMatrix torus_action_on_centralizer(const ChevalleyAlgebra &alg) {
  const int h = principal(alg).coxeter_number;
  const Scalar zeta = Scalar::root_of_unity(h);
  auto cent = kernel(alg.ad(cyclic_element(alg)));
  const std::size_t m = cent.size();
  QMatrix basis = from_columns(cent, alg.dim());
  // 2rho_check(exp(pi i/h)) scales E_alpha by zeta_h^height(alpha)
  std::vector<Vector> images;
  for (const auto &v : cent) {
    Vector w = v;
    for (std::size_t k = 0; k < w.size(); ++k)
      if (!w[k].is_zero()) {
        int ht = ((alg.basis_height(k) % h) + h) % h;
        w[k] *= zeta.pow(ht);
      }
    auto c = solve(basis, w);
    if (!c) fail(ErrorKind::invalid_argument, "torus element does not preserve the centralizer");
    images.push_back(*c);
  }
  return from_columns(images, m);
}

std::size_t torus_fixed_space(const ChevalleyAlgebra &alg) {
  QMatrix t = torus_action_on_centralizer(alg);
  return kernel(t - QMatrix::identity(t.rows())).size();
}

nlohmann::json algebra_to_json(const ChevalleyAlgebra &alg) {
  using nlohmann::json;
  const auto &rs = alg.root_system();
  const auto &pd = principal(alg);
  json j;
  j["type"] = std::string(1, type_letter(alg.type()));
  j["rank"] = alg.rank();
  j["dim"] = alg.dim();
  j["cartan_matrix"] = rs.cartan_matrix();
  j["positive_roots"] = rs.positive_roots();
  j["highest_root"] = rs.highest_root();
  json sc = json::array();
  for (std::size_t a = 0; a < alg.dim(); ++a)
    for (std::size_t b = a + 1; b < alg.dim(); ++b)
      for (const auto &[i, c] : alg.structure(a, b)) sc.push_back({a, b, i, rational_to_json(c.rational())});
  j["structure_constants"] = sc;
  auto vec = [](const Vector &v) {
    json out = json::array();
    for (const auto &x : v) out.push_back(rational_to_json(x.rational()));
    return out;
  };
  json kb = json::array();
  for (const auto &p : pd.kostant_basis) kb.push_back(vec(p));
  j["principal"] = {{"p_minus1", vec(pd.p_minus1)},
                    {"two_rho_check", vec(pd.two_rho_check)},
                    {"p1", vec(pd.p1)},
                    {"kostant_basis", kb},
                    {"degrees", pd.degrees},
                    {"coxeter_number", pd.coxeter_number}};
  return j;
}

}  // namespace rigid
