#include "rigid/sl2.hpp"

namespace rigid {

namespace {

// Span closure of {1} under right multiplication by the generators.
std::vector<QMatrix> generated_algebra(const std::vector<QMatrix> &gens, std::size_t n) {
  std::vector<QMatrix> basis;
  QMatrix reduced(0, n * n);  // row echelon copy of the flattened basis
  auto try_add = [&](const QMatrix &m) {
    QMatrix stacked(reduced.rows() + 1, n * n);
    for (std::size_t r = 0; r < reduced.rows(); ++r)
      for (std::size_t c = 0; c < n * n; ++c) stacked(r, c) = reduced(r, c);
    for (std::size_t c = 0; c < n * n; ++c) stacked(reduced.rows(), c) = m.data()[c];
    if (rank(stacked) == reduced.rows()) return false;
    reduced = std::move(stacked);
    basis.push_back(m);
    return true;
  };
  try_add(QMatrix::identity(n));
  for (std::size_t k = 0; k < basis.size(); ++k)
    for (const auto &g : gens) try_add(basis[k] * g);
  return basis;
}

}  // namespace

Sl2WeylData sl2_weyl_data(int n) {
  if (n < 0) fail(ErrorKind::invalid_argument, "highest weight must be nonnegative");
  const std::size_t dim = n + 1;
  Sl2WeylData d;
  d.highest_weight = n;
  d.e = QMatrix(dim, dim);
  d.f = QMatrix(dim, dim);
  d.h = QMatrix(dim, dim);
  for (int k = 0; k <= n; ++k) {
    d.h(k, k) = Scalar(n - 2 * k);
    if (k < n) d.f(k + 1, k) = Scalar(k + 1);
    if (k > 0) d.e(k - 1, k) = Scalar(n - k + 1);
  }
  // ef + fe + h^2 / 2
  d.casimir = d.e * d.f + d.f * d.e;
  QMatrix h2 = d.h * d.h;
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) d.casimir(i, j) += h2(i, j) * Scalar(Rational(1, 2));

  d.algebra_basis = generated_algebra({d.f, d.casimir}, dim);
  d.commutative = true;
  for (std::size_t a = 0; a < d.algebra_basis.size() && d.commutative; ++a)
    for (std::size_t b = 0; b < a; ++b)
      if (d.algebra_basis[a] * d.algebra_basis[b] != d.algebra_basis[b] * d.algebra_basis[a]) {
        d.commutative = false;
        break;
      }

  // the highest weight vector is the candidate
  Vector v(dim);
  v[0] = Scalar(1);
  QMatrix orbit(dim, d.algebra_basis.size());
  for (std::size_t c = 0; c < d.algebra_basis.size(); ++c) {
    Vector w = mat_vec(d.algebra_basis[c], v);
    for (std::size_t r = 0; r < dim; ++r) orbit(r, c) = w[r];
  }
  d.orbit_rank = rank(orbit);
  if (d.orbit_rank == d.algebra_basis.size()) d.cyclic_vector = v;
  return d;
}

}  // namespace rigid
