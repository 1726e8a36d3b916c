#include "rigid/matrix.hpp"

#include <sstream>

#include "rigid/charpoly.hpp"

namespace rigid {

std::vector<std::size_t> row_reduce(QMatrix &m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && m(p, col).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
    Scalar inv = m(row, col).inverse();
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col).is_zero()) continue;
      Scalar f = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j)
        if (!m(row, j).is_zero()) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::size_t rank(QMatrix m) { return row_reduce(m).size(); }

std::vector<Vector> kernel(const QMatrix &m) {
  QMatrix r = m;
  auto pivots = row_reduce(r);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v(m.cols());
    v[free] = Scalar(1);
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vector> solve(const QMatrix &m, const Vector &b) {
  QMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  auto pivots = row_reduce(aug);
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
  Vector x(m.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug(i, m.cols());
  return x;
}

QMatrix inverse(const QMatrix &m) {
  if (!m.is_square()) fail(ErrorKind::invalid_argument, "inverse of a non-square matrix");
  const std::size_t n = m.rows();
  QMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = Scalar(1);
  }
  auto pivots = row_reduce(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) fail(ErrorKind::invalid_argument, "matrix is singular");
  QMatrix r(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r(i, j) = aug(i, n + j);
  return r;
}

Scalar determinant(QMatrix m) {
  if (!m.is_square()) fail(ErrorKind::invalid_argument, "determinant of a non-square matrix");
  const std::size_t n = m.rows();
  Scalar det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && m(p, col).is_zero()) ++p;
    if (p == n) return Scalar();
    if (p != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(col, j));
      det = -det;
    }
    det *= m(col, col);
    Scalar inv = m(col, col).inverse();
    for (std::size_t i = col + 1; i < n; ++i) {
      if (m(i, col).is_zero()) continue;
      Scalar f = m(i, col) * inv;
      for (std::size_t j = col; j < n; ++j)
        if (!m(col, j).is_zero()) m(i, j) -= f * m(col, j);
    }
  }
  return det;
}

Polynomial minimal_polynomial(const QMatrix &m) {
  if (!m.is_square()) fail(ErrorKind::invalid_argument, "minimal polynomial of a non-square matrix");
  const std::size_t n = m.rows();
  // Find the first power that is a combination of the lower ones.
  std::vector<Vector> powers;
  QMatrix p = QMatrix::identity(n);
  for (std::size_t k = 0; k <= n; ++k) {
    Vector flat = flatten(p);
    if (!powers.empty()) {
      QMatrix basis = from_columns(powers, n * n);
      if (auto coeffs = solve(basis, flat)) {
        std::vector<Scalar> c(k + 1);
        for (std::size_t i = 0; i < k; ++i) c[i] = -(*coeffs)[i];
        c[k] = Scalar(1);
        return Polynomial(std::move(c));
      }
    }
    powers.push_back(std::move(flat));
    p = p * m;
  }
  fail(ErrorKind::invalid_argument, "minimal polynomial search exceeded the dimension");
}

Polynomial characteristic_polynomial(const QMatrix &m) { return Polynomial(berkowitz(m)); }

QMatrix from_columns(const std::vector<Vector> &cols, std::size_t height) {
  QMatrix r(height, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < height; ++i) r(i, j) = cols[j][i];
  return r;
}

Vector flatten(const QMatrix &m) { return m.data(); }

Vector mat_vec(const QMatrix &m, const Vector &v) {
  Vector r(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero() && !v[j].is_zero()) r[i] += m(i, j) * v[j];
  return r;
}

std::string to_string(const QMatrix &m) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j);
    os << "]";
  }
  os << "]";
  return os.str();
}

}  // namespace rigid
