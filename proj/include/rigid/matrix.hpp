#pragma once

// Dense row-major matrices over an exact ring, with field elimination helpers.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rigid/error.hpp"
#include "rigid/polynomial.hpp"
#include "rigid/scalar.hpp"

namespace rigid {

template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows * cols) fail(ErrorKind::invalid_argument, "matrix data has the wrong size");
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  T &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T &operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  const std::vector<T> &data() const { return data_; }

  Matrix &operator+=(const Matrix &o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix &operator-=(const Matrix &o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix &b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix &b) { return a -= b; }
  Matrix operator-() const {
    Matrix r = *this;
    for (auto &x : r.data_) x = -x;
    return r;
  }

  friend Matrix operator*(const Matrix &a, const Matrix &b) {
    if (a.cols_ != b.rows_) fail(ErrorKind::invalid_argument, "matrix product shape mismatch");
    Matrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T &x = a(i, k);
        if (is_zero(x)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const T &y = b(k, j);
          if (is_zero(y)) continue;
          r(i, j) += x * y;
        }
      }
    return r;
  }

  template <typename S>
  Matrix scaled(const S &s) const {
    Matrix r = *this;
    for (auto &x : r.data_) x = x * s;
    return r;
  }

  Matrix transpose() const {
    Matrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  bool is_zero_matrix() const {
    for (const auto &x : data_)
      if (!is_zero(x)) return false;
    return true;
  }

  friend bool operator==(const Matrix &a, const Matrix &b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const Matrix &a, const Matrix &b) { return !(a == b); }

 private:
  void check_same(const Matrix &o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) fail(ErrorKind::invalid_argument, "matrix shape mismatch");
  }

  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

using QMatrix = Matrix<Scalar>;
using Vector = std::vector<Scalar>;

inline Matrix<Scalar> commutator(const Matrix<Scalar> &a, const Matrix<Scalar> &b) { return a * b - b * a; }

/// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> row_reduce(QMatrix &m);
std::size_t rank(QMatrix m);
/// Basis of the right kernel, one vector per free column (RREF normalisation).
std::vector<Vector> kernel(const QMatrix &m);
/// Some solution of m x = b, or nullopt when inconsistent.
std::optional<Vector> solve(const QMatrix &m, const Vector &b);
QMatrix inverse(const QMatrix &m);
Scalar determinant(QMatrix m);
/// Monic minimal polynomial of a square matrix.
Polynomial minimal_polynomial(const QMatrix &m);
/// det(X - m) via the division-free Berkowitz recursion.
Polynomial characteristic_polynomial(const QMatrix &m);
/// Stack column vectors into a matrix.
QMatrix from_columns(const std::vector<Vector> &cols, std::size_t height);
Vector flatten(const QMatrix &m);
Vector mat_vec(const QMatrix &m, const Vector &v);
std::string to_string(const QMatrix &m);

}  // namespace rigid
