#pragma once

#include <vector>

#include "rigid/matrix.hpp"

namespace rigid {

/// Coefficients of det(X - a), constant term first (monic, length n+1).
/// Division-free (Berkowitz), so it works over any commutative ring,
/// including truncated Laurent series where it tracks precision honestly.
template <typename T>
std::vector<T> berkowitz(const Matrix<T> &a) {
  if (!a.is_square()) fail(ErrorKind::invalid_argument, "characteristic polynomial of a non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return {T(1)};
  std::vector<T> vec{T(1), -a(0, 0)};  // highest degree first
  for (std::size_t r = 1; r < n; ++r) {
    std::vector<T> col(r + 2);
    col[0] = T(1);
    col[1] = -a(r, r);
    std::vector<T> w(r);
    for (std::size_t i = 0; i < r; ++i) w[i] = a(i, r);
    for (std::size_t k = 0; k < r; ++k) {
      T q{};
      for (std::size_t j = 0; j < r; ++j)
        if (!is_zero(a(r, j)) && !is_zero(w[j])) q += a(r, j) * w[j];
      col[k + 2] = -q;
      if (k + 1 < r) {
        std::vector<T> next(r);
        for (std::size_t i = 0; i < r; ++i)
          for (std::size_t j = 0; j < r; ++j)
            if (!is_zero(a(i, j)) && !is_zero(w[j])) next[i] += a(i, j) * w[j];
        w = std::move(next);
      }
    }
    std::vector<T> out(r + 2);
    for (std::size_t i = 0; i < r + 2; ++i)
      for (std::size_t j = 0; j <= std::min(i, r); ++j)
        if (!is_zero(col[i - j]) && !is_zero(vec[j])) out[i] += col[i - j] * vec[j];
    vec = std::move(out);
  }
  return std::vector<T>(vec.rbegin(), vec.rend());
}

}  // namespace rigid
