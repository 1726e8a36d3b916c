#pragma once

// The irreducible sl2 modules V_n and the image of the commutative algebra
// generated by f and the Casimir.

#include "rigid/matrix.hpp"

namespace rigid {

struct Sl2WeylData {
  int highest_weight = 0;
  QMatrix e, f, h, casimir;
  /// Basis of the unital algebra generated by f and the Casimir inside End(V).
  std::vector<QMatrix> algebra_basis;
  bool commutative = false;
  /// v with {a v : a in algebra_basis} independent, when one was found.
  std::optional<Vector> cyclic_vector;
  std::size_t orbit_rank = 0;
};

/// Basis v_0..v_n: h v_k = (n - 2k) v_k, f v_k = (k + 1) v_{k+1}, e v_k = (n - k + 1) v_{k-1}.
Sl2WeylData sl2_weyl_data(int n);

}  // namespace rigid
