#pragma once

// Principal sl2 triple, Kostant basis, degrees, and the finite checks on
// regular elements and Coxeter elements.

#include <json.hpp>

#include "rigid/chevalley.hpp"

namespace rigid {

struct PrincipalData {
  Vector p_minus1;       // sum of negative simple root vectors
  Vector rho_check;      // alpha_i(rho_check) = 1
  Vector two_rho_check;
  Vector p1;             // completes the triple
  std::vector<Vector> kostant_basis;  // p_1..p_l; p_1 as above, p_l = E_theta
  std::vector<int> degrees;           // d_i, ascending
  int coxeter_number = 0;
};

PrincipalData principal_data(const ChevalleyAlgebra &alg);
/// Cached per algebra.
const PrincipalData &principal(const ChevalleyAlgebra &alg);

/// N + E_theta.
Vector cyclic_element(const ChevalleyAlgebra &alg);

bool regular_semisimple_check(const ChevalleyAlgebra &alg, const Vector &x);
bool nilpotent_is_principal(const ChevalleyAlgebra &alg, const Vector &x);

/// Matrix of s_1 s_2 ... s_l on the Cartan in the basis h_1..h_l.
QMatrix coxeter_matrix(const ChevalleyAlgebra &alg);
/// dim ker(w - 1) for the Coxeter element above.
std::size_t coxeter_fixed_space(const ChevalleyAlgebra &alg);

/// Action of Ad(2rho_check(exp(pi i / h))) on the centralizer of N + E_theta,
/// written in a rational basis of the centralizer; entries lie in Q(zeta_h).
QMatrix torus_action_on_centralizer(const ChevalleyAlgebra &alg);
std::size_t torus_fixed_space(const ChevalleyAlgebra &alg);

nlohmann::json algebra_to_json(const ChevalleyAlgebra &alg);

}  // namespace rigid
