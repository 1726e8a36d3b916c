#pragma once

// Opers in canonical form d + (p_-1 + sum v_i p_i) dt, the reduction of a
// Borel-gauge connection to that form, and pole/residue membership tests.

#include <json.hpp>
#include <functional>
#include <optional>

#include "rigid/connection.hpp"

namespace rigid {

struct OperForm {
  AlgebraPtr alg;
  Coord coord = Coord::t;
  /// v_1..v_l, paired with the Kostant basis p_1..p_l.
  std::vector<LaurentSeries> v;
};

/// p_-1 + sum v_i p_i as a Lie-algebra element with series coefficients.
SeriesVector oper_element(const OperForm &oper);
FormalConnection assemble(const OperForm &oper, RepKind rep);

/// Reduce a connection whose form lies in psi * p_-1 + b((t)) (psi_i units) to
/// canonical form. Throws not_an_oper when the negative part is not of that shape.
/// `order` bounds the expansion of inverses of non-monomial psi_i.
OperForm canonicalize(const FormalConnection &c, int order = LaurentSeries::kDefaultOrder);

/// sup(0, sup_i(-ord v_i / d_i - 1)).
Rational oper_slope(const OperForm &oper);

// ---- residue classes ----

/// Values of generating invariant polynomials at x: characteristic polynomial
/// coefficients in the construction representation, plus the Pfaffian for type D.
std::vector<Scalar> invariant_values(const ChevalleyAlgebra &alg, const Vector &x);
/// sum_i c_i omega_check_i, i.e. the Cartan element with alpha_i(x) = c_i.
Vector coweight_element(const ChevalleyAlgebra &alg, const std::vector<Rational> &c);
/// p_-1 + sum (v_{i,d_i-1} + [i = 1]/4) p_i, v_{i,d_i-1} being the t^-d_i coefficient.
Vector kostant_residue(const OperForm &oper);
std::vector<Scalar> residue_class(const OperForm &oper);

enum class OperVariant { full_disk_punctured, regular_singular, regular, slope_at_most_one_over_h };
std::string oper_variant_name(OperVariant v);

struct OperSpaceSpec {
  OperVariant variant = OperVariant::full_disk_punctured;
  /// Target invariant values (regular_singular and regular).
  std::vector<Scalar> residue_class;
  /// Dominant integral weight in fundamental coordinates (regular only).
  std::vector<int> weight;

  static OperSpaceSpec punctured();
  /// Residue class of the Cartan element sum c_i omega_check_i.
  static OperSpaceSpec regular_singular(const ChevalleyAlgebra &alg, const std::vector<Rational> &c);
  /// Residue class of -(weight + rho); weight must be dominant integral.
  static OperSpaceSpec regular(const ChevalleyAlgebra &alg, const std::vector<int> &weight);
  static OperSpaceSpec slope_bounded();
};

bool membership(const OperForm &oper, const OperSpaceSpec &spec);

/// lambda_0 = nu - rho with nu dominant integral, |nu_i| <= bound, such that the
/// residue class of the oper is that of -(lambda_0 + rho) = -nu.
std::optional<std::vector<int>> integral_residue_weight(const OperForm &oper, int bound = 4);

nlohmann::json oper_to_json(const OperForm &oper);
OperForm oper_from_json(const nlohmann::json &j);

}  // namespace rigid
