#pragma once

// Slopes, irregularity and leading irregular exponents from Newton polygons of
// characteristic polynomials (of a companion form, or of the matrix itself).

#include <json.hpp>

#include "rigid/connection.hpp"

namespace rigid {

struct NewtonEdge {
  int k_from = 0, k_to = 0;   // X-degrees of the end points
  Rational eigen_valuation;   // valuation of the eigenvalues on this edge
  Rational slope;             // max(0, -valuation - 1)
  int multiplicity() const { return k_to - k_from; }
};

struct NewtonPolygon {
  std::vector<std::pair<int, Rational>> points;  // (k, val c_k) for known nonzero c_k
  std::vector<NewtonEdge> edges;
  int zero_eigenvalues = 0;  // X^k factor of the characteristic polynomial
};

/// coeffs[k] is the coefficient of X^k (monic, top coefficient 1).
NewtonPolygon newton_polygon(const std::vector<LaurentSeries> &coeffs);

/// companion: polygon of the companion form (gauge invariant on its irregular part).
/// matrix: polygon of det(X - A) directly; cheaper, but only meaningful when A
/// is already in a gauge where the eigenvalues of A carry the formal type.
enum class PolygonMethod { companion, matrix };

NewtonPolygon newton_polygon(const FormalConnection &c, PolygonMethod method = PolygonMethod::companion);

/// Characteristic polynomial of the companion matrix reached from a cyclic
/// vector. Only the leading term of each coefficient is kept (the rest is
/// O(.)). Its Newton polygon's irregular part is a gauge invariant.
std::vector<LaurentSeries> companion_coefficients(const FormalConnection &c);
/// Characteristic polynomial of A itself.
std::vector<LaurentSeries> matrix_charpoly(const FormalConnection &c);

/// Largest slope at the marked point.
Rational slope(const FormalConnection &c, PolygonMethod method = PolygonMethod::companion);
/// Sum over eigenvalue branches of their slopes.
Rational irregularity(const FormalConnection &c, PolygonMethod method = PolygonMethod::companion);
Rational adjoint_irregularity(const FormalConnection &c, PolygonMethod method = PolygonMethod::companion);
Rational slope(const NewtonPolygon &p);
Rational irregularity(const NewtonPolygon &p);

/// Eigenvalues c s^e + ... with e < -1 on one polygon edge. With q the
/// denominator of e, the q-th powers of the leading coefficients are the roots
/// of the monic polynomial psi (each root gives q eigenvalues).
struct IrregularExponent {
  Rational exponent;
  int multiplicity = 0;
  int ramification = 1;
  Polynomial psi;
  /// Explicit leading coefficients when they can be written in the scalar tower.
  std::vector<Scalar> leading_coefficients;

  friend bool operator==(const IrregularExponent &a, const IrregularExponent &b) {
    return a.exponent == b.exponent && a.multiplicity == b.multiplicity && a.psi == b.psi;
  }
  friend bool operator!=(const IrregularExponent &a, const IrregularExponent &b) { return !(a == b); }
};

std::vector<IrregularExponent> irregular_exponents(const FormalConnection &c,
                                                   PolygonMethod method = PolygonMethod::companion);
/// From already computed characteristic coefficients.
std::vector<IrregularExponent> irregular_exponents(const std::vector<LaurentSeries> &coeffs);
std::vector<LaurentSeries> characteristic_coefficients(const FormalConnection &c, PolygonMethod method);

nlohmann::json polygon_to_json(const NewtonPolygon &p);
nlohmann::json exponents_to_json(const std::vector<IrregularExponent> &e);

}  // namespace rigid
