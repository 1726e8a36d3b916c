#pragma once

// Exact scalars: rationals, optionally extended by one algebraic generator
// (a primitive root of unity or a square root of a rational).

#include <gmpxx.h>

#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "rigid/error.hpp"

namespace rigid {

using Rational = mpq_class;
using Integer = mpz_class;

std::string to_string(const Rational &q);
Rational parse_rational(const std::string &text);

/// A simple algebraic extension Q(g) with tracked minimal polynomial of g.
class NumberField {
 public:
  enum class Kind { cyclotomic, square_root };

  /// Q(zeta_m), m >= 3. Minimal polynomial is the m-th cyclotomic polynomial.
  static std::shared_ptr<const NumberField> cyclotomic(int m);
  /// Q(sqrt(r)) for a rational r that is not a square.
  static std::shared_ptr<const NumberField> square_root(const Rational &r);

  Kind kind() const { return kind_; }
  int order() const { return order_; }
  const Rational &radicand() const { return radicand_; }
  int degree() const { return static_cast<int>(minpoly_.size()) - 1; }
  /// Monic, coefficients from the constant term upwards.
  const std::vector<Rational> &minimal_polynomial() const { return minpoly_; }
  std::string generator_name() const;

  bool same_as(const NumberField &other) const;

 private:
  NumberField(Kind kind, int order, Rational radicand, std::vector<Rational> minpoly)
      : kind_(kind), order_(order), radicand_(std::move(radicand)), minpoly_(std::move(minpoly)) {}

  Kind kind_;
  int order_ = 0;
  Rational radicand_;
  std::vector<Rational> minpoly_;
};

using FieldPtr = std::shared_ptr<const NumberField>;

std::vector<Rational> cyclotomic_polynomial(int m);
bool is_rational_square(const Rational &r, Rational *root = nullptr);

class Scalar {
 public:
  Scalar() = default;
  Scalar(long v) : q_(v) {}
  Scalar(int v) : q_(v) {}
  Scalar(Rational v) : q_(std::move(v)) { q_.canonicalize(); }

  /// The generator of `field` itself.
  static Scalar generator(FieldPtr field);
  /// Element of `field` with the given power-basis coordinates.
  static Scalar from_coefficients(FieldPtr field, std::vector<Rational> coeffs);
  /// exp(2 pi i / m); rational for m <= 2.
  static Scalar root_of_unity(int m);
  /// A square root of r; adjoins one only if r is not a rational square.
  static Scalar sqrt(const Rational &r);

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const { return field_ == nullptr; }
  /// Valid only when is_rational().
  const Rational &rational() const;
  const FieldPtr &field() const { return field_; }
  /// Power-basis coordinates; length 1 for rationals.
  std::vector<Rational> coefficients() const;

  Scalar operator-() const;
  Scalar &operator+=(const Scalar &o);
  Scalar &operator-=(const Scalar &o);
  Scalar &operator*=(const Scalar &o);
  Scalar &operator/=(const Scalar &o);
  friend Scalar operator+(Scalar a, const Scalar &b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar &b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar &b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar &b) { return a /= b; }

  Scalar inverse() const;
  Scalar pow(long n) const;

  friend bool operator==(const Scalar &a, const Scalar &b);
  friend bool operator!=(const Scalar &a, const Scalar &b) { return !(a == b); }
  /// Deterministic total order (not a field order); used for canonical multisets.
  friend int compare(const Scalar &a, const Scalar &b);
  friend bool operator<(const Scalar &a, const Scalar &b) { return compare(a, b) < 0; }

  std::string to_string() const;

 private:
  void demote();
  static FieldPtr common_field(const Scalar &a, const Scalar &b);
  void promote(const FieldPtr &f);

  FieldPtr field_;
  Rational q_;                 // value when field_ is null
  std::vector<Rational> ext_;  // power-basis coordinates when field_ is set
};

std::ostream &operator<<(std::ostream &os, const Scalar &s);

inline bool is_zero(const Scalar &s) { return s.is_zero(); }

}  // namespace rigid
