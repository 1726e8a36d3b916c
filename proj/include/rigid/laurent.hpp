#pragma once

// Truncation-aware formal Laurent/Puiseux series with exact coefficients.
//
// A series stores t^(e/ram) terms for integer e. When trunc is set the series
// is known only modulo O(t^(trunc/ram)); an unset trunc means the stored terms
// are the whole (finite) series.

#include <map>
#include <optional>
#include <string>

#include "rigid/scalar.hpp"

namespace rigid {

class LaurentSeries {
 public:
  static constexpr int kDefaultOrder = 32;
  using Terms = std::map<int, Scalar>;

  LaurentSeries() = default;
  LaurentSeries(const Scalar &c);  // NOLINT: constants convert implicitly
  LaurentSeries(long c) : LaurentSeries(Scalar(c)) {}
  LaurentSeries(int c) : LaurentSeries(Scalar(c)) {}
  LaurentSeries(Terms terms, std::optional<int> trunc, int ram = 1);

  static LaurentSeries monomial(const Scalar &c, int exponent, int ram = 1);
  /// The zero series known only modulo t^(trunc/ram).
  static LaurentSeries big_o(int trunc, int ram = 1);

  int ramification() const { return ram_; }
  const std::optional<int> &truncation() const { return trunc_; }
  bool is_exact() const { return !trunc_.has_value(); }
  const Terms &terms() const { return terms_; }

  /// Coefficient of t^(e/ram); throws if e is at or beyond the truncation.
  Scalar coefficient(int e) const;
  /// Coefficient of t^q for a rational exponent q.
  Scalar coefficient_at(const Rational &q) const;
  /// Least stored exponent in 1/ram units.
  std::optional<int> valuation() const;
  /// Least stored exponent as a rational.
  std::optional<Rational> order() const;
  /// Rational truncation order, unset when exact.
  std::optional<Rational> truncation_order() const;
  /// Lowest exponent that may carry a nonzero coefficient (valuation, or trunc when no term is known).
  std::optional<int> lower_bound() const;
  Scalar leading_coefficient() const;

  /// Provably zero: exact with no terms.
  bool is_zero() const { return terms_.empty() && !trunc_; }
  /// No known nonzero coefficient.
  bool is_indistinguishable_from_zero() const { return terms_.empty(); }
  bool is_constant() const;

  LaurentSeries truncated(int trunc) const;
  LaurentSeries with_ramification(int ram) const;
  /// Smallest ramification compatible with the stored data.
  LaurentSeries normalized() const;
  /// Multiply by t^(k/ram).
  LaurentSeries shifted(int k) const;
  /// Substitute t -> 1/t. Exact series only.
  LaurentSeries reflected() const;

  LaurentSeries operator-() const;
  LaurentSeries &operator+=(const LaurentSeries &o);
  LaurentSeries &operator-=(const LaurentSeries &o);
  LaurentSeries &operator*=(const LaurentSeries &o);
  friend LaurentSeries operator+(LaurentSeries a, const LaurentSeries &b) { return a += b; }
  friend LaurentSeries operator-(LaurentSeries a, const LaurentSeries &b) { return a -= b; }
  friend LaurentSeries operator*(const LaurentSeries &a, const LaurentSeries &b);
  LaurentSeries scaled(const Scalar &c) const;

  /// Structural equality after aligning ramification.
  friend bool operator==(const LaurentSeries &a, const LaurentSeries &b);
  friend bool operator!=(const LaurentSeries &a, const LaurentSeries &b) { return !(a == b); }
  /// Equality of all coefficients below the smaller of the two truncations.
  bool agrees_with(const LaurentSeries &o) const;

  std::string to_string(const std::string &var = "t") const;

 private:
  void canonicalize();

  Terms terms_;
  std::optional<int> trunc_;
  int ram_ = 1;
};

inline bool is_zero(const LaurentSeries &f) { return f.is_zero(); }

LaurentSeries derivative(const LaurentSeries &f);
/// g with f*g = 1 modulo t^(order/ram), never claiming more precision than f supports.
LaurentSeries invert(const LaurentSeries &f, int order = LaurentSeries::kDefaultOrder);
/// a / b. Exact operands must divide exactly (throws otherwise); truncated
/// operands go through invert.
LaurentSeries divide(const LaurentSeries &a, const LaurentSeries &b, int order = LaurentSeries::kDefaultOrder);
/// Integer power; negative powers go through invert with the given order.
LaurentSeries power(const LaurentSeries &f, int n, int order = LaurentSeries::kDefaultOrder);
/// Substitution t = u^b.
LaurentSeries ramified_pullback(const LaurentSeries &f, int b);

int common_ramification(const LaurentSeries &a, const LaurentSeries &b);

}  // namespace rigid
