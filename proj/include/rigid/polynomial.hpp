#pragma once

#include <string>
#include <vector>

#include "rigid/scalar.hpp"

namespace rigid {

/// Dense univariate polynomial over exact scalars, constant term first.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Scalar> coeffs);
  static Polynomial monomial(const Scalar &c, int degree);

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const std::vector<Scalar> &coefficients() const { return c_; }
  Scalar coefficient(int i) const;
  const Scalar &leading() const { return c_.back(); }

  Polynomial monic() const;
  Polynomial derivative() const;
  Scalar evaluate(const Scalar &x) const;

  friend Polynomial operator+(const Polynomial &a, const Polynomial &b);
  friend Polynomial operator-(const Polynomial &a, const Polynomial &b);
  friend Polynomial operator*(const Polynomial &a, const Polynomial &b);
  friend Polynomial operator*(const Scalar &s, const Polynomial &p);
  friend bool operator==(const Polynomial &a, const Polynomial &b) { return a.c_ == b.c_; }
  friend bool operator!=(const Polynomial &a, const Polynomial &b) { return !(a == b); }

  /// Euclidean division; b must be nonzero.
  static void divmod(const Polynomial &a, const Polynomial &b, Polynomial &quot, Polynomial &rem);
  /// Monic gcd.
  static Polynomial gcd(Polynomial a, Polynomial b);

  bool is_squarefree() const;
  std::string to_string(const std::string &var = "X") const;

 private:
  void trim();
  std::vector<Scalar> c_;
};

}  // namespace rigid
