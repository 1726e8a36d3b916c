#include "rigid/polynomial.hpp"

#include <sstream>

namespace rigid {

Polynomial::Polynomial(std::vector<Scalar> coeffs) : c_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::monomial(const Scalar &c, int degree) {
  std::vector<Scalar> v(degree + 1);
  v[degree] = c;
  return Polynomial(std::move(v));
}

void Polynomial::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Scalar Polynomial::coefficient(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return Scalar();
  return c_[i];
}

Polynomial Polynomial::monic() const {
  if (c_.empty()) return *this;
  Scalar inv = c_.back().inverse();
  std::vector<Scalar> v = c_;
  for (auto &x : v) x *= inv;
  return Polynomial(std::move(v));
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Scalar> v(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * Scalar(static_cast<long>(i));
  return Polynomial(std::move(v));
}

Scalar Polynomial::evaluate(const Scalar &x) const {
  Scalar acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial operator+(const Polynomial &a, const Polynomial &b) {
  std::vector<Scalar> v(std::max(a.c_.size(), b.c_.size()));
  for (size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
  for (size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
  return Polynomial(std::move(v));
}

Polynomial operator-(const Polynomial &a, const Polynomial &b) {
  std::vector<Scalar> v(std::max(a.c_.size(), b.c_.size()));
  for (size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
  for (size_t i = 0; i < b.c_.size(); ++i) v[i] -= b.c_[i];
  return Polynomial(std::move(v));
}

Polynomial operator*(const Polynomial &a, const Polynomial &b) {
  if (a.c_.empty() || b.c_.empty()) return {};
  std::vector<Scalar> v(a.c_.size() + b.c_.size() - 1);
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  }
  return Polynomial(std::move(v));
}

Polynomial operator*(const Scalar &s, const Polynomial &p) {
  std::vector<Scalar> v = p.c_;
  for (auto &x : v) x *= s;
  return Polynomial(std::move(v));
}

void Polynomial::divmod(const Polynomial &a, const Polynomial &b, Polynomial &quot, Polynomial &rem) {
  if (b.is_zero()) fail(ErrorKind::invalid_argument, "polynomial division by zero");
  std::vector<Scalar> r = a.c_;
  std::vector<Scalar> q(a.c_.size() >= b.c_.size() ? a.c_.size() - b.c_.size() + 1 : 0);
  Scalar inv = b.c_.back().inverse();
  while (r.size() >= b.c_.size() && !r.empty()) {
    size_t shift = r.size() - b.c_.size();
    Scalar c = r.back() * inv;
    q[shift] = c;
    for (size_t j = 0; j < b.c_.size(); ++j) r[shift + j] -= c * b.c_[j];
    while (!r.empty() && r.back().is_zero()) r.pop_back();
  }
  quot = Polynomial(std::move(q));
  rem = Polynomial(std::move(r));
}

Polynomial Polynomial::gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    Polynomial q, r;
    divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

bool Polynomial::is_squarefree() const {
  if (degree() <= 0) return true;
  return gcd(*this, derivative()).degree() == 0;
}

std::string Polynomial::to_string(const std::string &var) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    if (c_[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    bool paren = !c_[i].is_rational();
    if (i == 0 || !c_[i].is_one()) os << (paren ? "(" : "") << c_[i] << (paren ? ")" : "");
    if (i > 0) {
      if (!c_[i].is_one()) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

}  // namespace rigid
