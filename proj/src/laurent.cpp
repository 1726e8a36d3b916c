#include "rigid/laurent.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace rigid {

LaurentSeries::LaurentSeries(const Scalar &c) {
  if (!c.is_zero()) terms_.emplace(0, c);
}

LaurentSeries::LaurentSeries(Terms terms, std::optional<int> trunc, int ram)
    : terms_(std::move(terms)), trunc_(trunc), ram_(ram) {
  if (ram_ < 1) fail(ErrorKind::invalid_argument, "ramification index must be positive");
  canonicalize();
}

LaurentSeries LaurentSeries::monomial(const Scalar &c, int exponent, int ram) {
  Terms t;
  if (!c.is_zero()) t.emplace(exponent, c);
  return LaurentSeries(std::move(t), std::nullopt, ram);
}

LaurentSeries LaurentSeries::big_o(int trunc, int ram) { return LaurentSeries({}, trunc, ram); }

void LaurentSeries::canonicalize() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second.is_zero() || (trunc_ && it->first >= *trunc_))
      it = terms_.erase(it);
    else
      ++it;
  }
}

Scalar LaurentSeries::coefficient(int e) const {
  if (trunc_ && e >= *trunc_)
    fail(ErrorKind::insufficient_precision,
         "coefficient of t^" + rigid::to_string(Rational(e, ram_)) + " lies beyond the truncation order");
  auto it = terms_.find(e);
  return it == terms_.end() ? Scalar() : it->second;
}

Scalar LaurentSeries::coefficient_at(const Rational &q) const {
  Rational scaled = q * ram_;
  scaled.canonicalize();
  if (scaled.get_den() != 1) return Scalar();
  return coefficient(static_cast<int>(scaled.get_num().get_si()));
}

std::optional<int> LaurentSeries::valuation() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.begin()->first;
}

std::optional<Rational> LaurentSeries::order() const {
  if (terms_.empty()) return std::nullopt;
  Rational q(terms_.begin()->first, ram_);
  q.canonicalize();
  return q;
}

std::optional<Rational> LaurentSeries::truncation_order() const {
  if (!trunc_) return std::nullopt;
  Rational q(*trunc_, ram_);
  q.canonicalize();
  return q;
}

std::optional<int> LaurentSeries::lower_bound() const {
  if (!terms_.empty()) return terms_.begin()->first;
  return trunc_;
}

Scalar LaurentSeries::leading_coefficient() const {
  if (terms_.empty()) fail(ErrorKind::insufficient_precision, "series has no known nonzero term");
  return terms_.begin()->second;
}

bool LaurentSeries::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0);
}

LaurentSeries LaurentSeries::truncated(int trunc) const {
  std::optional<int> t = trunc_ ? std::min(*trunc_, trunc) : trunc;
  return LaurentSeries(terms_, t, ram_);
}

LaurentSeries LaurentSeries::with_ramification(int ram) const {
  if (ram == ram_) return *this;
  if (ram % ram_ != 0) fail(ErrorKind::invalid_argument, "ramification must be a multiple of the current one");
  int k = ram / ram_;
  Terms t;
  for (const auto &[e, c] : terms_) t.emplace(e * k, c);
  std::optional<int> tr;
  if (trunc_) tr = *trunc_ * k;
  return LaurentSeries(std::move(t), tr, ram);
}

LaurentSeries LaurentSeries::normalized() const {
  int g = ram_;
  for (const auto &[e, c] : terms_) g = std::gcd(g, e);
  if (trunc_) g = std::gcd(g, *trunc_);
  if (g <= 1) return *this;
  Terms t;
  for (const auto &[e, c] : terms_) t.emplace(e / g, c);
  std::optional<int> tr;
  if (trunc_) tr = *trunc_ / g;
  return LaurentSeries(std::move(t), tr, ram_ / g);
}

LaurentSeries LaurentSeries::shifted(int k) const {
  Terms t;
  for (const auto &[e, c] : terms_) t.emplace(e + k, c);
  std::optional<int> tr;
  if (trunc_) tr = *trunc_ + k;
  return LaurentSeries(std::move(t), tr, ram_);
}

LaurentSeries LaurentSeries::reflected() const {
  if (trunc_) fail(ErrorKind::insufficient_precision, "t -> 1/t needs an exact (finite) series");
  Terms t;
  for (const auto &[e, c] : terms_) t.emplace(-e, c);
  return LaurentSeries(std::move(t), std::nullopt, ram_);
}

int common_ramification(const LaurentSeries &a, const LaurentSeries &b) {
  return std::lcm(a.ramification(), b.ramification());
}

LaurentSeries LaurentSeries::operator-() const {
  LaurentSeries r = *this;
  for (auto &[e, c] : r.terms_) c = -c;
  return r;
}

LaurentSeries &LaurentSeries::operator+=(const LaurentSeries &o) {
  if (o.ram_ != ram_) {
    int r = common_ramification(*this, o);
    *this = with_ramification(r);
    return *this += o.with_ramification(r);
  }
  if (o.trunc_ && (!trunc_ || *o.trunc_ < *trunc_)) trunc_ = o.trunc_;
  for (const auto &[e, c] : o.terms_) {
    if (trunc_ && e >= *trunc_) break;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  if (trunc_) terms_.erase(terms_.lower_bound(*trunc_), terms_.end());
  return *this;
}

LaurentSeries &LaurentSeries::operator-=(const LaurentSeries &o) { return *this += -o; }

LaurentSeries operator*(const LaurentSeries &a, const LaurentSeries &b) {
  if (a.ram_ != b.ram_) {
    int r = common_ramification(a, b);
    return a.with_ramification(r) * b.with_ramification(r);
  }
  if (a.is_zero() || b.is_zero()) return LaurentSeries({}, std::nullopt, a.ram_);
  std::optional<int> trunc;
  auto la = a.lower_bound(), lb = b.lower_bound();
  if (a.trunc_) trunc = *a.trunc_ + *lb;
  if (b.trunc_) {
    int t = *b.trunc_ + *la;
    trunc = trunc ? std::min(*trunc, t) : t;
  }
  LaurentSeries::Terms out;
  for (const auto &[ea, ca] : a.terms_) {
    for (const auto &[eb, cb] : b.terms_) {
      int e = ea + eb;
      if (trunc && e >= *trunc) break;
      Scalar p = ca * cb;
      auto [it, inserted] = out.emplace(e, p);
      if (!inserted) it->second += p;
    }
  }
  return LaurentSeries(std::move(out), trunc, a.ram_);
}

LaurentSeries &LaurentSeries::operator*=(const LaurentSeries &o) { return *this = *this * o; }

LaurentSeries LaurentSeries::scaled(const Scalar &c) const {
  if (c.is_zero()) return trunc_ ? LaurentSeries({}, trunc_, ram_) : LaurentSeries({}, std::nullopt, ram_);
  LaurentSeries r = *this;
  for (auto &[e, v] : r.terms_) v *= c;
  return r;
}

bool operator==(const LaurentSeries &a, const LaurentSeries &b) {
  if (a.ram_ != b.ram_) {
    int r = common_ramification(a, b);
    return a.with_ramification(r) == b.with_ramification(r);
  }
  return a.trunc_ == b.trunc_ && a.terms_ == b.terms_;
}

bool LaurentSeries::agrees_with(const LaurentSeries &o) const {
  if (o.ram_ != ram_) {
    int r = common_ramification(*this, o);
    return with_ramification(r).agrees_with(o.with_ramification(r));
  }
  std::optional<int> t = trunc_;
  if (o.trunc_ && (!t || *o.trunc_ < *t)) t = o.trunc_;
  LaurentSeries x = t ? truncated(*t) : *this;
  LaurentSeries y = t ? o.truncated(*t) : o;
  return x.terms_ == y.terms_;
}

std::string LaurentSeries::to_string(const std::string &var) const {
  std::ostringstream os;
  bool first = true;
  for (const auto &[e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    Rational q(e, ram_);
    q.canonicalize();
    bool paren = !c.is_rational() || (c.rational() < 0 && e != 0);
    if (e == 0) {
      os << (paren ? "(" : "") << c << (paren ? ")" : "");
      continue;
    }
    if (!c.is_one()) os << (paren ? "(" : "") << c << (paren ? ")" : "") << "*";
    os << var;
    if (q != 1) {
      if (q.get_den() == 1) os << "^" << q;
      else os << "^(" << q << ")";
    }
  }
  if (trunc_) {
    if (!first) os << " + ";
    Rational q(*trunc_, ram_);
    q.canonicalize();
    os << "O(" << var << "^" << (q.get_den() == 1 ? q.get_str() : "(" + q.get_str() + ")") << ")";
  } else if (first) {
    os << "0";
  }
  return os.str();
}

LaurentSeries derivative(const LaurentSeries &f) {
  const int r = f.ramification();
  LaurentSeries::Terms t;
  for (const auto &[e, c] : f.terms()) {
    if (e == 0) continue;
    t.emplace(e - r, c * Scalar(Rational(e, r)));
  }
  std::optional<int> tr;
  if (f.truncation()) tr = *f.truncation() - r;
  return LaurentSeries(std::move(t), tr, r);
}

LaurentSeries invert(const LaurentSeries &f, int order) {
  if (f.is_indistinguishable_from_zero())
    fail(ErrorKind::insufficient_precision, "cannot invert a series indistinguishable from zero: " + f.to_string());
  const int r = f.ramification();
  const int v = *f.valuation();
  int trunc = order;
  if (f.truncation()) trunc = std::min(trunc, *f.truncation() - 2 * v);
  const int n_terms = trunc + v;  // g has exponents -v .. trunc-1
  Scalar inv_lead = f.leading_coefficient().inverse();
  std::vector<Scalar> a;  // normalised tail f / (c t^v)
  for (const auto &[e, c] : f.terms()) {
    int k = e - v;
    if (k >= n_terms) break;
    if (static_cast<int>(a.size()) <= k) a.resize(k + 1);
    a[k] = c * inv_lead;
  }
  std::vector<Scalar> b(std::max(n_terms, 0));
  for (int n = 0; n < n_terms; ++n) {
    if (n == 0) {
      b[0] = Scalar(1);
      continue;
    }
    Scalar acc;
    for (int k = 1; k <= n && k < static_cast<int>(a.size()); ++k)
      if (!a[k].is_zero() && !b[n - k].is_zero()) acc += a[k] * b[n - k];
    b[n] = -acc;
  }
  LaurentSeries::Terms t;
  for (int n = 0; n < n_terms; ++n)
    if (!b[n].is_zero()) t.emplace(n - v, b[n] * inv_lead);
  // An exact finite inverse (f a monomial) stays exact.
  if (!f.truncation() && f.terms().size() == 1) return LaurentSeries(std::move(t), std::nullopt, r);
  return LaurentSeries(std::move(t), trunc, r);
}

LaurentSeries divide(const LaurentSeries &a, const LaurentSeries &b, int order) {
  if (!a.is_exact() || !b.is_exact()) return a * invert(b, order);
  if (b.is_zero()) fail(ErrorKind::invalid_argument, "division by zero series");
  if (a.is_zero()) return a;
  if (a.ramification() != b.ramification()) {
    int r = common_ramification(a, b);
    return divide(a.with_ramification(r), b.with_ramification(r), order);
  }
  const int r = a.ramification();
  const int vb = *b.valuation(), top_b = b.terms().rbegin()->first;
  const int top_q = a.terms().rbegin()->first - top_b;
  const Scalar inv_lead = b.leading_coefficient().inverse();
  LaurentSeries::Terms q;
  LaurentSeries rem = a;
  while (!rem.is_zero()) {
    int e = *rem.valuation() - vb;
    if (e > top_q) fail(ErrorKind::invalid_argument, "Laurent polynomial division is not exact");
    Scalar c = rem.leading_coefficient() * inv_lead;
    q.emplace(e, c);
    rem -= LaurentSeries::monomial(c, e, r) * b;
  }
  return LaurentSeries(std::move(q), std::nullopt, r);
}

LaurentSeries power(const LaurentSeries &f, int n, int order) {
  if (n < 0) return power(invert(f, order), -n, order);
  LaurentSeries result(Scalar(1)), base = f;
  result = result.with_ramification(f.ramification());
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return result;
}

LaurentSeries ramified_pullback(const LaurentSeries &f, int b) {
  if (b < 1) fail(ErrorKind::invalid_argument, "pullback degree must be positive");
  const int r = f.ramification();
  const int g = std::gcd(r, b);
  const int k = b / g;
  LaurentSeries::Terms t;
  for (const auto &[e, c] : f.terms()) t.emplace(e * k, c);
  std::optional<int> tr;
  if (f.truncation()) tr = *f.truncation() * k;
  return LaurentSeries(std::move(t), tr, r / g);
}

}  // namespace rigid
