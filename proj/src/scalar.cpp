#include "rigid/scalar.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace rigid {

const char *error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::tower_mismatch: return "tower-mismatch";
    case ErrorKind::insufficient_precision: return "insufficient-precision";
    case ErrorKind::unsupported_algebra: return "unsupported-algebra";
    case ErrorKind::not_first_order: return "not-first-order";
    case ErrorKind::not_an_oper: return "not-an-oper";
    case ErrorKind::unsupported_connection: return "unsupported-connection";
    case ErrorKind::parse_error: return "parse-error";
  }
  return "error";
}

std::string to_string(const Rational &q) { return q.get_str(); }

Rational parse_rational(const std::string &text) {
  Rational q;
  if (text.empty() || q.set_str(text, 10) != 0 || q.get_den() == 0)
    fail(ErrorKind::parse_error, "not a rational number: '" + text + "'");
  q.canonicalize();
  return q;
}

namespace {

using QPoly = std::vector<Rational>;  // constant term first

void trim(QPoly &p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly poly_mul(const QPoly &a, const QPoly &b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

// Quotient and remainder of a by b (b nonzero).
void poly_divmod(QPoly a, const QPoly &b, QPoly &quot, QPoly &rem) {
  trim(a);
  quot.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
  const Rational &lead = b.back();
  while (a.size() >= b.size() && !a.empty()) {
    size_t shift = a.size() - b.size();
    Rational c = a.back() / lead;
    quot[shift] = c;
    for (size_t j = 0; j < b.size(); ++j) a[shift + j] -= c * b[j];
    trim(a);
  }
  rem = a;
  trim(quot);
}

QPoly poly_sub(QPoly a, const QPoly &b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

// Inverse of a modulo the irreducible m.
QPoly poly_inverse_mod(const QPoly &a, const QPoly &m) {
  QPoly r0 = m, r1 = a, s0, s1{Rational(1)};
  trim(r1);
  while (!r1.empty() && r1.size() > 1) {
    QPoly q, r;
    poly_divmod(r0, r1, q, r);
    QPoly s2 = poly_sub(s0, poly_mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r1.empty()) fail(ErrorKind::invalid_argument, "division by zero in number field");
  Rational c = r1[0];
  for (auto &x : s1) x /= c;
  QPoly q, rem;
  poly_divmod(s1, m, q, rem);
  return rem;
}

}  // namespace

std::vector<Rational> cyclotomic_polynomial(int m) {
  static std::mutex mu;
  static std::map<int, std::vector<Rational>> cache;
  if (m < 1) fail(ErrorKind::invalid_argument, "cyclotomic order must be positive");
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
  }
  QPoly num(m + 1, Rational(0));
  num[0] = -1;
  num[m] = 1;
  for (int d = 1; d < m; ++d) {
    if (m % d != 0) continue;
    QPoly q, r;
    poly_divmod(num, cyclotomic_polynomial(d), q, r);
    num = q;
  }
  std::lock_guard<std::mutex> lock(mu);
  cache[m] = num;
  return num;
}

bool is_rational_square(const Rational &r, Rational *root) {
  if (r < 0) return false;
  if (r == 0) {
    if (root) *root = 0;
    return true;
  }
  Integer n = r.get_num(), d = r.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return false;
  if (root) {
    Integer sn, sd;
    mpz_sqrt(sn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), d.get_mpz_t());
    *root = Rational(sn, sd);
    root->canonicalize();
  }
  return true;
}

FieldPtr NumberField::cyclotomic(int m) {
  if (m < 3) fail(ErrorKind::invalid_argument, "cyclotomic field needs m >= 3");
  static std::mutex mu;
  static std::map<int, FieldPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto &slot = cache[m];
  if (!slot)
    slot = FieldPtr(new NumberField(Kind::cyclotomic, m, Rational(0), cyclotomic_polynomial(m)));
  return slot;
}

FieldPtr NumberField::square_root(const Rational &r) {
  if (is_rational_square(r))
    fail(ErrorKind::invalid_argument, "square root of a rational square is rational: " + to_string(r));
  static std::mutex mu;
  static std::map<std::string, FieldPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto &slot = cache[to_string(r)];
  if (!slot) slot = FieldPtr(new NumberField(Kind::square_root, 2, r, {-r, Rational(0), Rational(1)}));
  return slot;
}

std::string NumberField::generator_name() const {
  if (kind_ == Kind::cyclotomic) return "zeta" + std::to_string(order_);
  return "sqrt(" + to_string(radicand_) + ")";
}

bool NumberField::same_as(const NumberField &other) const {
  if (this == &other) return true;
  return kind_ == other.kind_ && order_ == other.order_ && radicand_ == other.radicand_;
}

Scalar Scalar::generator(FieldPtr field) {
  std::vector<Rational> c(field->degree(), Rational(0));
  if (c.size() > 1) c[1] = 1;
  return from_coefficients(std::move(field), std::move(c));
}

Scalar Scalar::from_coefficients(FieldPtr field, std::vector<Rational> coeffs) {
  Scalar s;
  const int d = field->degree();
  if (static_cast<int>(coeffs.size()) > d) {
    QPoly q, r;
    poly_divmod(coeffs, field->minimal_polynomial(), q, r);
    coeffs = r;
  }
  coeffs.resize(d, Rational(0));
  s.field_ = std::move(field);
  s.ext_ = std::move(coeffs);
  s.demote();
  return s;
}

Scalar Scalar::root_of_unity(int m) {
  if (m == 1) return Scalar(1);
  if (m == 2) return Scalar(-1);
  return generator(NumberField::cyclotomic(m));
}

Scalar Scalar::sqrt(const Rational &r) {
  Rational root;
  if (is_rational_square(r, &root)) return Scalar(root);
  return generator(NumberField::square_root(r));
}

void Scalar::demote() {
  if (!field_) return;
  for (size_t i = 1; i < ext_.size(); ++i)
    if (ext_[i] != 0) return;
  q_ = ext_.empty() ? Rational(0) : ext_[0];
  ext_.clear();
  field_.reset();
}

void Scalar::promote(const FieldPtr &f) {
  if (field_) return;
  ext_.assign(f->degree(), Rational(0));
  ext_[0] = q_;
  field_ = f;
}

FieldPtr Scalar::common_field(const Scalar &a, const Scalar &b) {
  if (!a.field_) return b.field_;
  if (!b.field_) return a.field_;
  if (!a.field_->same_as(*b.field_))
    fail(ErrorKind::tower_mismatch,
         "incompatible scalar towers: " + a.field_->generator_name() + " vs " + b.field_->generator_name());
  return a.field_;
}

bool Scalar::is_zero() const { return !field_ && q_ == 0; }
bool Scalar::is_one() const { return !field_ && q_ == 1; }

const Rational &Scalar::rational() const {
  if (field_) fail(ErrorKind::invalid_argument, "scalar is not rational: " + to_string());
  return q_;
}

std::vector<Rational> Scalar::coefficients() const {
  if (!field_) return {q_};
  return ext_;
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  r.q_ = -r.q_;
  for (auto &x : r.ext_) x = -x;
  return r;
}

Scalar &Scalar::operator+=(const Scalar &o) {
  if (!field_ && !o.field_) {
    q_ += o.q_;
    return *this;
  }
  FieldPtr f = common_field(*this, o);
  promote(f);
  if (o.field_) {
    for (size_t i = 0; i < ext_.size(); ++i) ext_[i] += o.ext_[i];
  } else {
    ext_[0] += o.q_;
  }
  demote();
  return *this;
}

Scalar &Scalar::operator-=(const Scalar &o) { return *this += -o; }

Scalar &Scalar::operator*=(const Scalar &o) {
  if (!field_ && !o.field_) {
    q_ *= o.q_;
    return *this;
  }
  if (!o.field_) {
    for (auto &x : ext_) x *= o.q_;
    demote();
    return *this;
  }
  if (!field_) {
    Rational c = q_;
    *this = o;
    for (auto &x : ext_) x *= c;
    demote();
    return *this;
  }
  FieldPtr f = common_field(*this, o);
  QPoly prod = poly_mul(ext_, o.ext_);
  *this = from_coefficients(f, prod);
  return *this;
}

Scalar Scalar::inverse() const {
  if (is_zero()) fail(ErrorKind::invalid_argument, "division by zero");
  if (!field_) return Scalar(Rational(1) / q_);
  QPoly a = ext_;
  trim(a);
  return from_coefficients(field_, poly_inverse_mod(a, field_->minimal_polynomial()));
}

Scalar &Scalar::operator/=(const Scalar &o) {
  if (!field_ && !o.field_) {
    if (o.q_ == 0) fail(ErrorKind::invalid_argument, "division by zero");
    q_ /= o.q_;
    return *this;
  }
  return *this *= o.inverse();
}

Scalar Scalar::pow(long n) const {
  if (n < 0) return inverse().pow(-n);
  Scalar result(1), base = *this;
  while (n > 0) {
    if (n & 1) result *= base;
    base *= base;
    n >>= 1;
  }
  return result;
}

bool operator==(const Scalar &a, const Scalar &b) {
  if (!a.field_ && !b.field_) return a.q_ == b.q_;
  if (!a.field_ || !b.field_) return false;  // canonical: non-rational never equals a rational
  if (!a.field_->same_as(*b.field_)) return false;
  return a.ext_ == b.ext_;
}

int compare(const Scalar &a, const Scalar &b) {
  if (!a.field_ && !b.field_) return cmp(a.q_, b.q_) < 0 ? -1 : (a.q_ == b.q_ ? 0 : 1);
  if (!a.field_) return -1;
  if (!b.field_) return 1;
  std::string fa = a.field_->generator_name(), fb = b.field_->generator_name();
  if (fa != fb) return fa < fb ? -1 : 1;
  for (size_t i = 0; i < a.ext_.size(); ++i) {
    int c = cmp(a.ext_[i], b.ext_[i]);
    if (c != 0) return c < 0 ? -1 : 1;
  }
  return 0;
}

std::string Scalar::to_string() const {
  if (!field_) return rigid::to_string(q_);
  std::ostringstream os;
  bool first = true;
  const std::string g = field_->generator_name();
  for (size_t i = 0; i < ext_.size(); ++i) {
    if (ext_[i] == 0) continue;
    if (!first) os << (ext_[i] < 0 ? " - " : " + ");
    else if (ext_[i] < 0) os << "-";
    Rational mag = abs(ext_[i]);
    if (i == 0) {
      os << rigid::to_string(mag);
    } else {
      if (mag != 1) os << rigid::to_string(mag) << "*";
      os << g;
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  return os.str();
}

std::ostream &operator<<(std::ostream &os, const Scalar &s) { return os << s.to_string(); }

}  // namespace rigid
