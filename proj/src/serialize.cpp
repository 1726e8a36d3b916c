#include "rigid/serialize.hpp"

namespace rigid {

namespace {

Json integer_to_json(const Integer &z) {
  if (z.fits_slong_p()) return Json(static_cast<long long>(z.get_si()));
  return Json(z.get_str());
}

Integer integer_from_json(const Json &j) {
  if (j.is_number_integer()) return Integer(j.get<long>());
  if (j.is_string()) {
    Integer z;
    if (z.set_str(j.get<std::string>(), 10) != 0) fail(ErrorKind::parse_error, "bad integer string");
    return z;
  }
  fail(ErrorKind::parse_error, "expected an integer, got " + j.dump());
}

FieldPtr common_series_field(const LaurentSeries &f) {
  FieldPtr field;
  for (const auto &[e, c] : f.terms()) {
    if (c.is_rational()) continue;
    if (field && !field->same_as(*c.field()))
      fail(ErrorKind::tower_mismatch, "series mixes scalar towers");
    field = c.field();
  }
  return field;
}

}  // namespace

Json rational_to_json(const Rational &q) {
  return Json::array({integer_to_json(q.get_num()), integer_to_json(q.get_den())});
}

Rational rational_from_json(const Json &j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (!j.is_array() || j.size() != 2) fail(ErrorKind::parse_error, "expected [num, den], got " + j.dump());
  Integer num = integer_from_json(j[0]), den = integer_from_json(j[1]);
  if (den == 0) fail(ErrorKind::parse_error, "zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Json field_to_json(const NumberField &f) {
  if (f.kind() == NumberField::Kind::cyclotomic) return Json{{"kind", "cyclotomic"}, {"m", f.order()}};
  return Json{{"kind", "sqrt"}, {"radicand", rational_to_json(f.radicand())}};
}

FieldPtr field_from_json(const Json &j) {
  if (j.is_null()) return nullptr;
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "cyclotomic") return NumberField::cyclotomic(j.at("m").get<int>());
  if (kind == "sqrt") return NumberField::square_root(rational_from_json(j.at("radicand")));
  fail(ErrorKind::parse_error, "unknown field kind '" + kind + "'");
}

Json scalar_to_json(const Scalar &s) {
  Json arr = Json::array();
  for (const auto &q : s.coefficients()) arr.push_back(rational_to_json(q));
  return arr;
}

Scalar scalar_from_json(const Json &j, const FieldPtr &field) {
  if (!j.is_array()) fail(ErrorKind::parse_error, "expected a coefficient vector, got " + j.dump());
  std::vector<Rational> c;
  for (const auto &x : j) c.push_back(rational_from_json(x));
  if (c.empty()) return Scalar();
  if (c.size() == 1) return Scalar(c[0]);
  if (!field) fail(ErrorKind::parse_error, "coefficient vector of length > 1 without a field");
  if (static_cast<int>(c.size()) > field->degree())
    fail(ErrorKind::parse_error, "coefficient vector longer than the field degree");
  return Scalar::from_coefficients(field, std::move(c));
}

Json tagged_scalar_to_json(const Scalar &s) {
  Json j{{"c", scalar_to_json(s)}};
  if (!s.is_rational()) j["field"] = field_to_json(*s.field());
  return j;
}

Scalar tagged_scalar_from_json(const Json &j) {
  FieldPtr f = j.contains("field") ? field_from_json(j.at("field")) : nullptr;
  return scalar_from_json(j.at("c"), f);
}

Json series_to_json(const LaurentSeries &f) {
  Json terms = Json::array();
  for (const auto &[e, c] : f.terms()) {
    Rational q(e, f.ramification());
    q.canonicalize();
    terms.push_back(Json{{"e", rational_to_json(q)}, {"c", scalar_to_json(c)}});
  }
  Json j{{"ram", f.ramification()}, {"terms", terms}};
  j["trunc"] = f.truncation() ? Json(*f.truncation()) : Json(nullptr);
  if (FieldPtr field = common_series_field(f)) j["field"] = field_to_json(*field);
  return j;
}

LaurentSeries series_from_json(const Json &j) {
  try {
    const int ram = j.value("ram", 1);
    if (ram < 1) fail(ErrorKind::parse_error, "ramification must be positive");
    std::optional<int> trunc;
    if (j.contains("trunc") && !j.at("trunc").is_null()) trunc = j.at("trunc").get<int>();
    FieldPtr field = j.contains("field") ? field_from_json(j.at("field")) : nullptr;
    LaurentSeries::Terms terms;
    for (const auto &t : j.at("terms")) {
      Rational e = rational_from_json(t.at("e")) * ram;
      e.canonicalize();
      if (e.get_den() != 1) fail(ErrorKind::parse_error, "exponent not in (1/ram)Z");
      Scalar c = scalar_from_json(t.at("c"), field);
      int k = static_cast<int>(e.get_num().get_si());
      if (c.is_zero()) continue;
      if (!terms.emplace(k, c).second) fail(ErrorKind::parse_error, "duplicate exponent in series");
    }
    return LaurentSeries(std::move(terms), trunc, ram);
  } catch (const nlohmann::json::exception &ex) {
    fail(ErrorKind::parse_error, std::string("malformed series JSON: ") + ex.what());
  }
}

Json matrix_to_json(const QMatrix &m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Scalar &x = m(i, j);
      row.push_back(x.is_rational() ? rational_to_json(x.rational()) : tagged_scalar_to_json(x));
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace rigid
