#pragma once

// JSON encodings of exact values. Rationals are [num, den] pairs (numbers when
// they fit in 64 bits, decimal strings otherwise).

#include <json.hpp>

#include "rigid/laurent.hpp"
#include "rigid/matrix.hpp"
#include "rigid/scalar.hpp"

namespace rigid {

using Json = nlohmann::json;

Json rational_to_json(const Rational &q);
Rational rational_from_json(const Json &j);

Json field_to_json(const NumberField &f);
FieldPtr field_from_json(const Json &j);

/// Power-basis coordinates; the field is carried separately.
Json scalar_to_json(const Scalar &s);
Scalar scalar_from_json(const Json &j, const FieldPtr &field);
/// Self-describing scalar: {"c": [...], "field": {...}} (field omitted for rationals).
Json tagged_scalar_to_json(const Scalar &s);
Scalar tagged_scalar_from_json(const Json &j);

Json series_to_json(const LaurentSeries &f);
LaurentSeries series_from_json(const Json &j);

Json matrix_to_json(const QMatrix &m);

}  // namespace rigid
