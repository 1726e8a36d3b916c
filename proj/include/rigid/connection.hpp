#pragma once

// Formal connections d + A dt in a matrix representation, gauge action and
// coordinate changes.

#include <json.hpp>

#include "rigid/chevalley.hpp"
#include "rigid/laurent.hpp"

namespace rigid {

using SeriesMatrix = Matrix<LaurentSeries>;
/// Lie-algebra element with series coefficients, in Chevalley-basis order.
using SeriesVector = std::vector<LaurentSeries>;

/// t: formal disk at 0; s: formal disk at infinity (s = 1/t); global: Laurent polynomials on G_m.
enum class Coord { t, s, global };

std::string coord_name(Coord c);
Coord parse_coord(const std::string &s);

struct FormalConnection {
  AlgebraPtr alg;
  RepKind rep = RepKind::adjoint;
  Coord coord = Coord::global;
  SeriesMatrix A;

  const Representation &representation() const { return alg->representation(rep); }
};

SeriesMatrix to_series(const QMatrix &m);
/// sum_k x_k rho(b_k).
SeriesMatrix assemble_matrix(const Representation &rep, const SeriesVector &x);
/// Chevalley coordinates of a series matrix, or nullopt when it is not in the image.
std::optional<SeriesVector> series_preimage(const Representation &rep, const SeriesMatrix &m);

FormalConnection connection_from_lie(AlgebraPtr alg, RepKind rep, Coord coord, const SeriesVector &x);
/// Throws unsupported_connection when A is not in the image of the representation.
SeriesVector lie_coordinates(const FormalConnection &c);
FormalConnection adjoint_connection(const FormalConnection &c);

/// d + (N + lambda t E_theta) dt / t.
FormalConnection frenkel_gross(AlgebraPtr alg, RepKind rep, const Scalar &lambda);

/// t = 1/s, dt = -ds/s^2. Maps global to s and back.
FormalConnection change_to_infinity(const FormalConnection &c);
/// Read a global connection on the disk at 0.
FormalConnection at_zero(const FormalConnection &c);
/// Pull back along t = u^b: A(t)dt becomes b u^(b-1) A(u^b) du.
FormalConnection pullback(const FormalConnection &c, int b);

/// The t^-1 coefficient. Pole order above one raises not_first_order.
QMatrix residue(const FormalConnection &c);

enum class MonodromyType { unipotent_regular, unipotent, other };
std::string monodromy_type_name(MonodromyType m);
MonodromyType monodromy_type(const FormalConnection &c);

enum class GaugeKind { cocharacter, unipotent, constant, product };

struct GaugeElement {
  GaugeKind kind;
  SeriesMatrix g, g_inv;
};

/// mu_check(t^k) for a rational coweight given in Cartan coordinates.
GaugeElement cocharacter_gauge(const ChevalleyAlgebra &alg, RepKind rep, const Vector &coweight, int k);
/// exp(rho(x)) for x supported on positive roots only or on negative roots only.
GaugeElement unipotent_gauge(const ChevalleyAlgebra &alg, RepKind rep, const SeriesVector &x);
GaugeElement constant_gauge(const QMatrix &g);
/// Acts as b first, then a.
GaugeElement compose(const GaugeElement &a, const GaugeElement &b);
GaugeElement inverse(const GaugeElement &g);

/// A -> g A g^-1 - (dg) g^-1.
FormalConnection gauge_transform(const FormalConnection &c, const GaugeElement &g);

nlohmann::json connection_to_json(const FormalConnection &c);
FormalConnection connection_from_json(const nlohmann::json &j);

}  // namespace rigid
