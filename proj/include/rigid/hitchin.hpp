#pragma once

// Meromorphic d-differentials on P^1 with bounded poles, and exact rank
// certificates for the decomposition of the Hitchin base with level structure.

#include <json.hpp>
#include <optional>

#include "rigid/chevalley.hpp"
#include "rigid/laurent.hpp"
#include "rigid/polynomial.hpp"

namespace rigid {

/// A point of P^1: a rational coordinate, or infinity when empty.
using P1Point = std::optional<Rational>;
std::string point_name(const P1Point &p);

struct MarkedPoint {
  P1Point at;
  /// Pole bound for each index i = 0..l-1.
  std::vector<int> bounds;
};

struct HitchinLevelSpec {
  AlgebraPtr alg;
  std::vector<MarkedPoint> points;

  /// Throws invalid_argument on negative bounds, wrong lengths or repeated points.
  void validate() const;
  int bound(std::size_t i, const P1Point &p) const;
};

/// h(t) (dt)^d with h = numerator / denominator.
struct DifferentialSection {
  std::size_t index = 0;
  int degree = 0;
  Polynomial numerator, denominator;
};

/// Expansion in the local coordinate at p (t - a, or s = 1/t including the
/// (-1)^d s^(-2d) twist of (dt)^d), known up to u^order.
LaurentSeries local_expansion(const DifferentialSection &h, const P1Point &p, int order);
/// Pole order at p (0 when holomorphic there).
int pole_order(const DifferentialSection &h, const P1Point &p);

/// max(0, sum of bounds - 2 d_i + 1).
int section_space_dim(const HitchinLevelSpec &spec, std::size_t i);
/// t^k / prod_{finite a} (t - a)^{m_a}, k = 0..dim-1.
std::vector<DifferentialSection> section_basis(const HitchinLevelSpec &spec, std::size_t i);
int total_dim(const HitchinLevelSpec &spec);

/// Bounds d_i - 1 at 0, and d_i (i < l) or d_l + 1 (i = l) at infinity.
HitchinLevelSpec global_spec(AlgebraPtr alg);
/// global_spec plus bound d_i at each z.
HitchinLevelSpec rs_spec(AlgebraPtr alg, const std::vector<Rational> &zs);
/// Bounds d_i - 1 at 0, d_i at each z, d_i at infinity.
HitchinLevelSpec prime_spec(AlgebraPtr alg, const std::vector<Rational> &zs);

struct RankReport {
  std::string check;
  QMatrix matrix;
  std::size_t rank = 0, expected = 0;
  bool pass = false;
  nlohmann::json to_json() const;
};

/// Principal parts at the z's (coefficients of u^-1..u^-d_i per index) of the
/// basis of the primed space; pass iff the square matrix has full rank sum d_i * #z.
RankReport verify_iota_isomorphism(AlgebraPtr alg, const std::vector<Rational> &zs);
/// Hit(P^1) + Hit'(P^1 - zs) inside Hit^RS(P^1 - zs): pass iff the union of the
/// two bases is a basis of the ambient space.
RankReport verify_direct_sum_decomposition(AlgebraPtr alg, const std::vector<Rational> &zs);
/// Restriction of the primed space to the local spaces at the z's (coefficients
/// u^-d_i..u^d_i), composed with iota^-1: pass iff the principal-part rows are the
/// identity and every block between different indices vanishes.
RankReport verify_block_diagonal(AlgebraPtr alg, const std::vector<Rational> &zs);

}  // namespace rigid
