#include "rigid/hitchin.hpp"

#include "rigid/principal.hpp"
#include "rigid/serialize.hpp"

namespace rigid {

namespace {

LaurentSeries series_of(const Polynomial &p) {
  LaurentSeries::Terms t;
  for (int k = 0; k <= p.degree(); ++k)
    if (!p.coefficient(k).is_zero()) t.emplace(k, p.coefficient(k));
  return LaurentSeries(std::move(t), std::nullopt);
}

// p(u + a)
Polynomial shifted(const Polynomial &p, const Scalar &a) {
  Polynomial out, lin(std::vector<Scalar>{a, Scalar(1)});
  for (int k = p.degree(); k >= 0; --k) out = out * lin + Polynomial(std::vector<Scalar>{p.coefficient(k)});
  return out;
}

// s^deg p(1/s)
Polynomial reversed(const Polynomial &p) {
  std::vector<Scalar> c(p.coefficients().rbegin(), p.coefficients().rend());
  return Polynomial(std::move(c));
}

Polynomial power(const Polynomial &p, int n) {
  Polynomial out(std::vector<Scalar>{Scalar(1)});
  for (int k = 0; k < n; ++k) out = out * p;
  return out;
}

Polynomial linear(const Rational &a) { return Polynomial(std::vector<Scalar>{Scalar(-a), Scalar(1)}); }

std::vector<int> degrees(const ChevalleyAlgebra &alg) { return principal(alg).degrees; }

Polynomial denominator(const HitchinLevelSpec &spec, std::size_t i) {
  Polynomial d(std::vector<Scalar>{Scalar(1)});
  for (const auto &p : spec.points)
    if (p.at) d = d * power(linear(*p.at), p.bounds[i]);
  return d;
}

// numerator of h over a common denominator that h's denominator divides
Vector numerator_coordinates(const DifferentialSection &h, const Polynomial &common, int top) {
  Polynomial q, r;
  Polynomial::divmod(common, h.denominator, q, r);
  if (!r.is_zero()) fail(ErrorKind::invalid_argument, "denominator does not divide the common one");
  Polynomial n = h.numerator * q;
  if (n.degree() > top) fail(ErrorKind::invalid_argument, "section does not fit the ambient space");
  Vector out(top + 1);
  for (int k = 0; k <= n.degree(); ++k) out[k] = n.coefficient(k);
  return out;
}

std::vector<Rational> checked_points(const std::vector<Rational> &zs) {
  if (zs.empty()) fail(ErrorKind::invalid_argument, "need at least one point z");
  for (std::size_t a = 0; a < zs.size(); ++a) {
    if (zs[a] == 0) fail(ErrorKind::invalid_argument, "z must lie in G_m, away from 0");
    for (std::size_t b = 0; b < a; ++b)
      if (zs[a] == zs[b]) fail(ErrorKind::invalid_argument, "points z must be distinct");
  }
  return zs;
}

// coefficients of u^lo..u^hi at z for every basis element of index i, stacked as columns
QMatrix expansion_block(const std::vector<DifferentialSection> &basis, const Rational &z, int lo, int hi) {
  QMatrix m(hi - lo + 1, basis.size());
  for (std::size_t c = 0; c < basis.size(); ++c) {
    LaurentSeries f = local_expansion(basis[c], P1Point(z), hi + 1);
    for (int e = lo; e <= hi; ++e) m(e - lo, c) = f.coefficient(e);
  }
  return m;
}

}  // namespace

std::string point_name(const P1Point &p) { return p ? to_string(*p) : "inf"; }

void HitchinLevelSpec::validate() const {
  const std::size_t l = alg->rank();
  for (std::size_t a = 0; a < points.size(); ++a) {
    if (points[a].bounds.size() != l) fail(ErrorKind::invalid_argument, "one pole bound per index is needed");
    for (int b : points[a].bounds)
      if (b < 0) fail(ErrorKind::invalid_argument, "pole bounds must be nonnegative");
    for (std::size_t b = 0; b < a; ++b)
      if (points[a].at == points[b].at) fail(ErrorKind::invalid_argument, "marked points must be distinct");
  }
}

int HitchinLevelSpec::bound(std::size_t i, const P1Point &p) const {
  for (const auto &m : points)
    if (m.at == p) return m.bounds[i];
  return 0;
}

LaurentSeries local_expansion(const DifferentialSection &h, const P1Point &p, int order) {
  if (p) {
    const Scalar a(*p);
    LaurentSeries num = series_of(shifted(h.numerator, a)), den = series_of(shifted(h.denominator, a));
    const int v = *den.valuation();
    return (num * invert(den, order + v + 1)).truncated(order);
  }
  // h(1/s) = s^(deg D - deg N) rev(N) / rev(D), times (-1)^d s^(-2d)
  LaurentSeries num = series_of(reversed(h.numerator)), den = series_of(reversed(h.denominator));
  const int shift = h.denominator.degree() - h.numerator.degree() - 2 * h.degree;
  LaurentSeries f = (num * invert(den, order - shift + 1)).shifted(shift);
  if (h.degree % 2) f = -f;
  return f.truncated(order);
}

int pole_order(const DifferentialSection &h, const P1Point &p) {
  if (h.numerator.is_zero()) return 0;
  // the leading exponent is bounded below by -(deg D + 2d) in any chart
  const int reach = h.denominator.degree() + h.numerator.degree() + 2 * h.degree + 2;
  LaurentSeries f = local_expansion(h, p, reach);
  auto v = f.valuation();
  if (!v) fail(ErrorKind::insufficient_precision, "expansion vanished to the requested order");
  return std::max(0, -*v);
}

int section_space_dim(const HitchinLevelSpec &spec, std::size_t i) {
  int total = 0;
  for (const auto &p : spec.points) total += p.bounds.at(i);
  return std::max(0, total - 2 * degrees(*spec.alg).at(i) + 1);
}

std::vector<DifferentialSection> section_basis(const HitchinLevelSpec &spec, std::size_t i) {
  spec.validate();
  const int d = degrees(*spec.alg).at(i);
  Polynomial den = denominator(spec, i);
  std::vector<DifferentialSection> out;
  for (int k = 0; k < section_space_dim(spec, i); ++k)
    out.push_back({i, d, Polynomial::monomial(Scalar(1), k), den});
  return out;
}

int total_dim(const HitchinLevelSpec &spec) {
  int t = 0;
  for (std::size_t i = 0; i < static_cast<std::size_t>(spec.alg->rank()); ++i) t += section_space_dim(spec, i);
  return t;
}

namespace {

HitchinLevelSpec build_spec(AlgebraPtr alg, const std::vector<Rational> &zs, bool top_extra) {
  auto d = degrees(*alg);
  const std::size_t l = d.size();
  MarkedPoint zero{Rational(0), {}}, inf{std::nullopt, {}};
  for (std::size_t i = 0; i < l; ++i) {
    zero.bounds.push_back(d[i] - 1);
    inf.bounds.push_back(d[i] + (top_extra && i + 1 == l ? 1 : 0));
  }
  HitchinLevelSpec spec{std::move(alg), {zero}};
  for (const auto &z : zs) {
    MarkedPoint m{z, d};
    spec.points.push_back(m);
  }
  spec.points.push_back(inf);
  spec.validate();
  return spec;
}

}  // namespace

HitchinLevelSpec global_spec(AlgebraPtr alg) { return build_spec(std::move(alg), {}, true); }

HitchinLevelSpec rs_spec(AlgebraPtr alg, const std::vector<Rational> &zs) {
  return build_spec(std::move(alg), checked_points(zs), true);
}

HitchinLevelSpec prime_spec(AlgebraPtr alg, const std::vector<Rational> &zs) {
  return build_spec(std::move(alg), checked_points(zs), false);
}

nlohmann::json RankReport::to_json() const {
  return {{"check", check}, {"matrix", matrix_to_json(matrix)}, {"rank", rank}, {"expected_rank", expected}, {"pass", pass}};
}

RankReport verify_iota_isomorphism(AlgebraPtr alg, const std::vector<Rational> &zs) {
  auto spec = prime_spec(alg, zs);
  auto d = degrees(*alg);
  std::size_t n = 0;
  for (int di : d) n += di * zs.size();
  RankReport r{"iota_isomorphism", QMatrix(n, static_cast<std::size_t>(total_dim(spec))), 0, n, false};
  std::size_t row = 0, col = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    auto basis = section_basis(spec, i);
    for (const auto &z : zs) {
      // h_{ij} u^(-j-1), j = 0..d_i - 1
      QMatrix b = expansion_block(basis, z, -d[i], -1);
      for (int j = 0; j < d[i]; ++j)
        for (std::size_t c = 0; c < basis.size(); ++c) r.matrix(row + j, col + c) = b(d[i] - 1 - j, c);
      row += d[i];
    }
    col += basis.size();
  }
  r.rank = rank(r.matrix);
  r.pass = r.matrix.is_square() && r.rank == n;
  return r;
}

RankReport verify_direct_sum_decomposition(AlgebraPtr alg, const std::vector<Rational> &zs) {
  auto ambient = rs_spec(alg, zs), global = global_spec(alg), prime = prime_spec(alg, zs);
  const std::size_t l = alg->rank();
  std::size_t rows = 0, cols = 0;
  std::vector<int> top(l);
  for (std::size_t i = 0; i < l; ++i) {
    top[i] = section_space_dim(ambient, i) - 1;
    rows += top[i] + 1;
    cols += section_space_dim(global, i) + section_space_dim(prime, i);
  }
  RankReport r{"direct_sum_decomposition", QMatrix(rows, cols), 0, static_cast<std::size_t>(total_dim(ambient)), false};
  std::size_t row = 0, col = 0;
  for (std::size_t i = 0; i < l; ++i) {
    Polynomial common = denominator(ambient, i);
    for (const auto *sp : {&global, &prime})
      for (const auto &h : section_basis(*sp, i)) {
        Vector v = numerator_coordinates(h, common, top[i]);
        for (int k = 0; k <= top[i]; ++k) r.matrix(row + k, col) = v[k];
        ++col;
      }
    row += top[i] + 1;
  }
  r.rank = rank(r.matrix);
  // a basis of the ambient space: independent and as many as its dimension
  r.pass = r.rank == r.expected && cols == r.expected;
  return r;
}

RankReport verify_block_diagonal(AlgebraPtr alg, const std::vector<Rational> &zs) {
  RankReport iota = verify_iota_isomorphism(alg, zs);
  auto spec = prime_spec(alg, zs);
  auto d = degrees(*alg);
  const std::size_t n = iota.expected;
  RankReport r{"block_diagonal_after_correction", QMatrix(), 0, n, false};
  if (!iota.pass) return r;
  QMatrix inv = inverse(iota.matrix);

  // restriction rows: for each point z and index i, coefficients u^-d_i..u^d_i
  std::size_t rows = 0;
  for (int di : d) rows += (2 * di + 1) * zs.size();
  QMatrix restr(rows, n);
  std::vector<std::size_t> row_index;  // index i of each row
  std::size_t col0 = 0;
  std::vector<std::size_t> col_start(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    col_start[i] = col0;
    col0 += section_space_dim(spec, i);
  }
  std::size_t row = 0;
  for (const auto &z : zs)
    for (std::size_t i = 0; i < d.size(); ++i) {
      auto basis = section_basis(spec, i);
      QMatrix b = expansion_block(basis, z, -d[i], d[i]);
      for (int e = 0; e <= 2 * d[i]; ++e) {
        for (std::size_t c = 0; c < basis.size(); ++c) restr(row + e, col_start[i] + c) = b(e, c);
        row_index.push_back(i);
      }
      row += 2 * d[i] + 1;
    }
  r.matrix = restr * inv;
  r.rank = rank(r.matrix);
  // the columns of iota^-1 follow iota's rows: index-major, then point, then j
  std::vector<std::size_t> new_col_index;
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t k = 0; k < d[i] * zs.size(); ++k) new_col_index.push_back(i);
  bool ok = r.rank == n;
  for (std::size_t a = 0; a < rows && ok; ++a)
    for (std::size_t c = 0; c < n; ++c)
      if (row_index[a] != new_col_index[c] && !r.matrix(a, c).is_zero()) ok = false;
  // principal rows, read in iota's order, form the identity
  QMatrix prin(n, n);
  std::size_t pr = 0;
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t zi = 0; zi < zs.size(); ++zi) {
      // locate the block of (z, i) in the restriction rows
      std::size_t start = 0;
      for (std::size_t zz = 0; zz < zi; ++zz)
        for (int dj : d) start += 2 * dj + 1;
      for (std::size_t ii = 0; ii < i; ++ii) start += 2 * d[ii] + 1;
      for (int j = 0; j < d[i]; ++j) {
        // iota row j holds u^(-j-1), which sits at offset d_i - 1 - j
        for (std::size_t c = 0; c < n; ++c) prin(pr, c) = r.matrix(start + d[i] - 1 - j, c);
        ++pr;
      }
    }
  ok = ok && prin == QMatrix::identity(n);
  r.pass = ok;
  return r;
}

}  // namespace rigid
