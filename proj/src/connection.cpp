#include "rigid/connection.hpp"

#include <map>
#include <numeric>
#include <set>

#include "rigid/principal.hpp"
#include "rigid/serialize.hpp"

namespace rigid {

std::string coord_name(Coord c) {
  switch (c) {
    case Coord::t: return "t";
    case Coord::s: return "s";
    case Coord::global: return "global";
  }
  return "?";
}

Coord parse_coord(const std::string &s) {
  if (s == "t") return Coord::t;
  if (s == "s") return Coord::s;
  if (s == "global") return Coord::global;
  fail(ErrorKind::parse_error, "unknown coordinate tag '" + s + "'");
}

std::string monodromy_type_name(MonodromyType m) {
  switch (m) {
    case MonodromyType::unipotent_regular: return "unipotent_regular";
    case MonodromyType::unipotent: return "unipotent";
    case MonodromyType::other: return "other";
  }
  return "?";
}

SeriesMatrix to_series(const QMatrix &m) {
  SeriesMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = LaurentSeries(m(i, j));
  return r;
}

SeriesMatrix assemble_matrix(const Representation &rep, const SeriesVector &x) {
  if (x.size() != rep.images.size()) fail(ErrorKind::invalid_argument, "element has the wrong dimension");
  SeriesMatrix a(rep.dim, rep.dim);
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (x[k].is_zero()) continue;
    const QMatrix &img = rep.images[k];
    for (std::size_t i = 0; i < rep.dim; ++i)
      for (std::size_t j = 0; j < rep.dim; ++j)
        if (!img(i, j).is_zero()) a(i, j) += x[k].scaled(img(i, j));
  }
  return a;
}

std::optional<SeriesVector> series_preimage(const Representation &rep, const SeriesMatrix &m) {
  if (m.rows() != rep.dim || m.cols() != rep.dim) fail(ErrorKind::invalid_argument, "matrix has the wrong size");
  int ram = 1;
  for (const auto &f : m.data()) ram = std::lcm(ram, f.ramification());
  std::optional<int> trunc;
  std::set<int> exps;
  std::vector<LaurentSeries> entries;
  for (const auto &f : m.data()) {
    LaurentSeries g = f.with_ramification(ram);
    if (g.truncation()) trunc = trunc ? std::min(*trunc, *g.truncation()) : *g.truncation();
    for (const auto &[e, c] : g.terms()) exps.insert(e);
    entries.push_back(std::move(g));
  }
  // each coordinate is only as precise as the entries it is read from
  const std::size_t n = rep.images.size();
  std::vector<std::optional<int>> own(n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t a : rep.coordinate_entries(k))
      if (auto t = entries[a].truncation()) own[k] = own[k] ? std::min(*own[k], *t) : *t;
  std::vector<LaurentSeries::Terms> out(n);
  for (int e : exps) {
    QMatrix s(rep.dim, rep.dim);
    for (std::size_t a = 0; a < entries.size(); ++a) {
      auto it = entries[a].terms().find(e);
      if (it != entries[a].terms().end()) s(a / rep.dim, a % rep.dim) = it->second;
    }
    std::optional<Vector> c;
    if (!trunc || e < *trunc) {
      c = rep.preimage(s);
      if (!c) return std::nullopt;
    } else {
      c = rep.coordinates(s);
    }
    for (std::size_t k = 0; k < n; ++k)
      if (!(*c)[k].is_zero() && (!own[k] || e < *own[k])) out[k].emplace(e, (*c)[k]);
  }
  SeriesVector x;
  for (std::size_t k = 0; k < n; ++k) x.push_back(LaurentSeries(std::move(out[k]), own[k], ram).normalized());
  return x;
}

FormalConnection connection_from_lie(AlgebraPtr alg, RepKind rep, Coord coord, const SeriesVector &x) {
  FormalConnection c{alg, rep, coord, {}};
  c.A = assemble_matrix(alg->representation(rep), x);
  return c;
}

SeriesVector lie_coordinates(const FormalConnection &c) {
  auto x = series_preimage(c.representation(), c.A);
  if (!x) fail(ErrorKind::unsupported_connection, "connection form is not in the image of the Lie algebra");
  return *x;
}

FormalConnection adjoint_connection(const FormalConnection &c) {
  if (c.rep == RepKind::adjoint) return c;
  return connection_from_lie(c.alg, RepKind::adjoint, c.coord, lie_coordinates(c));
}

FormalConnection frenkel_gross(AlgebraPtr alg, RepKind rep, const Scalar &lambda) {
  if (lambda.is_zero()) fail(ErrorKind::invalid_argument, "lambda must be nonzero");
  const auto &pd = principal(*alg);
  SeriesVector x(alg->dim());
  for (std::size_t k = 0; k < alg->dim(); ++k)
    if (!pd.p_minus1[k].is_zero()) x[k] = LaurentSeries::monomial(pd.p_minus1[k], -1);
  x[alg->root_index(alg->root_system().highest_root())] += LaurentSeries(lambda);
  return connection_from_lie(alg, rep, Coord::global, x);
}

FormalConnection change_to_infinity(const FormalConnection &c) {
  if (c.coord == Coord::t) fail(ErrorKind::invalid_argument, "change_to_infinity needs a global connection");
  FormalConnection out = c;
  out.coord = c.coord == Coord::global ? Coord::s : Coord::global;
  for (std::size_t i = 0; i < c.A.rows(); ++i)
    for (std::size_t j = 0; j < c.A.cols(); ++j) {
      const LaurentSeries &f = c.A(i, j);
      if (!f.is_exact()) fail(ErrorKind::invalid_argument, "coordinate change needs Laurent polynomial entries");
      out.A(i, j) = -f.reflected().shifted(-2 * f.ramification());
    }
  return out;
}

FormalConnection at_zero(const FormalConnection &c) {
  if (c.coord == Coord::s) fail(ErrorKind::invalid_argument, "connection is given at infinity");
  FormalConnection out = c;
  out.coord = Coord::t;
  return out;
}

FormalConnection pullback(const FormalConnection &c, int b) {
  if (b < 1) fail(ErrorKind::invalid_argument, "pullback degree must be positive");
  FormalConnection out = c;
  const LaurentSeries jac = LaurentSeries::monomial(Scalar(b), b - 1);
  for (std::size_t i = 0; i < c.A.rows(); ++i)
    for (std::size_t j = 0; j < c.A.cols(); ++j)
      out.A(i, j) = c.A(i, j).is_zero() ? LaurentSeries() : ramified_pullback(c.A(i, j), b) * jac;
  return out;
}

QMatrix residue(const FormalConnection &c) {
  QMatrix r(c.A.rows(), c.A.cols());
  for (std::size_t i = 0; i < c.A.rows(); ++i)
    for (std::size_t j = 0; j < c.A.cols(); ++j) {
      const LaurentSeries &f = c.A(i, j);
      auto ord = f.order();
      if (ord && *ord < -1) fail(ErrorKind::not_first_order, "pole of order above one in this gauge");
      auto tr = f.truncation_order();
      if (!ord && tr && *tr <= -1) fail(ErrorKind::insufficient_precision, "entry unknown at the residue");
      if (ord) r(i, j) = f.coefficient_at(Rational(-1));
    }
  return r;
}

MonodromyType monodromy_type(const FormalConnection &c) {
  QMatrix r = residue(c);
  QMatrix p = r;
  for (std::size_t k = 1; k < r.rows(); ++k) p = p * r;
  if (!p.is_zero_matrix()) return MonodromyType::other;
  auto x = c.representation().preimage(r);
  if (!x) return MonodromyType::unipotent;
  return nilpotent_is_principal(*c.alg, *x) ? MonodromyType::unipotent_regular : MonodromyType::unipotent;
}

GaugeElement cocharacter_gauge(const ChevalleyAlgebra &alg, RepKind rep, const Vector &coweight, int k) {
  const Representation &r = alg.representation(rep);
  Vector x = alg.zero();
  for (int i = 0; i < alg.rank(); ++i) x[i] = coweight.at(i);
  QMatrix d = r.image(x);
  std::vector<Rational> w(r.dim);
  int ram = 1;
  for (std::size_t i = 0; i < r.dim; ++i) {
    for (std::size_t j = 0; j < r.dim; ++j)
      if (i != j && !d(i, j).is_zero()) fail(ErrorKind::invalid_argument, "Cartan does not act diagonally");
    if (!d(i, i).is_rational()) fail(ErrorKind::invalid_argument, "coweight must be rational");
    w[i] = d(i, i).rational() * k;
    ram = std::lcm(ram, static_cast<int>(w[i].get_den().get_si()));
  }
  GaugeElement g{GaugeKind::cocharacter, SeriesMatrix(r.dim, r.dim), SeriesMatrix(r.dim, r.dim)};
  for (std::size_t i = 0; i < r.dim; ++i) {
    int e = static_cast<int>(Rational(w[i] * ram).get_num().get_si());
    g.g(i, i) = LaurentSeries::monomial(Scalar(1), e, ram);
    g.g_inv(i, i) = LaurentSeries::monomial(Scalar(1), -e, ram);
  }
  return g;
}

namespace {

SeriesMatrix exp_nilpotent(const SeriesMatrix &m) {
  const std::size_t n = m.rows();
  SeriesMatrix sum = SeriesMatrix::identity(n), term = SeriesMatrix::identity(n);
  for (std::size_t k = 1; k < n; ++k) {
    term = (term * m).scaled(LaurentSeries(Scalar(Rational(1, static_cast<long>(k)))));
    if (term.is_zero_matrix()) break;
    sum += term;
  }
  return sum;
}

}  // namespace

GaugeElement unipotent_gauge(const ChevalleyAlgebra &alg, RepKind rep, const SeriesVector &x) {
  bool pos = false, neg = false;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (x[k].is_zero()) continue;
    int ht = alg.basis_height(k);
    if (ht == 0) fail(ErrorKind::invalid_argument, "unipotent gauge argument has a Cartan component");
    (ht > 0 ? pos : neg) = true;
  }
  if (pos && neg) fail(ErrorKind::invalid_argument, "unipotent gauge argument must be nilpotent");
  SeriesMatrix m = assemble_matrix(alg.representation(rep), x);
  return GaugeElement{GaugeKind::unipotent, exp_nilpotent(m), exp_nilpotent(-m)};
}

GaugeElement constant_gauge(const QMatrix &g) {
  return GaugeElement{GaugeKind::constant, to_series(g), to_series(inverse(g))};
}

GaugeElement compose(const GaugeElement &a, const GaugeElement &b) {
  return GaugeElement{GaugeKind::product, a.g * b.g, b.g_inv * a.g_inv};
}

GaugeElement inverse(const GaugeElement &g) { return GaugeElement{g.kind, g.g_inv, g.g}; }

FormalConnection gauge_transform(const FormalConnection &c, const GaugeElement &g) {
  if (g.g.rows() != c.A.rows()) fail(ErrorKind::invalid_argument, "gauge has the wrong size");
  SeriesMatrix dg(g.g.rows(), g.g.cols());
  for (std::size_t i = 0; i < dg.rows(); ++i)
    for (std::size_t j = 0; j < dg.cols(); ++j) dg(i, j) = derivative(g.g(i, j));
  FormalConnection out = c;
  out.A = g.g * c.A * g.g_inv - dg * g.g_inv;
  if (out.coord == Coord::global) {
    for (const auto &f : out.A.data())
      if (!f.is_exact()) {
        out.coord = Coord::t;
        break;
      }
  }
  return out;
}

nlohmann::json connection_to_json(const FormalConnection &c) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < c.A.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < c.A.cols(); ++j) row.push_back(series_to_json(c.A(i, j)));
    rows.push_back(row);
  }
  return {{"rep",
           {{"type", std::string(1, type_letter(c.alg->type()))},
            {"rank", c.alg->rank()},
            {"kind", rep_kind_name(c.rep)}}},
          {"coord", coord_name(c.coord)},
          {"matrix", rows}};
}

FormalConnection connection_from_json(const nlohmann::json &j) {
  try {
    const auto &r = j.at("rep");
    auto alg = ChevalleyAlgebra::build(parse_cartan_type(r.at("type").get<std::string>()), r.at("rank").get<int>());
    FormalConnection c{alg, parse_rep_kind(r.value("kind", std::string("adjoint"))),
                       parse_coord(j.at("coord").get<std::string>()), {}};
    const std::size_t n = c.representation().dim;
    const auto &m = j.at("matrix");
    if (!m.is_array() || m.size() != n) fail(ErrorKind::parse_error, "matrix has the wrong number of rows");
    c.A = SeriesMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      if (!m[i].is_array() || m[i].size() != n) fail(ErrorKind::parse_error, "matrix row has the wrong length");
      for (std::size_t k = 0; k < n; ++k) c.A(i, k) = series_from_json(m[i][k]);
    }
    if (c.coord == Coord::global)
      for (const auto &f : c.A.data())
        if (!f.is_exact()) fail(ErrorKind::parse_error, "global connections need Laurent polynomial entries");
    return c;
  } catch (const nlohmann::json::exception &ex) {
    fail(ErrorKind::parse_error, std::string("malformed connection JSON: ") + ex.what());
  }
}

}  // namespace rigid
