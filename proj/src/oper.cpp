#include "rigid/oper.hpp"

#include "rigid/principal.hpp"
#include "rigid/serialize.hpp"

namespace rigid {

namespace {

SeriesVector bracket(const ChevalleyAlgebra &alg, const SeriesVector &x, const SeriesVector &y) {
  SeriesVector out(alg.dim());
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j].is_zero()) continue;
    for (std::size_t k = 0; k < y.size(); ++k) {
      if (y[k].is_zero()) continue;
      const auto &s = alg.structure(j, k);
      if (s.empty()) continue;
      LaurentSeries p = x[j] * y[k];
      for (const auto &[i, c] : s) out[i] += p.scaled(c);
    }
  }
  return out;
}

bool all_zero(const SeriesVector &x) {
  for (const auto &f : x)
    if (!f.is_zero()) return false;
  return true;
}

// X -> exp(ad u) X - sum_k (ad u)^k (u') / (k+1)!
SeriesVector unipotent_step(const ChevalleyAlgebra &alg, const SeriesVector &u, SeriesVector x) {
  SeriesVector term = x;
  for (int k = 1; !all_zero(term); ++k) {
    term = bracket(alg, u, term);
    for (auto &f : term) f = f.scaled(Scalar(Rational(1, k)));
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += term[i];
  }
  SeriesVector du(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) du[i] = derivative(u[i]);
  term = du;
  for (int k = 1; !all_zero(term); ++k) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] -= term[i];
    term = bracket(alg, u, term);
    for (auto &f : term) f = f.scaled(Scalar(Rational(1, k + 1)));
  }
  return x;
}

// g_j = [g_{j+1}, p_-1] + span of the Kostant elements of degree j.
struct DegreeSplit {
  std::vector<std::size_t> rows;    // basis indices of g_j
  std::vector<std::size_t> domain;  // basis indices of g_{j+1}
  std::vector<std::size_t> kostant; // Kostant indices i with d_i - 1 = j
  QMatrix inv;
};

std::vector<DegreeSplit> degree_splits(const ChevalleyAlgebra &alg) {
  const auto &pd = principal(alg);
  const int h = pd.coxeter_number;
  std::vector<DegreeSplit> out(h);
  for (int j = 0; j < h; ++j) {
    DegreeSplit &s = out[j];
    for (std::size_t k = 0; k < alg.dim(); ++k) {
      if (alg.basis_height(k) == j) s.rows.push_back(k);
      if (alg.basis_height(k) == j + 1) s.domain.push_back(k);
    }
    for (std::size_t i = 0; i < pd.degrees.size(); ++i)
      if (pd.degrees[i] - 1 == j) s.kostant.push_back(i);
    const std::size_t n = s.rows.size();
    if (s.domain.size() + s.kostant.size() != n) fail(ErrorKind::invalid_argument, "degree split is not square");
    QMatrix m(n, n);
    std::size_t col = 0;
    for (std::size_t d : s.domain) {
      Vector b = alg.bracket(alg.basis_vector(d), pd.p_minus1);
      for (std::size_t r = 0; r < n; ++r) m(r, col) = b[s.rows[r]];
      ++col;
    }
    for (std::size_t i : s.kostant) {
      for (std::size_t r = 0; r < n; ++r) m(r, col) = pd.kostant_basis[i][s.rows[r]];
      ++col;
    }
    s.inv = inverse(m);
  }
  return out;
}

// Coordinates of the degree-j part of x against the split.
SeriesVector split_coordinates(const DegreeSplit &s, const SeriesVector &x) {
  const std::size_t n = s.rows.size();
  SeriesVector out(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t r = 0; r < n; ++r) {
      const Scalar &c = s.inv(a, r);
      if (!c.is_zero() && !x[s.rows[r]].is_zero()) out[a] += x[s.rows[r]].scaled(c);
    }
  return out;
}

int simple_index(const Root &r) {
  for (std::size_t i = 0; i < r.size(); ++i)
    if (r[i] != 0) return static_cast<int>(i);
  return -1;
}

Scalar pfaffian(const QMatrix &m, std::vector<std::size_t> idx) {
  if (idx.empty()) return Scalar(1);
  const std::size_t a = idx.front();
  Scalar total;
  for (std::size_t p = 1; p < idx.size(); ++p) {
    const Scalar &e = m(a, idx[p]);
    if (e.is_zero()) continue;
    std::vector<std::size_t> rest;
    for (std::size_t q = 1; q < idx.size(); ++q)
      if (q != p) rest.push_back(idx[q]);
    Scalar term = e * pfaffian(m, rest);
    if (p % 2 == 0) term = -term;
    total += term;
  }
  return total;
}

}  // namespace

SeriesVector oper_element(const OperForm &oper) {
  const auto &pd = principal(*oper.alg);
  if (oper.v.size() != pd.kostant_basis.size()) fail(ErrorKind::invalid_argument, "oper needs one coefficient per degree");
  SeriesVector x(oper.alg->dim());
  for (std::size_t k = 0; k < x.size(); ++k)
    if (!pd.p_minus1[k].is_zero()) x[k] = LaurentSeries(pd.p_minus1[k]);
  for (std::size_t i = 0; i < oper.v.size(); ++i)
    for (std::size_t k = 0; k < x.size(); ++k)
      if (!pd.kostant_basis[i][k].is_zero()) x[k] += oper.v[i].scaled(pd.kostant_basis[i][k]);
  return x;
}

FormalConnection assemble(const OperForm &oper, RepKind rep) {
  return connection_from_lie(oper.alg, rep, oper.coord, oper_element(oper));
}

OperForm canonicalize(const FormalConnection &c, int order) {
  const ChevalleyAlgebra &alg = *c.alg;
  const int l = alg.rank();
  SeriesVector x = lie_coordinates(c);

  // negative part must be sum psi_i F_i
  std::vector<LaurentSeries> psi(l);
  for (std::size_t k = 0; k < alg.dim(); ++k) {
    const int ht = alg.basis_height(k);
    if (ht == -1) {
      psi[simple_index(alg.basis_root(k))] = x[k];
    } else if (ht < -1 && !x[k].is_indistinguishable_from_zero()) {
      fail(ErrorKind::not_an_oper, "component along a non-simple negative root");
    }
  }
  for (const auto &p : psi)
    if (p.is_indistinguishable_from_zero()) fail(ErrorKind::not_an_oper, "p_-1 component vanishes along a simple root");

  // torus gauge mu with alpha_i(mu) = psi_i
  std::vector<LaurentSeries> psi_inv(l);
  for (int i = 0; i < l; ++i) psi_inv[i] = invert(psi[i], order);
  for (std::size_t k = 0; k < alg.dim(); ++k) {
    const int ht = alg.basis_height(k);
    if (ht == -1) {
      x[k] = LaurentSeries(1);
    } else if (ht > 0 && !x[k].is_zero()) {
      const Root &r = alg.basis_root(k);
      for (int i = 0; i < l; ++i)
        if (r[i] > 0) x[k] *= power(psi[i], r[i], order);
    }
  }
  for (int j = 0; j < l; ++j) {
    LaurentSeries logd = derivative(psi[j]) * psi_inv[j];
    if (logd.is_zero()) continue;
    std::vector<Rational> e(l);
    e[j] = 1;
    Vector w = coweight_element(alg, e);
    for (int i = 0; i < l; ++i)
      if (!w[alg.cartan_index(i)].is_zero()) x[alg.cartan_index(i)] -= logd.scaled(w[alg.cartan_index(i)]);
  }

  // clear the image of ad p_-1 degree by degree
  const auto splits = degree_splits(alg);
  for (const auto &s : splits) {
    if (s.domain.empty()) continue;
    SeriesVector coords = split_coordinates(s, x);
    SeriesVector u(alg.dim());
    bool any = false;
    for (std::size_t a = 0; a < s.domain.size(); ++a) {
      // an O(t^N) component has nothing determined to clear
      if (coords[a].is_indistinguishable_from_zero()) continue;
      u[s.domain[a]] = -coords[a];
      any = true;
    }
    if (any) x = unipotent_step(alg, u, std::move(x));
  }

  OperForm out{c.alg, c.coord, std::vector<LaurentSeries>(l)};
  for (const auto &s : splits) {
    SeriesVector coords = split_coordinates(s, x);
    for (std::size_t a = 0; a < s.domain.size(); ++a)
      if (!coords[a].is_indistinguishable_from_zero())
        fail(ErrorKind::invalid_argument, "reduction left a component in the image of ad p_-1");
    for (std::size_t b = 0; b < s.kostant.size(); ++b) out.v[s.kostant[b]] = coords[s.domain.size() + b];
  }
  return out;
}

Rational oper_slope(const OperForm &oper) {
  const auto &pd = principal(*oper.alg);
  Rational best = 0;
  std::optional<Rational> unknown;  // largest contribution an undetermined v_i could make
  for (std::size_t i = 0; i < oper.v.size(); ++i) {
    const LaurentSeries &f = oper.v[i];
    if (f.is_zero()) continue;
    if (auto o = f.order()) {
      Rational s = -*o / pd.degrees[i] - 1;
      if (s > best) best = s;
    } else {
      Rational s = -*f.truncation_order() / pd.degrees[i] - 1;
      if (!unknown || s > *unknown) unknown = s;
    }
  }
  if (unknown && *unknown > best) fail(ErrorKind::insufficient_precision, "an undetermined coefficient could dominate the slope");
  best.canonicalize();
  return best;
}

std::vector<Scalar> invariant_values(const ChevalleyAlgebra &alg, const Vector &x) {
  QMatrix m = alg.construction().image(x);
  Polynomial cp = characteristic_polynomial(m);
  std::vector<Scalar> out;
  for (int i = 0; i < static_cast<int>(m.rows()); ++i) out.push_back(cp.coefficient(i));
  if (alg.type() == CartanType::D) {
    // J x is antisymmetric for the antidiagonal form J
    const std::size_t n = m.rows();
    QMatrix jx(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) jx(i, j) = m(n - 1 - i, j);
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    out.push_back(pfaffian(jx, idx));
  }
  return out;
}

Vector coweight_element(const ChevalleyAlgebra &alg, const std::vector<Rational> &c) {
  const int l = alg.rank();
  if (static_cast<int>(c.size()) != l) fail(ErrorKind::invalid_argument, "coweight needs one entry per simple root");
  // alpha_i(sum m_k h_k) = sum_k m_k a_ki
  const auto &a = alg.root_system().cartan_matrix();
  QMatrix at(l, l);
  Vector rhs(l);
  for (int i = 0; i < l; ++i) {
    for (int k = 0; k < l; ++k) at(i, k) = Scalar(a[k][i]);
    rhs[i] = Scalar(c[i]);
  }
  Vector m = *solve(at, rhs);
  Vector x = alg.zero();
  for (int k = 0; k < l; ++k) x[alg.cartan_index(k)] = m[k];
  return x;
}

Vector kostant_residue(const OperForm &oper) {
  const auto &pd = principal(*oper.alg);
  Vector x = pd.p_minus1;
  for (std::size_t i = 0; i < oper.v.size(); ++i) {
    Scalar c = oper.v[i].coefficient_at(Rational(-pd.degrees[i]));
    if (i == 0) c += Scalar(Rational(1, 4));
    for (std::size_t k = 0; k < x.size(); ++k) x[k] += c * pd.kostant_basis[i][k];
  }
  return x;
}

std::vector<Scalar> residue_class(const OperForm &oper) {
  return invariant_values(*oper.alg, kostant_residue(oper));
}

std::string oper_variant_name(OperVariant v) {
  switch (v) {
    case OperVariant::full_disk_punctured: return "full_disk_punctured";
    case OperVariant::regular_singular: return "regular_singular";
    case OperVariant::regular: return "regular";
    case OperVariant::slope_at_most_one_over_h: return "slope_at_most_one_over_h";
  }
  return "?";
}

OperSpaceSpec OperSpaceSpec::punctured() { return {}; }

OperSpaceSpec OperSpaceSpec::regular_singular(const ChevalleyAlgebra &alg, const std::vector<Rational> &c) {
  OperSpaceSpec s;
  s.variant = OperVariant::regular_singular;
  s.residue_class = invariant_values(alg, coweight_element(alg, c));
  return s;
}

OperSpaceSpec OperSpaceSpec::regular(const ChevalleyAlgebra &alg, const std::vector<int> &weight) {
  if (static_cast<int>(weight.size()) != alg.rank()) fail(ErrorKind::invalid_argument, "weight needs one entry per simple root");
  std::vector<Rational> c;
  for (int w : weight) {
    if (w < 0) fail(ErrorKind::invalid_argument, "weight must be dominant");
    c.emplace_back(-(w + 1));
  }
  OperSpaceSpec s;
  s.variant = OperVariant::regular;
  s.residue_class = invariant_values(alg, coweight_element(alg, c));
  s.weight = weight;
  return s;
}

OperSpaceSpec OperSpaceSpec::slope_bounded() {
  OperSpaceSpec s;
  s.variant = OperVariant::slope_at_most_one_over_h;
  return s;
}

namespace {

// ord v_i >= -bound_i, with undetermined coefficients counted as failures
bool pole_bounds(const OperForm &oper, const std::vector<int> &bound) {
  for (std::size_t i = 0; i < oper.v.size(); ++i) {
    const LaurentSeries &f = oper.v[i];
    if (f.is_zero()) continue;
    if (auto o = f.order()) {
      if (*o < -bound[i]) return false;
    } else if (*f.truncation_order() < -bound[i]) {
      return false;
    }
  }
  return true;
}

}  // namespace

bool membership(const OperForm &oper, const OperSpaceSpec &spec) {
  const auto &pd = principal(*oper.alg);
  std::vector<int> bound = pd.degrees;
  switch (spec.variant) {
    case OperVariant::full_disk_punctured:
      return true;
    case OperVariant::slope_at_most_one_over_h:
      bound.back() += 1;
      return pole_bounds(oper, bound);
    case OperVariant::regular_singular:
    case OperVariant::regular:
      return pole_bounds(oper, bound) && residue_class(oper) == spec.residue_class;
  }
  return false;
}

std::optional<std::vector<int>> integral_residue_weight(const OperForm &oper, int bound) {
  const int l = oper.alg->rank();
  const auto target = residue_class(oper);
  std::vector<int> nu(l, 0);
  // nu dominant, ordered by total size then lexicographically
  for (int total = 0; total <= l * bound; ++total) {
    std::vector<std::vector<int>> found;
    std::function<void(int, int)> rec = [&](int i, int left) {
      if (i == l - 1) {
        if (left > bound) return;
        nu[i] = left;
        std::vector<Rational> c;
        for (int v : nu) c.emplace_back(-v);
        if (invariant_values(*oper.alg, coweight_element(*oper.alg, c)) == target) found.push_back(nu);
        return;
      }
      for (int v = 0; v <= std::min(left, bound); ++v) {
        nu[i] = v;
        rec(i + 1, left - v);
      }
    };
    rec(0, total);
    if (!found.empty()) {
      std::vector<int> lambda0 = found.front();
      for (int &v : lambda0) v -= 1;
      return lambda0;
    }
  }
  return std::nullopt;
}

nlohmann::json oper_to_json(const OperForm &oper) {
  nlohmann::json v = nlohmann::json::array();
  for (const auto &f : oper.v) v.push_back(series_to_json(f));
  return {{"type", std::string(1, type_letter(oper.alg->type()))},
          {"rank", oper.alg->rank()},
          {"coord", coord_name(oper.coord)},
          {"v", v}};
}

OperForm oper_from_json(const nlohmann::json &j) {
  try {
    auto alg = ChevalleyAlgebra::build(parse_cartan_type(j.at("type").get<std::string>()), j.at("rank").get<int>());
    OperForm o{alg, parse_coord(j.at("coord").get<std::string>()), {}};
    for (const auto &f : j.at("v")) o.v.push_back(series_from_json(f));
    if (static_cast<int>(o.v.size()) != alg->rank()) fail(ErrorKind::parse_error, "oper needs one coefficient per degree");
    return o;
  } catch (const nlohmann::json::exception &e) {
    fail(ErrorKind::parse_error, std::string("oper JSON: ") + e.what());
  }
}

}  // namespace rigid
