#include "rigid/newton.hpp"

#include <algorithm>
#include <optional>
#include <random>

#include "rigid/charpoly.hpp"
#include "rigid/serialize.hpp"

namespace rigid {

namespace {

struct Point {
  int k;
  Rational v;
};

// lower convex hull of points sorted by k
std::vector<Point> lower_hull(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end(), [](const Point &a, const Point &b) { return a.k < b.k; });
  std::vector<Point> h;
  for (const auto &p : pts) {
    while (h.size() >= 2) {
      const Point &a = h[h.size() - 2], &b = h.back();
      // drop b when it lies on or above segment a-p
      Rational lhs = (b.v - a.v) * (p.k - a.k), rhs = (p.v - a.v) * (b.k - a.k);
      if (lhs >= rhs) h.pop_back();
      else break;
    }
    h.push_back(p);
  }
  return h;
}

std::vector<NewtonEdge> edges_of(const std::vector<Point> &hull) {
  std::vector<NewtonEdge> out;
  for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
    NewtonEdge e;
    e.k_from = hull[i].k;
    e.k_to = hull[i + 1].k;
    e.eigen_valuation = (hull[i].v - hull[i + 1].v) / (e.k_to - e.k_from);
    e.eigen_valuation.canonicalize();
    Rational s = -e.eigen_valuation - 1;
    e.slope = s > 0 ? s : Rational(0);
    out.push_back(e);
  }
  return out;
}

std::vector<std::pair<Rational, int>> irregular_part(const std::vector<NewtonEdge> &edges) {
  std::vector<std::pair<Rational, int>> out;
  for (const auto &e : edges)
    if (e.slope > 0) out.emplace_back(e.eigen_valuation, e.multiplicity());
  return out;
}

// leading term of a / b as a series known just past that term
LaurentSeries leading_ratio(const LaurentSeries &a, const LaurentSeries &b) {
  if (a.is_zero()) return LaurentSeries();
  const int r = common_ramification(a, b);
  LaurentSeries x = a.with_ramification(r), y = b.with_ramification(r);
  const int vb = *y.valuation();
  if (x.is_indistinguishable_from_zero()) return LaurentSeries::big_o(*x.truncation() - vb, r);
  const int e = *x.valuation() - vb;
  LaurentSeries::Terms t{{e, x.leading_coefficient() / y.leading_coefficient()}};
  return LaurentSeries(std::move(t), e + 1, r);
}

// Solve C x = rhs fraction-free; returns (det C, det C * x) or nullopt when C is singular.
std::optional<std::pair<LaurentSeries, std::vector<LaurentSeries>>> bareiss_solve(
    std::vector<std::vector<LaurentSeries>> m) {
  const std::size_t n = m.size();
  LaurentSeries prev(1);
  for (std::size_t k = 0; k < n; ++k) {
    // sparsest usable pivot limits coefficient swell
    std::size_t p = n;
    for (std::size_t i = k; i < n; ++i)
      if (!m[i][k].is_indistinguishable_from_zero() && (p == n || m[i][k].terms().size() < m[p][k].terms().size())) p = i;
    if (p == n) return std::nullopt;
    std::swap(m[p], m[k]);
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j <= n; ++j) {
        LaurentSeries v = m[k][k] * m[i][j];
        if (!m[i][k].is_zero() && !m[k][j].is_zero()) v -= m[i][k] * m[k][j];
        m[i][j] = k == 0 ? v : divide(v, prev);
      }
      m[i][k] = LaurentSeries();
    }
    prev = m[k][k];
  }
  const LaurentSeries det = m[n - 1][n - 1];
  if (det.is_indistinguishable_from_zero()) return std::nullopt;
  std::vector<LaurentSeries> x(n);
  for (std::size_t i = n; i-- > 0;) {
    LaurentSeries acc = det * m[i][n];
    for (std::size_t j = i + 1; j < n; ++j)
      if (!m[i][j].is_zero() && !x[j].is_zero()) acc -= m[i][j] * x[j];
    x[i] = divide(acc, m[i][i]);
  }
  return std::make_pair(det, x);
}

// Gaussian elimination on [C | rhs] keeping `p` terms past the valuation of
// every input entry; nullopt when no pivot is provably nonzero.
std::optional<std::vector<LaurentSeries>> truncated_solve(std::vector<std::vector<LaurentSeries>> m, int p) {
  const std::size_t n = m.size();
  const int far = 1 << 20;  // inverses limited only by their operand's precision
  for (auto &row : m)
    for (auto &e : row)
      if (!e.is_indistinguishable_from_zero()) e = e.truncated(*e.valuation() + p * e.ramification());
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = n;
    for (std::size_t i = k; i < n; ++i)
      if (!m[i][k].is_indistinguishable_from_zero() && (piv == n || *m[i][k].order() < *m[piv][k].order())) piv = i;
    if (piv == n) return std::nullopt;
    std::swap(m[piv], m[k]);
    const LaurentSeries inv = invert(m[k][k], far);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m[i][k].is_zero()) continue;
      const LaurentSeries f = m[i][k] * inv;
      for (std::size_t j = k + 1; j <= n; ++j)
        if (!m[k][j].is_zero()) m[i][j] -= f * m[k][j];
      m[i][k] = LaurentSeries();
    }
  }
  std::vector<LaurentSeries> x(n);
  for (std::size_t i = n; i-- > 0;) {
    LaurentSeries acc = m[i][n];
    for (std::size_t j = i + 1; j < n; ++j)
      if (!m[i][j].is_zero() && !x[j].is_zero()) acc -= m[i][j] * x[j];
    x[i] = acc * invert(m[i][i], far);
  }
  return x;
}

// leading term followed by O(.), or the bare O(.) when no term is known
LaurentSeries leading_part(const LaurentSeries &f) {
  if (f.is_zero() || f.is_indistinguishable_from_zero()) return f;
  return f.truncated(*f.valuation() + 1);
}

bool polygon_determined(const std::vector<LaurentSeries> &coeffs) {
  try {
    irregular_exponents(coeffs);
    return true;
  } catch (const Error &e) {
    if (e.kind() != ErrorKind::insufficient_precision) throw;
    return false;
  }
}

}  // namespace

std::vector<LaurentSeries> companion_coefficients(const FormalConnection &c) {
  const std::size_t n = c.A.rows();
  const int units = static_cast<int>(n), attempts = units + 8;
  // [y_0 | ... | y_n] with y_{k+1} = y_k' + A y_k; unit vectors first (sparse), then random ones
  auto krylov = [&](int attempt) {
    std::vector<LaurentSeries> y(n);
    if (attempt < units) {
      y[n - 1 - attempt] = LaurentSeries(1);
    } else {
      const int r = attempt - units;
      std::mt19937 rng(20240611 + r);
      std::uniform_int_distribution<int> coef(-3, 3);
      for (std::size_t i = 0; i < n; ++i) {
        LaurentSeries::Terms t;
        for (int e = 0; e <= std::min(r, 2); ++e)
          if (int v = coef(rng)) t.emplace(e, Scalar(v));
        if (r == 0 && t.empty()) t.emplace(0, Scalar(1));
        y[i] = LaurentSeries(std::move(t), std::nullopt);
      }
    }
    std::vector<std::vector<LaurentSeries>> m(n, std::vector<LaurentSeries>(n + 1));
    for (std::size_t k = 0; k <= n; ++k) {
      for (std::size_t i = 0; i < n; ++i) m[i][k] = y[i];
      if (k == n) break;
      std::vector<LaurentSeries> next(n);
      for (std::size_t i = 0; i < n; ++i) {
        LaurentSeries acc = derivative(y[i]);
        for (std::size_t j = 0; j < n; ++j)
          if (!c.A(i, j).is_zero() && !y[j].is_zero()) acc += c.A(i, j) * y[j];
        next[i] = std::move(acc);
      }
      y = std::move(next);
    }
    return m;
  };
  std::vector<LaurentSeries> out(n + 1);
  out[n] = LaurentSeries(1);
  // raise precision across all candidates together: a non-cyclic candidate never
  // yields a pivot, and high precision on it is costly
  std::vector<std::optional<std::vector<std::vector<LaurentSeries>>>> cache(attempts);
  for (int p : {8, 16, 32, 64}) {
    for (int attempt = 0; attempt < attempts; ++attempt) {
      if (!cache[attempt]) cache[attempt] = krylov(attempt);
      auto x = truncated_solve(*cache[attempt], p);
      if (!x) continue;
      for (std::size_t k = 0; k < n; ++k) out[k] = -leading_part((*x)[k]);
      if (polygon_determined(out)) return out;
    }
  }
  for (int attempt = 0; attempt < attempts; ++attempt) {
    auto sol = bareiss_solve(*cache[attempt]);
    if (!sol) continue;
    for (std::size_t k = 0; k < n; ++k) out[k] = -leading_ratio(sol->second[k], sol->first);
    return out;
  }
  fail(ErrorKind::unsupported_connection, "no cyclic vector found");
}

NewtonPolygon newton_polygon(const std::vector<LaurentSeries> &coeffs) {
  const int n = static_cast<int>(coeffs.size()) - 1;
  std::vector<Point> known;
  std::vector<Point> bounded;  // unknown coefficients, only a lower bound on their valuation
  for (int k = 0; k <= n; ++k) {
    const LaurentSeries &f = coeffs[k];
    if (auto ord = f.order()) {
      known.push_back({k, *ord});
    } else if (auto tr = f.truncation_order()) {
      bounded.push_back({k, *tr});
    }
  }
  NewtonPolygon p;
  for (const auto &pt : known) p.points.emplace_back(pt.k, pt.v);
  if (known.empty()) fail(ErrorKind::insufficient_precision, "characteristic polynomial unknown");
  auto hull_known = lower_hull(known);
  p.edges = edges_of(hull_known);
  p.zero_eigenvalues = known.front().k;
  if (!bounded.empty()) {
    std::vector<Point> all = known;
    all.insert(all.end(), bounded.begin(), bounded.end());
    auto alt = edges_of(lower_hull(all));
    if (irregular_part(alt) != irregular_part(p.edges))
      fail(ErrorKind::insufficient_precision, "truncation too low to determine the Newton polygon");
  }
  return p;
}

std::vector<LaurentSeries> matrix_charpoly(const FormalConnection &c) { return berkowitz(c.A); }

std::vector<LaurentSeries> characteristic_coefficients(const FormalConnection &c, PolygonMethod method) {
  return method == PolygonMethod::companion ? companion_coefficients(c) : matrix_charpoly(c);
}

NewtonPolygon newton_polygon(const FormalConnection &c, PolygonMethod method) {
  return newton_polygon(characteristic_coefficients(c, method));
}

Rational slope(const NewtonPolygon &p) {
  Rational s = 0;
  for (const auto &e : p.edges) s = std::max(s, e.slope);
  return s;
}

Rational irregularity(const NewtonPolygon &p) {
  Rational s = 0;
  for (const auto &e : p.edges) s += e.slope * e.multiplicity();
  s.canonicalize();
  return s;
}

Rational slope(const FormalConnection &c, PolygonMethod method) { return slope(newton_polygon(c, method)); }

Rational irregularity(const FormalConnection &c, PolygonMethod method) {
  return irregularity(newton_polygon(c, method));
}

Rational adjoint_irregularity(const FormalConnection &c, PolygonMethod method) {
  return irregularity(adjoint_connection(c), method);
}

std::vector<IrregularExponent> irregular_exponents(const FormalConnection &c, PolygonMethod method) {
  return irregular_exponents(characteristic_coefficients(c, method));
}

std::vector<IrregularExponent> irregular_exponents(const std::vector<LaurentSeries> &coeffs) {
  NewtonPolygon p = newton_polygon(coeffs);
  std::vector<IrregularExponent> out;
  for (const auto &e : p.edges) {
    if (e.slope <= 0) continue;
    IrregularExponent ie;
    ie.exponent = e.eigen_valuation;
    ie.multiplicity = e.multiplicity();
    ie.ramification = static_cast<int>(ie.exponent.get_den().get_si());
    const int q = ie.ramification;
    // points on the edge: val c_k = val c_{k_from} - exponent (k - k_from)
    const Rational base = *coeffs[e.k_from].order();
    std::vector<Scalar> psi(ie.multiplicity / q + 1);
    for (int k = e.k_from; k <= e.k_to; k += q) {
      auto ord = coeffs[k].order();
      const Rational line = base - ie.exponent * (k - e.k_from);
      if (!ord) {
        auto tr = coeffs[k].truncation_order();
        if (tr && *tr <= line) fail(ErrorKind::insufficient_precision, "edge coefficient unknown");
        continue;
      }
      if (*ord != line) continue;
      psi[(k - e.k_from) / q] = coeffs[k].coefficient_at(*ord);
    }
    ie.psi = Polynomial(psi).monic();
    if (ie.psi.degree() == 1) {
      Scalar r = -ie.psi.coefficient(0);
      if (q == 1) {
        ie.leading_coefficients = {r};
      } else if (q == 2 && r.is_rational()) {
        Scalar root = Scalar::sqrt(r.rational());
        ie.leading_coefficients = {root, -root};
        std::sort(ie.leading_coefficients.begin(), ie.leading_coefficients.end());
      }
    }
    out.push_back(std::move(ie));
  }
  return out;
}

nlohmann::json polygon_to_json(const NewtonPolygon &p) {
  nlohmann::json pts = nlohmann::json::array(), edges = nlohmann::json::array();
  for (const auto &[k, v] : p.points) pts.push_back({k, rational_to_json(v)});
  for (const auto &e : p.edges)
    edges.push_back({{"from", e.k_from},
                     {"to", e.k_to},
                     {"eigenvalue_valuation", rational_to_json(e.eigen_valuation)},
                     {"slope", rational_to_json(e.slope)}});
  return {{"points", pts}, {"edges", edges}, {"zero_eigenvalues", p.zero_eigenvalues}};
}

nlohmann::json exponents_to_json(const std::vector<IrregularExponent> &es) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto &e : es) {
    nlohmann::json psi = nlohmann::json::array();
    for (const auto &c : e.psi.coefficients()) psi.push_back(tagged_scalar_to_json(c));
    nlohmann::json j{{"exponent", rational_to_json(e.exponent)},
                     {"multiplicity", e.multiplicity},
                     {"ramification", e.ramification},
                     {"psi", psi}};
    if (!e.leading_coefficients.empty()) {
      nlohmann::json lc = nlohmann::json::array();
      for (const auto &c : e.leading_coefficients) lc.push_back(tagged_scalar_to_json(c));
      j["leading_coefficients"] = lc;
    }
    out.push_back(j);
  }
  return out;
}

}  // namespace rigid
