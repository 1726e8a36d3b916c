#include "rigid/chevalley.hpp"

#include <map>
#include <mutex>

namespace rigid {

std::string rep_kind_name(RepKind k) { return k == RepKind::adjoint ? "adjoint" : "defining"; }

RepKind parse_rep_kind(const std::string &s) {
  if (s == "adjoint") return RepKind::adjoint;
  if (s == "defining") return RepKind::defining;
  fail(ErrorKind::invalid_argument, "unknown representation '" + s + "'");
}

QMatrix Representation::image(const Vector &x) const {
  if (x.size() != images.size()) fail(ErrorKind::invalid_argument, "element has the wrong dimension");
  QMatrix m(dim, dim);
  for (std::size_t k = 0; k < x.size(); ++k)
    if (!x[k].is_zero()) m += images[k].scaled(x[k]);
  return m;
}

void Representation::prepare_coordinates() {
  const std::size_t n = images.size(), N2 = dim * dim;
  QMatrix rows(n, N2);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t a = 0; a < N2; ++a) rows(k, a) = images[k].data()[a];
  QMatrix red = rows;
  coord_rows_ = row_reduce(red);
  if (coord_rows_.size() != n) fail(ErrorKind::invalid_argument, "representation is not faithful");
  QMatrix restricted(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t k = 0; k < n; ++k) restricted(a, k) = rows(k, coord_rows_[a]);
  coord_inverse_ = inverse(restricted);
}

Vector Representation::coordinates(const QMatrix &m) const {
  if (m.rows() != dim || m.cols() != dim) fail(ErrorKind::invalid_argument, "matrix has the wrong size");
  Vector v(coord_rows_.size());
  for (std::size_t a = 0; a < v.size(); ++a) v[a] = m.data()[coord_rows_[a]];
  return mat_vec(coord_inverse_, v);
}

std::vector<std::size_t> Representation::coordinate_entries(std::size_t k) const {
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < coord_rows_.size(); ++a)
    if (!coord_inverse_(k, a).is_zero()) out.push_back(coord_rows_[a]);
  return out;
}

std::optional<Vector> Representation::preimage(const QMatrix &m) const {
  Vector c = coordinates(m);
  if (image(c) != m) return std::nullopt;
  return c;
}

namespace {

QMatrix unit(std::size_t n, std::size_t i, std::size_t j) {
  QMatrix m(n, n);
  m(i, j) = Scalar(1);
  return m;
}

// Simple raising operators in a faithful matrix representation.
std::vector<QMatrix> simple_raising(CartanType type, int n) {
  std::vector<QMatrix> e;
  switch (type) {
    case CartanType::A: {
      const std::size_t N = n + 1;
      for (int i = 0; i < n; ++i) e.push_back(unit(N, i, i + 1));
      break;
    }
    case CartanType::B: {
      // so(2n+1), form with ones on the antidiagonal
      const std::size_t N = 2 * n + 1;
      for (int i = 0; i < n; ++i) e.push_back(unit(N, i, i + 1) - unit(N, N - 2 - i, N - 1 - i));
      break;
    }
    case CartanType::C: {
      // sp(2n), antidiagonal form (1,..,1,-1,..,-1)
      const std::size_t N = 2 * n;
      for (int i = 0; i + 1 < n; ++i) e.push_back(unit(N, i, i + 1) - unit(N, N - 2 - i, N - 1 - i));
      e.push_back(unit(N, n - 1, n));
      break;
    }
    case CartanType::D: {
      const std::size_t N = 2 * n;
      for (int i = 0; i + 1 < n; ++i) e.push_back(unit(N, i, i + 1) - unit(N, N - 2 - i, N - 1 - i));
      e.push_back(unit(N, n - 2, n) - unit(N, n - 1, n + 1));
      break;
    }
    case CartanType::G: {
      // fixed points of triality in so(8): short = sum of the outer nodes, long = central node
      auto d4 = simple_raising(CartanType::D, 4);
      e.push_back(d4[0] + d4[2] + d4[3]);
      e.push_back(d4[1]);
      break;
    }
  }
  return e;
}

// coefficient c with a = c b, b nonzero
Scalar proportionality(const QMatrix &a, const QMatrix &b) {
  for (std::size_t k = 0; k < b.data().size(); ++k)
    if (!b.data()[k].is_zero()) {
      Scalar c = a.data()[k] / b.data()[k];
      if (a != b.scaled(c)) fail(ErrorKind::invalid_argument, "matrices are not proportional");
      return c;
    }
  fail(ErrorKind::invalid_argument, "zero matrix");
}

}  // namespace

struct ChevalleyAlgebra::Seed {
  CartanType type;
  int rank;
  std::vector<QMatrix> e, f, h;
  std::vector<std::vector<int>> cartan;
};

AlgebraPtr ChevalleyAlgebra::build(CartanType type, int rank) {
  require_supported(type, rank);
  static std::mutex mu;
  static std::map<std::pair<int, int>, AlgebraPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(static_cast<int>(type), rank);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  Seed seed{type, rank, simple_raising(type, rank), {}, {}, {}};
  for (const auto &e : seed.e) {
    QMatrix f = e.transpose();
    Scalar c = proportionality(commutator(commutator(e, f), e), e);
    f = f.scaled(Scalar(2) / c);
    seed.f.push_back(f);
    seed.h.push_back(commutator(e, f));
  }
  seed.cartan.assign(rank, std::vector<int>(rank));
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) {
      Scalar a = proportionality(commutator(seed.h[i], seed.e[j]), seed.e[j]);
      seed.cartan[i][j] = static_cast<int>(a.rational().get_num().get_si());
    }
  AlgebraPtr alg(new ChevalleyAlgebra(std::move(seed)));
  cache.emplace(key, alg);
  return alg;
}

ChevalleyAlgebra::ChevalleyAlgebra(Seed seed) : roots_(seed.type, seed.rank, seed.cartan) {
  const int l = seed.rank;
  const auto &pos = roots_.positive_roots();
  const std::size_t np = pos.size();
  const std::size_t N = seed.e[0].rows();

  std::vector<QMatrix> E(np), F(np);
  for (std::size_t k = 0; k < np; ++k) {
    const Root &g = pos[k];
    if (height(g) == 1) {
      int i = 0;
      while (g[i] == 0) ++i;
      E[k] = seed.e[i];
      F[k] = seed.f[i];
      continue;
    }
    for (int i = 0; i < l; ++i) {
      Root beta = g;
      beta[i] -= 1;
      int b = roots_.positive_index(beta);
      if (b < 0) continue;
      int p = 0;
      Root down = beta;
      while (true) {
        down[i] -= 1;
        if (!roots_.is_root(down)) break;
        ++p;
      }
      Scalar inv = Scalar(Rational(1, p + 1));
      E[k] = commutator(seed.e[i], E[b]).scaled(inv);
      F[k] = commutator(F[b], seed.f[i]).scaled(inv);
      break;
    }
  }

  construction_.kind = RepKind::defining;
  construction_.dim = N;
  for (int i = 0; i < l; ++i) {
    construction_.images.push_back(seed.h[i]);
    basis_roots_.push_back(Root(l, 0));
  }
  for (std::size_t k = 0; k < np; ++k) {
    construction_.images.push_back(E[k]);
    basis_roots_.push_back(pos[k]);
  }
  for (std::size_t k = 0; k < np; ++k) {
    construction_.images.push_back(F[k]);
    Root r = pos[k];
    for (auto &x : r) x = -x;
    basis_roots_.push_back(r);
  }
  const std::size_t n = dim();

  construction_.prepare_coordinates();

  brackets_.resize(n * n);
  adjoint_.kind = RepKind::adjoint;
  adjoint_.dim = n;
  adjoint_.images.assign(n, QMatrix(n, n));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      if (j == k) continue;
      Vector c = coordinates(commutator(construction_.images[j], construction_.images[k]));
      for (std::size_t i = 0; i < n; ++i)
        if (!c[i].is_zero()) {
          brackets_[j * n + k].emplace_back(i, c[i]);
          adjoint_.images[j](i, k) = c[i];
        }
    }
  adjoint_.prepare_coordinates();

  if (seed.type == CartanType::G) {
    // the construction is 7 + 1: the trivial line is the common kernel, the
    // 7-dimensional summand is spanned by the columns of all images
    QMatrix stacked(n * N, N), cols(n * N, N);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) {
          stacked(k * N + i, j) = construction_.images[k](i, j);
          cols(k * N + j, i) = construction_.images[k](i, j);
        }
    auto fixed = kernel(stacked);
    const std::size_t r = row_reduce(cols).size();
    if (fixed.size() != 1 || r != N - 1) fail(ErrorKind::invalid_argument, "G2 construction does not split as 7 + 1");
    std::vector<Vector> basis;
    for (std::size_t i = 0; i < r; ++i) {
      Vector v(N);
      for (std::size_t j = 0; j < N; ++j) v[j] = cols(i, j);
      basis.push_back(v);
    }
    basis.push_back(fixed[0]);
    const QMatrix S = from_columns(basis, N), Sinv = inverse(S);
    seven_.kind = RepKind::defining;
    seven_.dim = r;
    for (const auto &x : construction_.images) {
      QMatrix y = Sinv * x * S, z(r, r);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) z(i, j) = y(i, j);
      seven_.images.push_back(z);
    }
    seven_.prepare_coordinates();
  }
}

std::size_t ChevalleyAlgebra::root_index(const Root &r) const {
  for (std::size_t k = rank(); k < dim(); ++k)
    if (basis_roots_[k] == r) return k;
  fail(ErrorKind::invalid_argument, "not a root");
}

Vector ChevalleyAlgebra::basis_vector(std::size_t k) const {
  Vector v = zero();
  v.at(k) = Scalar(1);
  return v;
}

Vector ChevalleyAlgebra::bracket(const Vector &x, const Vector &y) const {
  Vector out = zero();
  for (std::size_t j = 0; j < dim(); ++j) {
    if (x[j].is_zero()) continue;
    for (std::size_t k = 0; k < dim(); ++k) {
      if (y[k].is_zero()) continue;
      Scalar xy = x[j] * y[k];
      for (const auto &[i, c] : structure(j, k)) out[i] += xy * c;
    }
  }
  return out;
}

const Representation &ChevalleyAlgebra::defining() const {
  return type() == CartanType::G ? seven_ : construction_;
}

const Representation &ChevalleyAlgebra::representation(RepKind kind) const {
  return kind == RepKind::adjoint ? adjoint_ : defining();
}

Scalar ChevalleyAlgebra::root_value(const Root &alpha, const Vector &x) const {
  Scalar s;
  for (int i = 0; i < rank(); ++i) {
    if (x[i].is_zero()) continue;
    s += x[i] * Scalar(roots_.pairing(alpha, i));
  }
  return s;
}

}  // namespace rigid
