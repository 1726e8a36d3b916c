#pragma once

// Chevalley bases, structure constants and matrix representations.
//
// Basis order: h_1..h_l, then E_alpha for positive alpha (height, then lex),
// then E_{-alpha} in the same order.

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "rigid/matrix.hpp"
#include "rigid/root_system.hpp"

namespace rigid {

enum class RepKind { adjoint, defining };

std::string rep_kind_name(RepKind k);
RepKind parse_rep_kind(const std::string &s);

struct Representation {
  RepKind kind;
  std::size_t dim = 0;
  /// Image of every Chevalley basis element.
  std::vector<QMatrix> images;

  QMatrix image(const Vector &x) const;
  /// Coordinates of a matrix assumed to lie in the image.
  Vector coordinates(const QMatrix &m) const;
  /// Coordinates, or nullopt when m is not in the image.
  std::optional<Vector> preimage(const QMatrix &m) const;

  /// Flat matrix entries (row * dim + col) that coordinate k is read from.
  std::vector<std::size_t> coordinate_entries(std::size_t k) const;

  /// Selects independent matrix entries; called once the images are final.
  void prepare_coordinates();

 private:
  std::vector<std::size_t> coord_rows_;
  QMatrix coord_inverse_;
};

class ChevalleyAlgebra;
using AlgebraPtr = std::shared_ptr<const ChevalleyAlgebra>;

class ChevalleyAlgebra {
 public:
  /// Cached; the returned object is immutable.
  static AlgebraPtr build(CartanType type, int rank);

  CartanType type() const { return roots_.type(); }
  int rank() const { return roots_.rank(); }
  std::string name() const { return algebra_name(type(), rank()); }
  const RootSystem &root_system() const { return roots_; }
  std::size_t dim() const { return basis_roots_.size(); }

  /// Root attached to a basis element (zero for the Cartan part).
  const Root &basis_root(std::size_t k) const { return basis_roots_[k]; }
  int basis_height(std::size_t k) const { return height(basis_roots_[k]); }
  std::size_t cartan_index(int i) const { return static_cast<std::size_t>(i); }
  /// Basis index of E_r for a (positive or negative) root r.
  std::size_t root_index(const Root &r) const;
  std::size_t positive_count() const { return roots_.positive_roots().size(); }

  Vector zero() const { return Vector(dim()); }
  Vector basis_vector(std::size_t k) const;
  Vector bracket(const Vector &x, const Vector &y) const;
  /// Sparse [b_j, b_k] = sum c_i b_i.
  const std::vector<std::pair<std::size_t, Scalar>> &structure(std::size_t j, std::size_t k) const {
    return brackets_[j * dim() + k];
  }
  const QMatrix &ad_basis(std::size_t k) const { return adjoint_.images[k]; }
  QMatrix ad(const Vector &x) const { return adjoint_.image(x); }

  const Representation &adjoint() const { return adjoint_; }
  /// Defining representation: the vector representation for classical types,
  /// the 7-dimensional one for G2.
  const Representation &defining() const;
  const Representation &representation(RepKind kind) const;
  /// The faithful matrix representation the basis was built in (8-dim for G2).
  const Representation &construction() const { return construction_; }
  /// Coordinates of a matrix in the span of the construction representation.
  Vector coordinates(const QMatrix &m) const { return construction_.coordinates(m); }

  /// alpha(x) for a Cartan element x = sum c_i h_i (non-Cartan coordinates ignored).
  Scalar root_value(const Root &alpha, const Vector &x) const;

 private:
  struct Seed;
  explicit ChevalleyAlgebra(Seed seed);

  RootSystem roots_;
  std::vector<Root> basis_roots_;
  Representation construction_, adjoint_;
  // G2 only: the 7-dimensional summand of the 8-dimensional construction
  Representation seven_;
  std::vector<std::vector<std::pair<std::size_t, Scalar>>> brackets_;
};

}  // namespace rigid
