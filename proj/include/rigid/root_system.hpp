#pragma once

// Root systems of the supported simple types, in the simple-root basis.

#include <string>
#include <vector>

namespace rigid {

enum class CartanType { A, B, C, D, G };

using Root = std::vector<int>;

char type_letter(CartanType t);
CartanType parse_cartan_type(const std::string &s);
/// Throws unsupported_algebra unless (type, rank) is one of the built-in algebras.
void require_supported(CartanType type, int rank);
bool is_supported(CartanType type, int rank);
/// "A2", "G2", ...
std::string algebra_name(CartanType type, int rank);

int height(const Root &r);

class RootSystem {
 public:
  /// cartan[i][j] = alpha_j(h_i).
  RootSystem(CartanType type, int rank, std::vector<std::vector<int>> cartan);

  CartanType type() const { return type_; }
  int rank() const { return rank_; }
  const std::vector<std::vector<int>> &cartan_matrix() const { return cartan_; }
  /// Ordered by height, then lexicographically.
  const std::vector<Root> &positive_roots() const { return positive_; }
  /// Positive roots followed by their negatives in the same order.
  std::vector<Root> roots() const;
  Root simple_root(int i) const;
  const Root &highest_root() const { return positive_.back(); }
  bool is_root(const Root &r) const;
  /// Index into positive_roots(), or -1.
  int positive_index(const Root &r) const;
  /// <r, alpha_i^vee> = (alpha_i-coroot pairing), i.e. r(h_i).
  int pairing(const Root &r, int i) const;

 private:
  CartanType type_;
  int rank_;
  std::vector<std::vector<int>> cartan_;
  std::vector<Root> positive_;
};

}  // namespace rigid
