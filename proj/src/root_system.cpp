#include "rigid/root_system.hpp"

#include <algorithm>
#include <numeric>

#include "rigid/error.hpp"

namespace rigid {

char type_letter(CartanType t) {
  switch (t) {
    case CartanType::A: return 'A';
    case CartanType::B: return 'B';
    case CartanType::C: return 'C';
    case CartanType::D: return 'D';
    case CartanType::G: return 'G';
  }
  return '?';
}

CartanType parse_cartan_type(const std::string &s) {
  if (s.size() == 1) {
    switch (s[0]) {
      case 'A': case 'a': return CartanType::A;
      case 'B': case 'b': return CartanType::B;
      case 'C': case 'c': return CartanType::C;
      case 'D': case 'd': return CartanType::D;
      case 'G': case 'g': return CartanType::G;
      default: break;
    }
  }
  fail(ErrorKind::unsupported_algebra, "unsupported Cartan type '" + s + "'");
}

bool is_supported(CartanType type, int rank) {
  switch (type) {
    case CartanType::A: return rank >= 1 && rank <= 4;
    case CartanType::B: return rank >= 2 && rank <= 4;
    case CartanType::C: return rank >= 2 && rank <= 4;
    case CartanType::D: return rank == 4;
    case CartanType::G: return rank == 2;
  }
  return false;
}

void require_supported(CartanType type, int rank) {
  if (!is_supported(type, rank))
    fail(ErrorKind::unsupported_algebra, "unsupported algebra " + algebra_name(type, rank));
}

std::string algebra_name(CartanType type, int rank) { return type_letter(type) + std::to_string(rank); }

int height(const Root &r) { return std::accumulate(r.begin(), r.end(), 0); }

RootSystem::RootSystem(CartanType type, int rank, std::vector<std::vector<int>> cartan)
    : type_(type), rank_(rank), cartan_(std::move(cartan)) {
  if (static_cast<int>(cartan_.size()) != rank_) fail(ErrorKind::invalid_argument, "Cartan matrix size");
  for (int i = 0; i < rank_; ++i) positive_.push_back(simple_root(i));
  // root strings: walking up from beta along alpha_i, p - q = -<beta, alpha_i^vee>
  for (std::size_t k = 0; k < positive_.size(); ++k) {
    Root beta = positive_[k];
    for (int i = 0; i < rank_; ++i) {
      int q = 0;
      Root down = beta;
      while (true) {
        down[i] -= 1;
        if (!is_root(down)) break;
        ++q;
      }
      int p = q - pairing(beta, i);
      if (p <= 0) continue;
      Root up = beta;
      up[i] += 1;
      if (!is_root(up)) positive_.push_back(up);
    }
  }
  std::sort(positive_.begin(), positive_.end(), [](const Root &a, const Root &b) {
    int ha = height(a), hb = height(b);
    return ha != hb ? ha < hb : a < b;
  });
}

std::vector<Root> RootSystem::roots() const {
  std::vector<Root> out = positive_;
  for (const auto &r : positive_) {
    Root n = r;
    for (auto &x : n) x = -x;
    out.push_back(n);
  }
  return out;
}

Root RootSystem::simple_root(int i) const {
  Root r(rank_, 0);
  r[i] = 1;
  return r;
}

bool RootSystem::is_root(const Root &r) const {
  if (static_cast<int>(r.size()) != rank_) return false;
  bool pos = std::all_of(r.begin(), r.end(), [](int x) { return x >= 0; });
  bool neg = std::all_of(r.begin(), r.end(), [](int x) { return x <= 0; });
  if (pos == neg) return false;
  Root a = r;
  if (neg)
    for (auto &x : a) x = -x;
  return positive_index(a) >= 0;
}

int RootSystem::positive_index(const Root &r) const {
  auto it = std::find(positive_.begin(), positive_.end(), r);
  return it == positive_.end() ? -1 : static_cast<int>(it - positive_.begin());
}

int RootSystem::pairing(const Root &r, int i) const {
  int s = 0;
  for (int j = 0; j < rank_; ++j) s += r[j] * cartan_[i][j];
  return s;
}

}  // namespace rigid
