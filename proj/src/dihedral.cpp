#include "symdesign/dihedral.hpp"

#include <cmath>
#include <numbers>

namespace symdesign {

namespace {

int normalize(int k, int n) {
  int r = k % n;
  return r < 0 ? r + n : r;
}

// cos/sin of 2*pi*num/den, exact at quarter turns.
void unit_angle(int num, int den, double& c, double& s) {
  const int r = ((num % den) + den) % den;
  if ((4LL * r) % den == 0) {
    switch ((4LL * r / den) % 4) {
      case 0: c = 1.0; s = 0.0; return;
      case 1: c = 0.0; s = 1.0; return;
      case 2: c = -1.0; s = 0.0; return;
      default: c = 0.0; s = -1.0; return;
    }
  }
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(den);
  c = std::cos(angle);
  s = std::sin(angle);
}

}  // namespace

DihedralElement::DihedralElement(int n, ElementKind kind, int k) : n_(n), kind_(kind), k_(0) {
  if (n < 3) {
    throw UnsupportedOrderError("Dih_n requires n >= 3, got n=" + std::to_string(n));
  }
  k_ = normalize(k, n);
}

std::string DihedralElement::to_string() const {
  return (is_rotation() ? "r" : "p") + std::to_string(k_);
}

DihedralElement compose(const DihedralElement& a, const DihedralElement& b) {
  if (a.n() != b.n()) {
    throw OrderMismatchError("cannot compose elements of Dih_" + std::to_string(a.n()) +
                             " and Dih_" + std::to_string(b.n()));
  }
  const int n = a.n();
  if (a.is_rotation()) {
    return {n, b.kind(), a.k() + b.k()};
  }
  // Reflection on the left flips the sign of the rotation index.
  const ElementKind kind = b.is_rotation() ? ElementKind::Reflection : ElementKind::Rotation;
  return {n, kind, a.k() - b.k()};
}

DihedralElement inverse(const DihedralElement& g) {
  if (g.is_reflection()) return g;
  return DihedralElement::rotation(g.n(), -g.k());
}

Mat2 matrix_rep(const DihedralElement& g) {
  double c = 0.0;
  double s = 0.0;
  unit_angle(g.k(), g.n(), c, s);
  if (g.is_rotation()) {
    return {c, -s, s, c};
  }
  // Reflection about the line at angle pi*k/n: entries use the doubled angle.
  return {c, s, s, -c};
}

int PermutationRep::preimage(int i) const {
  for (int j = 0; j < size(); ++j) {
    if (image[static_cast<std::size_t>(j)] == i) return j;
  }
  return -1;
}

bool PermutationRep::is_identity() const {
  for (int i = 0; i < size(); ++i) {
    if (image[static_cast<std::size_t>(i)] != i) return false;
  }
  return true;
}

PermutationRep perm_rep(const DihedralElement& g) {
  const int n = g.n();
  PermutationRep rep;
  rep.image.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const int img = g.is_rotation() ? (i + g.k()) % n : ((g.k() - i) % n + n) % n;
    rep.image[static_cast<std::size_t>(i)] = img;
  }
  return rep;
}

}  // namespace symdesign
