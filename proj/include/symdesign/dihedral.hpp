#pragma once

#include <string>
#include <vector>

#include "symdesign/errors.hpp"

namespace symdesign {

enum class ElementKind { Rotation, Reflection };

/// One element of the dihedral group Dih_n (n >= 3): the rotation r_k by
/// angle 2*pi*k/n, or the reflection p_k about the line at angle pi*k/n from
/// the x-axis. k is always stored reduced modulo n; r_0 is the identity.
class DihedralElement {
 public:
  DihedralElement(int n, ElementKind kind, int k);

  static DihedralElement rotation(int n, int k) { return {n, ElementKind::Rotation, k}; }
  static DihedralElement reflection(int n, int k) { return {n, ElementKind::Reflection, k}; }
  static DihedralElement identity(int n) { return rotation(n, 0); }

  int n() const { return n_; }
  int k() const { return k_; }
  ElementKind kind() const { return kind_; }
  bool is_rotation() const { return kind_ == ElementKind::Rotation; }
  bool is_reflection() const { return kind_ == ElementKind::Reflection; }
  bool is_identity() const { return is_rotation() && k_ == 0; }

  /// Position in the canonical element order r_0..r_{n-1}, p_0..p_{n-1}.
  int index() const { return is_rotation() ? k_ : n_ + k_; }

  /// "r0".."r{n-1}" for rotations, "p0".."p{n-1}" for reflections.
  std::string to_string() const;

  friend bool operator==(const DihedralElement& a, const DihedralElement& b) {
    return a.n_ == b.n_ && a.kind_ == b.kind_ && a.k_ == b.k_;
  }
  friend bool operator<(const DihedralElement& a, const DihedralElement& b) {
    if (a.n_ != b.n_) return a.n_ < b.n_;
    return a.index() < b.index();
  }

 private:
  int n_;
  ElementKind kind_;
  int k_;
};

/// Group law with p_k = r_k p_0 and p_0 r_k p_0 = r_{-k}:
///   r_a r_b = r_{a+b},  r_a p_b = p_{a+b},  p_a r_b = p_{a-b},  p_a p_b = r_{a-b}
/// (all indices mod n). Throws OrderMismatchError when a.n() != b.n().
DihedralElement compose(const DihedralElement& a, const DihedralElement& b);

/// Rotations invert to r_{n-k}; reflections are involutions.
DihedralElement inverse(const DihedralElement& g);

inline DihedralElement operator*(const DihedralElement& a, const DihedralElement& b) {
  return compose(a, b);
}

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Vec2&, const Vec2&) = default;
  friend Vec2 operator+(const Vec2& a, const Vec2& b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(const Vec2& a, const Vec2& b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, const Vec2& v) { return {s * v.x, s * v.y}; }
};

/// Row-major 2x2 matrix [[a, b], [c, d]].
struct Mat2 {
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

  static Mat2 identity() { return {}; }
  Vec2 apply(const Vec2& v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
  Mat2 operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  double det() const { return a * d - b * c; }
};

/// Orthogonal 2x2 representation M_g. Rotations map to planar rotations by
/// 2*pi*k/n, reflections to reflections about the line at angle pi*k/n.
/// Entries are exact 0/±1 whenever the angle is a multiple of a quarter turn,
/// so every Dih_4 matrix comes out integer-exact.
Mat2 matrix_rep(const DihedralElement& g);

/// Permutation of the n anchor slots, 0-based; anchor i sits at angle
/// 2*pi*i/n. image[i] is the slot that g sends anchor i to:
///   r_k: i -> i + k (mod n),   p_k: i -> k - i (mod n).
struct PermutationRep {
  std::vector<int> image;

  int size() const { return static_cast<int>(image.size()); }
  int apply(int i) const { return image[static_cast<std::size_t>(i)]; }
  int preimage(int i) const;
  bool is_identity() const;
};

PermutationRep perm_rep(const DihedralElement& g);

}  // namespace symdesign
