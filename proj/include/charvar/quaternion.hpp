#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>

#include "charvar/free_word.hpp"

namespace charvar {

namespace tol {
inline constexpr double kUnitNorm = 1e-12;
inline constexpr double kMembership = 1e-9;
inline constexpr double kEquality = 1e-9;
// Inputs further than this from the unit sphere are rejected, not repaired.
inline constexpr double kNonUnitReject = 1e-6;
}  // namespace tol

// Plain Hamilton quaternion w + x i + y j + z k. Used as the ambient algebra
// (tangent vectors, differences); group elements live in UnitQuaternion.
struct Quaternion {
  double w = 0.0, x = 0.0, y = 0.0, z = 0.0;

  static constexpr Quaternion pure(double x, double y, double z) {
    return {0.0, x, y, z};
  }

  double norm_squared() const { return w * w + x * x + y * y + z * z; }
  double norm() const { return std::sqrt(norm_squared()); }
  Quaternion conjugate() const { return {w, -x, -y, -z}; }

  friend Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
  }
  friend Quaternion operator+(const Quaternion& a, const Quaternion& b) {
    return {a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend Quaternion operator-(const Quaternion& a, const Quaternion& b) {
    return {a.w - b.w, a.x - b.x, a.y - b.y, a.z - b.z};
  }
  friend Quaternion operator-(const Quaternion& a) {
    return {-a.w, -a.x, -a.y, -a.z};
  }
  friend Quaternion operator*(double s, const Quaternion& a) {
    return {s * a.w, s * a.x, s * a.y, s * a.z};
  }
  friend bool operator==(const Quaternion&, const Quaternion&) = default;
};

// An element of SU(2). The norm is restored to 1 after every construction and
// product, so w^2 + x^2 + y^2 + z^2 = 1 holds to rounding.
class UnitQuaternion {
 public:
  UnitQuaternion() : q_{1.0, 0.0, 0.0, 0.0} {}
  // Throws InvalidElementError when |q| differs from 1 by more than
  // tol::kNonUnitReject; otherwise renormalizes.
  UnitQuaternion(double w, double x, double y, double z);
  explicit UnitQuaternion(const Quaternion& q)
      : UnitQuaternion(q.w, q.x, q.y, q.z) {}

  static UnitQuaternion identity() { return {}; }
  static UnitQuaternion i() { return {0.0, 1.0, 0.0, 0.0}; }
  static UnitQuaternion j() { return {0.0, 0.0, 1.0, 0.0}; }
  static UnitQuaternion k() { return {0.0, 0.0, 0.0, 1.0}; }
  // exp(v) for the imaginary quaternion v = (vx, vy, vz).
  static UnitQuaternion exp(double vx, double vy, double vz);
  // Normalizes any nonzero quaternion (no rejection).
  static UnitQuaternion normalized(const Quaternion& q);

  double w() const { return q_.w; }
  double x() const { return q_.x; }
  double y() const { return q_.y; }
  double z() const { return q_.z; }
  const Quaternion& raw() const { return q_; }
  std::array<double, 4> components() const { return {q_.w, q_.x, q_.y, q_.z}; }

  double trace() const { return 2.0 * q_.w; }
  bool is_traceless(double tolerance = tol::kMembership) const {
    return std::abs(q_.w) <= tolerance;
  }
  UnitQuaternion inverse() const;
  // Imaginary vector v with exp(v) = *this, |v| in [0, pi].
  std::array<double, 3> log() const;

  friend UnitQuaternion operator*(const UnitQuaternion& a,
                                  const UnitQuaternion& b);
  friend UnitQuaternion operator-(const UnitQuaternion& a);
  friend bool operator==(const UnitQuaternion&, const UnitQuaternion&) = default;

  std::string to_string() const;

 private:
  struct NoCheck {};
  UnitQuaternion(NoCheck, const Quaternion& q);
  Quaternion q_;
};

// Euclidean distance of the 4-vectors.
double distance(const UnitQuaternion& a, const UnitQuaternion& b);

// Conjugacy class C_mu, mu in [0, 1/2]: elements with trace 2 cos(2 pi mu).
struct ClassLabel {
  double mu = 0.25;

  static ClassLabel traceless() { return {0.25}; }
  double trace() const;
  bool contains(const UnitQuaternion& q,
                double tolerance = tol::kMembership) const;
  // exp(mu) = cos(2 pi mu) + sin(2 pi mu) i.
  UnitQuaternion representative() const;
};

// Hamilton product with renormalization.
UnitQuaternion quat_mul(const UnitQuaternion& a, const UnitQuaternion& b);
// Validating overload for raw input: rejects non-unit factors.
UnitQuaternion quat_mul(const Quaternion& a, const Quaternion& b);

// M q M^-1.
UnitQuaternion conjugate_by(const UnitQuaternion& m, const UnitQuaternion& q);

// Left-to-right product of the assigned generators; the assignment is
// (A_1, B_1, ..., A_g, B_g) indexed by Letter::slot().
UnitQuaternion holonomy(const FreeWord& word,
                        std::span<const UnitQuaternion> assignment);

// Conjugator M with M C_i M^-1 = (i, j, -k), normalized to w >= 0.
UnitQuaternion standardize_triple(const UnitQuaternion& c1,
                                  const UnitQuaternion& c2,
                                  const UnitQuaternion& c3,
                                  double tolerance = 1e-8);

// Uniform sample from C_mu, deterministic in seed.
UnitQuaternion random_in_class(const ClassLabel& label, std::uint64_t seed);

// Rotation matrix of q (row-major), acting on imaginary parts by q v q^-1.
std::array<double, 9> rotation_matrix(const UnitQuaternion& q);
// Inverse of rotation_matrix, returned with w >= 0 (first nonzero component
// positive when w = 0).
UnitQuaternion from_rotation_matrix(const std::array<double, 9>& r);
// Applies the sign convention of standardize_triple to +-q.
UnitQuaternion canonical_sign(const UnitQuaternion& q);

}  // namespace charvar
