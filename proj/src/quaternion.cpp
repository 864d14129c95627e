#include "charvar/quaternion.hpp"

#include <Eigen/Geometry>
#include <cstdio>
#include <numbers>
#include <random>

#include "charvar/errors.hpp"

namespace charvar {

UnitQuaternion::UnitQuaternion(double w, double x, double y, double z) {
  const Quaternion q{w, x, y, z};
  const double n = q.norm();
  if (!std::isfinite(n) || std::abs(n - 1.0) > tol::kNonUnitReject) {
    throw InvalidElementError("quaternion norm " + std::to_string(n) +
                              " is not 1");
  }
  q_ = (1.0 / n) * q;
}

UnitQuaternion::UnitQuaternion(NoCheck, const Quaternion& q) {
  q_ = (1.0 / q.norm()) * q;
}

UnitQuaternion UnitQuaternion::normalized(const Quaternion& q) {
  if (!(q.norm() > 0.0)) throw InvalidElementError("cannot normalize zero");
  return UnitQuaternion(NoCheck{}, q);
}

UnitQuaternion UnitQuaternion::exp(double vx, double vy, double vz) {
  const double angle = std::sqrt(vx * vx + vy * vy + vz * vz);
  // sin(t)/t, with the Taylor tail near zero.
  const double sinc =
      angle < 1e-8 ? 1.0 - angle * angle / 6.0 : std::sin(angle) / angle;
  return UnitQuaternion(
      NoCheck{}, {std::cos(angle), sinc * vx, sinc * vy, sinc * vz});
}

UnitQuaternion UnitQuaternion::inverse() const {
  return UnitQuaternion(NoCheck{}, q_.conjugate());
}

std::array<double, 3> UnitQuaternion::log() const {
  const double vn = std::sqrt(q_.x * q_.x + q_.y * q_.y + q_.z * q_.z);
  const double angle = std::atan2(vn, q_.w);
  const double scale = vn < 1e-300 ? 1.0 : angle / vn;
  return {scale * q_.x, scale * q_.y, scale * q_.z};
}

UnitQuaternion operator*(const UnitQuaternion& a, const UnitQuaternion& b) {
  return UnitQuaternion(UnitQuaternion::NoCheck{}, a.q_ * b.q_);
}

UnitQuaternion operator-(const UnitQuaternion& a) {
  return UnitQuaternion(UnitQuaternion::NoCheck{}, -a.q_);
}

std::string UnitQuaternion::to_string() const {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "(%.6f, %.6f, %.6f, %.6f)", q_.w, q_.x, q_.y,
                q_.z);
  return buf;
}

double distance(const UnitQuaternion& a, const UnitQuaternion& b) {
  return (a.raw() - b.raw()).norm();
}

double ClassLabel::trace() const {
  return 2.0 * std::cos(2.0 * std::numbers::pi * mu);
}

bool ClassLabel::contains(const UnitQuaternion& q, double tolerance) const {
  return std::abs(q.trace() - trace()) <= tolerance;
}

UnitQuaternion ClassLabel::representative() const {
  const double angle = 2.0 * std::numbers::pi * mu;
  return UnitQuaternion::normalized({std::cos(angle), std::sin(angle), 0, 0});
}

UnitQuaternion quat_mul(const UnitQuaternion& a, const UnitQuaternion& b) {
  return a * b;
}

UnitQuaternion quat_mul(const Quaternion& a, const Quaternion& b) {
  return UnitQuaternion(a) * UnitQuaternion(b);
}

UnitQuaternion conjugate_by(const UnitQuaternion& m, const UnitQuaternion& q) {
  return m * q * m.inverse();
}

UnitQuaternion holonomy(const FreeWord& word,
                        std::span<const UnitQuaternion> assignment) {
  Quaternion acc{1.0, 0.0, 0.0, 0.0};
  for (const Letter& l : word.letters()) {
    if (l.slot() < 0 || static_cast<std::size_t>(l.slot()) >= assignment.size()) {
      throw MalformedWordError("generator " + std::to_string(l.generator) +
                               " outside an assignment of " +
                               std::to_string(assignment.size()) + " slots");
    }
    const Quaternion& g = assignment[l.slot()].raw();
    acc = acc * (l.sign > 0 ? g : g.conjugate());
  }
  return UnitQuaternion::normalized(acc);
}

std::array<double, 9> rotation_matrix(const UnitQuaternion& q) {
  const Eigen::Quaterniond e(q.w(), q.x(), q.y(), q.z());
  const Eigen::Matrix3d r = e.toRotationMatrix();
  std::array<double, 9> out{};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) out[3 * a + b] = r(a, b);
  return out;
}

UnitQuaternion canonical_sign(const UnitQuaternion& q) {
  for (double c : q.components()) {
    if (c > 0.0) return q;
    if (c < 0.0) return -q;
  }
  return q;
}

UnitQuaternion from_rotation_matrix(const std::array<double, 9>& r) {
  Eigen::Matrix3d m;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) m(a, b) = r[3 * a + b];
  const Eigen::Quaterniond e(m);
  return canonical_sign(
      UnitQuaternion::normalized({e.w(), e.x(), e.y(), e.z()}));
}

UnitQuaternion standardize_triple(const UnitQuaternion& c1,
                                  const UnitQuaternion& c2,
                                  const UnitQuaternion& c3, double tolerance) {
  if (!c1.is_traceless(tolerance) || !c2.is_traceless(tolerance) ||
      !c3.is_traceless(tolerance)) {
    throw NotInStratumError("puncture holonomies are not traceless");
  }
  const double defect = distance(c1 * c2 * c3, UnitQuaternion::identity());
  if (defect > tolerance) {
    throw NotInStratumError("C1 C2 C3 differs from 1 by " +
                            std::to_string(defect));
  }
  Eigen::Vector3d u(c1.x(), c1.y(), c1.z());
  Eigen::Vector3d v(c2.x(), c2.y(), c2.z());
  u.normalize();
  v = (v - v.dot(u) * u).normalized();
  const Eigen::Vector3d n = u.cross(v);
  // Rows are the frame, so R u = e1, R v = e2, R n = e3.
  std::array<double, 9> r{u.x(), u.y(), u.z(), v.x(), v.y(),
                          v.z(), n.x(), n.y(), n.z()};
  return from_rotation_matrix(r);
}

UnitQuaternion random_in_class(const ClassLabel& label, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  double x = 0, y = 0, z = 0, n = 0;
  do {
    x = normal(rng);
    y = normal(rng);
    z = normal(rng);
    n = std::sqrt(x * x + y * y + z * z);
  } while (n < 1e-12);
  const double angle = 2.0 * std::numbers::pi * label.mu;
  const double s = std::sin(angle) / n;
  return UnitQuaternion::normalized({std::cos(angle), s * x, s * y, s * z});
}

}  // namespace charvar
