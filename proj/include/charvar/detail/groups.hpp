#pragma once

// Group policies consumed by the solver engine. A policy fixes the carrier of
// group elements (also used as the ambient algebra for derivatives), a basis
// of the Lie algebra acting by left multiplication, the exponential
// retraction, and a real flattening used for residuals and distances.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "charvar/quaternion.hpp"

namespace charvar::detail {

enum class StartMode { kHaar, kTorus };

// Independent, order-free stream per (seed, index, salt).
inline std::mt19937_64 indexed_rng(std::uint64_t seed, std::uint64_t index,
                                   std::uint64_t salt = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32),
                    static_cast<std::uint32_t>(salt)};
  return std::mt19937_64(seq);
}

class Su2Group {
 public:
  using Element = Quaternion;

  int tangent_dim() const { return 3; }
  int flat_dim() const { return 4; }
  int signature_dim() const { return 1; }

  Element identity() const { return {1.0, 0.0, 0.0, 0.0}; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element inverse(const Element& a) const { return a.conjugate(); }
  Element generator(int i) const {
    return {0.0, i == 0 ? 1.0 : 0.0, i == 1 ? 1.0 : 0.0, i == 2 ? 1.0 : 0.0};
  }
  Element negate(const Element& a) const { return -a; }

  void flatten(const Element& a, double* out) const {
    out[0] = a.w;
    out[1] = a.x;
    out[2] = a.y;
    out[3] = a.z;
  }
  double distance_sq(const Element& a, const Element& b) const {
    return (a - b).norm_squared();
  }
  Element retract(const Element& x, const double* d) const {
    const Quaternion step = UnitQuaternion::exp(d[0], d[1], d[2]).raw();
    const Quaternion y = step * x;
    return (1.0 / y.norm()) * y;
  }
  // First-order tangent coordinates of y relative to x.
  void tangent_offset(const Element& x, const Element& y, double* out) const {
    const Quaternion d = y * x.conjugate();
    out[0] = d.x;
    out[1] = d.y;
    out[2] = d.z;
  }
  void signature(const Element& a, double* out) const { out[0] = 2.0 * a.w; }

  Element random(std::mt19937_64& rng, StartMode mode) const {
    std::normal_distribution<double> normal(0.0, 1.0);
    if (mode == StartMode::kHaar) {
      Quaternion q;
      do {
        q = {normal(rng), normal(rng), normal(rng), normal(rng)};
      } while (q.norm() < 1e-9);
      return (1.0 / q.norm()) * q;
    }
    std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
    const double phi = angle(rng);
    double x, y, z, n;
    do {
      x = normal(rng);
      y = normal(rng);
      z = normal(rng);
      n = std::sqrt(x * x + y * y + z * z);
    } while (n < 1e-9);
    const double s = std::sin(phi) / n;
    return {std::cos(phi), s * x, s * y, s * z};
  }
};

// SU(r) as r x r complex matrices. Tangent coordinates are taken in the
// generalized Gell-Mann basis: delta -> exp(i sum delta_a lambda_a) x.
class SunGroup {
 public:
  using Element = Eigen::MatrixXcd;

  explicit SunGroup(int rank) : rank_(rank) { build_basis(); }

  int rank() const { return rank_; }
  int tangent_dim() const { return rank_ * rank_ - 1; }
  int flat_dim() const { return 2 * rank_ * rank_; }
  int signature_dim() const { return 2; }

  Element identity() const { return Element::Identity(rank_, rank_); }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element inverse(const Element& a) const { return a.adjoint(); }
  Element generator(int a) const {
    return std::complex<double>(0.0, 1.0) * lambda_[a];
  }
  Element negate(const Element& a) const { return -a; }
  const Element& hermitian_basis(int a) const { return lambda_[a]; }

  void flatten(const Element& a, double* out) const {
    int k = 0;
    for (int c = 0; c < rank_; ++c)
      for (int r = 0; r < rank_; ++r) {
        out[k++] = a(r, c).real();
        out[k++] = a(r, c).imag();
      }
  }
  double distance_sq(const Element& a, const Element& b) const {
    return (a - b).squaredNorm();
  }

  // exp(i H) for Hermitian H.
  Element exp_i_hermitian(const Element& h) const {
    Eigen::SelfAdjointEigenSolver<Element> es(h);
    const Eigen::VectorXd w = es.eigenvalues();
    Eigen::VectorXcd phase(rank_);
    for (int k = 0; k < rank_; ++k)
      phase(k) = std::polar(1.0, w(k));
    return es.eigenvectors() * phase.asDiagonal() *
           es.eigenvectors().adjoint();
  }

  Element hermitian_from(const double* d) const {
    Element h = Element::Zero(rank_, rank_);
    for (int a = 0; a < tangent_dim(); ++a) h += d[a] * lambda_[a];
    return h;
  }

  Element retract(const Element& x, const double* d) const {
    return project(exp_i_hermitian(hermitian_from(d)) * x);
  }

  // One Newton-Schulz polar step followed by a determinant phase fix.
  Element project(const Element& x) const {
    Element u = 0.5 * x * (3.0 * identity() - x.adjoint() * x);
    const std::complex<double> det = u.determinant();
    const std::complex<double> fix =
        std::polar(1.0, -std::arg(det) / static_cast<double>(rank_));
    return fix * u;
  }

  void tangent_offset(const Element& x, const Element& y, double* out) const {
    const Element d = y * x.adjoint();
    const Element h = (d - d.adjoint()) / std::complex<double>(0.0, 2.0);
    for (int a = 0; a < tangent_dim(); ++a)
      out[a] = 0.5 * (h * lambda_[a]).trace().real();
  }

  void signature(const Element& a, double* out) const {
    const std::complex<double> t = a.trace();
    out[0] = t.real();
    out[1] = t.imag();
  }

  // Haar measure: QR of a Ginibre matrix, then the first column absorbs the
  // determinant.
  Element haar(std::mt19937_64& rng) const {
    std::normal_distribution<double> normal(0.0, 1.0);
    Element z(rank_, rank_);
    for (int c = 0; c < rank_; ++c)
      for (int r = 0; r < rank_; ++r) z(r, c) = {normal(rng), normal(rng)};
    Eigen::HouseholderQR<Element> qr(z);
    Element q = qr.householderQ();
    const Element rr = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int c = 0; c < rank_; ++c) {
      const std::complex<double> d = rr(c, c);
      q.col(c) *= d / std::abs(d);
    }
    const std::complex<double> det = q.determinant();
    q.col(0) *= std::conj(det) / std::abs(det);
    return q;
  }

  Element random(std::mt19937_64& rng, StartMode mode) const {
    const Element u = haar(rng);
    if (mode == StartMode::kHaar) return u;
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    Eigen::VectorXcd phase(rank_);
    double total = 0.0;
    for (int k = 0; k + 1 < rank_; ++k) {
      const double t = angle(rng);
      total += t;
      phase(k) = std::polar(1.0, t);
    }
    phase(rank_ - 1) = std::polar(1.0, -total);
    return project(u * phase.asDiagonal() * u.adjoint());
  }

 private:
  void build_basis() {
    using C = std::complex<double>;
    const int r = rank_;
    for (int j = 0; j < r; ++j)
      for (int k = j + 1; k < r; ++k) {
        Element s = Element::Zero(r, r);
        s(j, k) = 1.0;
        s(k, j) = 1.0;
        lambda_.push_back(s);
        Element a = Element::Zero(r, r);
        a(j, k) = C(0.0, -1.0);
        a(k, j) = C(0.0, 1.0);
        lambda_.push_back(a);
      }
    for (int l = 1; l < r; ++l) {
      Element d = Element::Zero(r, r);
      const double scale = std::sqrt(2.0 / (l * (l + 1.0)));
      for (int m = 0; m < l; ++m) d(m, m) = scale;
      d(l, l) = -l * scale;
      lambda_.push_back(d);
    }
  }

  int rank_;
  std::vector<Element> lambda_;
};

}  // namespace charvar::detail
