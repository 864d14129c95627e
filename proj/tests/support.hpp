#pragma once

// Shared fixtures for the unit, property and acceptance tests.

#include <random>
#include <vector>

#include "charvar/moduli.hpp"
#include "charvar/quaternion.hpp"

namespace support {

// Handle tuples with trace(prod [A_j, B_j]) in (1, 2]: rejection sampling of
// exp(v) with |v| drawn from a shrinking radius.
inline std::vector<charvar::UnitQuaternion> handles_in_neighborhood(int genus,
                                                                    std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  std::uniform_real_distribution<double> scale(0.0, 1.0);
  for (;;) {
    const double radius = scale(rng);
    std::vector<charvar::UnitQuaternion> hs;
    for (int s = 0; s < 2 * genus; ++s)
      hs.push_back(charvar::UnitQuaternion::exp(radius * n(rng), radius * n(rng),
                                                radius * n(rng)));
    if (charvar::commutator_product(hs).trace() > 1.0) return hs;
  }
}

// Imaginary-tangent perturbation of size eps in every slot.
inline std::vector<charvar::UnitQuaternion> perturb(
    const std::vector<charvar::UnitQuaternion>& hs, double eps, std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  std::vector<charvar::UnitQuaternion> out;
  for (const auto& h : hs)
    out.push_back(h * charvar::UnitQuaternion::exp(eps * n(rng), eps * n(rng), eps * n(rng)));
  return out;
}

}  // namespace support
