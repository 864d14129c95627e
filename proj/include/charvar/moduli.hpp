#pragma once

#include <array>
#include <span>
#include <vector>

#include "charvar/quaternion.hpp"

namespace charvar {

// Metadata constants of the traceless character variety M_{g,3}. Nothing in
// the library evaluates the symplectic form.
inline constexpr double kMonotonicityConstant = 0.25;
inline constexpr int kPi2Rank = 4;

// A tuple (A_1, B_1, ..., A_g, B_g, C_1, C_2, C_3). The relator convention
// used everywhere is prod_j [A_j, B_j] * C_1 C_2 C_3 = 1 with
// [A, B] = A B A^-1 B^-1.
struct ModuliPoint {
  std::vector<UnitQuaternion> handles;
  std::array<UnitQuaternion, 3> punctures{
      UnitQuaternion::i(), UnitQuaternion::j(), -UnitQuaternion::k()};

  int genus() const { return static_cast<int>(handles.size() / 2); }
  // The trivial representation [I, ..., I, i, j, -k].
  static ModuliPoint trivial(int genus);
};

// A moduli point in the pinned gauge: punctures are exactly (i, j, -k), so
// the handles alone carry the data and satisfy prod [A_j, B_j] = 1.
struct RepresentationPoint {
  std::vector<UnitQuaternion> handles;

  int genus() const { return static_cast<int>(handles.size() / 2); }
  ModuliPoint moduli() const;
  static RepresentationPoint trivial(int genus);
  // Throws NotInStratumError unless the punctures are (i, j, -k) within tol.
  static RepresentationPoint from_moduli(const ModuliPoint& p,
                                         double tolerance = tol::kEquality);
};

// prod_j [A_j, B_j] over the handle list (A_1, B_1, ...).
UnitQuaternion commutator_product(std::span<const UnitQuaternion> handles);

// |prod [A_j, B_j] C_1 C_2 C_3 - 1| as a 4-vector.
double relation_residual(const ModuliPoint& p);

// Conjugates the tuple so the punctures become exactly (i, j, -k).
ModuliPoint pin_gauge(const ModuliPoint& p);

// Simultaneous conjugation of every entry.
ModuliPoint conjugate_point(const ModuliPoint& p, const UnitQuaternion& m);

// 6g - 6 + 2n; requires n odd (traceless labels).
int moduli_dimension(int genus, int punctures);

// gamma of the h_t construction: atan(cot(pi t / 4) / Q_k) / (2 pi) with the
// principal branch, 1/2 at P = I and 1/4 when Q_k = 0 with P != I.
double ht_gamma(std::span<const UnitQuaternion> handles);

// (handles, i, e^{2 pi gamma k} i, -e^{2 pi gamma k} P^-1) with
// P = prod [A_j, B_j]; then C_1 C_2 C_3 = P^-1 so the relator holds. Throws
// OutOfNeighborhoodError when trace(P) <= 1.
ModuliPoint ht_embed(std::span<const UnitQuaternion> handles);

}  // namespace charvar
