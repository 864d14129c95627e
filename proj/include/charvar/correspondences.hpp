#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "charvar/free_word.hpp"
#include "charvar/moduli.hpp"
#include "charvar/solver_config.hpp"

namespace charvar {

enum class BordismKind { kGenusRaising, kGenusLowering, kCylinder };
std::string to_string(BordismKind k);

// Elementary bordism between traceless moduli spaces. The attaching word
// lives on the higher-genus side; punctures pass through untouched.
struct ElementaryBordism {
  BordismKind kind = BordismKind::kCylinder;
  int source_genus = 0;
  int target_genus = 0;
  FreeWord attaching_word;

  static ElementaryBordism raising(int genus);   // genus -> genus + 1, a_{g+1}
  static ElementaryBordism lowering(int genus);  // genus + 1 -> genus, a_{g+1}
  static ElementaryBordism cylinder(int genus);
  // Throws InvalidParameterError when kind, genera and word disagree.
  void validate() const;
};

struct CorrespondencePair {
  ModuliPoint left;
  ModuliPoint right;
};

// Pairs (x, z) with the source words trivial on x, the target words trivial
// on z, and the first common_genus handle pairs plus the punctures of x and
// z related by one global conjugation.
struct StandardSystem {
  int source_genus = 0;
  int target_genus = 0;
  std::vector<FreeWord> source_words;
  std::vector<FreeWord> target_words;
  int common_genus = 0;
};

StandardSystem standard_system(const ElementaryBordism& b);

// The geometric composite of b1 followed by b2. Supports cylinders and
// raising/lowering along the same standard handle; other composites throw
// UnsupportedCompositionError.
StandardSystem compose(const ElementaryBordism& b1, const ElementaryBordism& b2);

struct Membership {
  bool member = false;
  // sqrt(word^2 + conjugation^2 + relation^2).
  double residual = 0.0;
  double word_residual = 0.0;
  double conjugation_residual = 0.0;
  double relation_residual = 0.0;
  UnitQuaternion conjugator;  // M with M x M^-1 ~ z on the common entries
};

// min over M of sqrt(sum |M x_s M^-1 - y_s|^2), solved in closed form: real
// parts are invariant and the imaginary parts give a Wahba problem.
double best_conjugator(const std::vector<UnitQuaternion>& x,
                       const std::vector<UnitQuaternion>& y,
                       UnitQuaternion* conjugator = nullptr);

Membership system_membership(const StandardSystem& s, const CorrespondencePair& pair,
                             double tol = 1e-8);
Membership correspondence_membership(const ElementaryBordism& b,
                                     const CorrespondencePair& pair,
                                     double tol = 1e-8);

// Random point of M_{g,3}: Haar handles, then punctures solving
// C_1 C_2 C_3 = (prod [A_j, B_j])^-1 with every C traceless. Handles listed in
// `trivial_slots` (0-based) are set to 1 first.
ModuliPoint random_moduli_point(int genus, std::uint64_t seed, std::uint64_t index,
                                const std::vector<int>& trivial_slots = {});

struct CompositionReport {
  StandardSystem composite;
  int samples = 0;
  // Members of the composite solved directly, and those that factored
  // through an intermediate point.
  int composite_members = 0;
  int factored = 0;
  double max_factor_residual = 0.0;
  // Composable pairs sampled from the factors, and those whose endpoints
  // lie in the composite.
  int composable_pairs = 0;
  int forward_members = 0;
  double max_forward_residual = 0.0;
  // Composite samples pairwise distinct as points of M x M, each side taken
  // up to its own conjugation (within 1e-6).
  int distinct_classes = 0;
  std::vector<int> counterexample_candidates;

  bool pass() const {
    return composite_members == samples && factored == samples &&
           forward_members == composable_pairs && composable_pairs == samples;
  }
};

CompositionReport composition_check(const ElementaryBordism& b1,
                                    const ElementaryBordism& b2, int samples,
                                    std::uint64_t seed,
                                    const SolverConfig& cfg = {});

}  // namespace charvar
