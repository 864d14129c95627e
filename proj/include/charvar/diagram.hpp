#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "charvar/free_word.hpp"
#include "charvar/smith.hpp"

namespace charvar {

// Pointed Heegaard diagram with attaching curves recorded as words in
// pi_1 of the genus-g surface. The basepoint punctures never appear in the
// words.
struct HeegaardDiagram {
  int genus = 0;
  std::vector<FreeWord> alpha;
  std::vector<FreeWord> beta;
  std::string name;

  // Curve systems as constraint words for the solver.
  std::vector<FreeWord> all_curves() const;

  friend bool operator==(const HeegaardDiagram&,
                         const HeegaardDiagram&) = default;
};

struct ValidationReport {
  bool pass = true;
  std::vector<std::string> failures;
};

struct AbelianGroupInvariants {
  int free_rank = 0;
  std::vector<std::int64_t> torsion;  // d_1 | d_2 | ..., each >= 2

  // Product of the torsion coefficients (1 for a torsion-free group).
  std::int64_t torsion_order() const;
  std::string to_string() const;
  friend bool operator==(const AbelianGroupInvariants&,
                         const AbelianGroupInvariants&) = default;
};

enum class CurveFamily { kAlpha, kBeta };

// Exponent-sum vector of length 2g in the order (a_1, b_1, ..., a_g, b_g).
std::vector<std::int64_t> abelianize(const FreeWord& word, int genus);

ValidationReport validate_diagram(const HeegaardDiagram& d);

// Standard constructors. s3_genus(g): alpha = a_j, beta = b_j. s2xs1:
// alpha = beta = a_1. lens(p, q): alpha = a_1, beta = a_1^q b_1^p.
HeegaardDiagram s3_genus(int genus);
HeegaardDiagram s2xs1();
HeegaardDiagram lens(int p, int q);

// One summand of a constructor-style name.
struct FamilyPiece {
  enum Kind { kSphere, kS2xS1, kLens } kind = kSphere;
  int genus = 0;  // s3_genus only
  int p = 1;
  int q = 0;
};

// Splits a '#'-joined constructor name into summands; nullopt when some part
// is not a constructor name.
std::optional<std::vector<FamilyPiece>> parse_family_name(const std::string& name);

// Rebuilds a diagram from a constructor-style name ("lens(5,2)",
// "s3_genus(1)", "s2xs1", and '#'-joined sums of these). Returns nullopt for
// names that are not constructor names.
std::optional<HeegaardDiagram> diagram_from_name(const std::string& name);

HeegaardDiagram connected_sum(const HeegaardDiagram& d1,
                              const HeegaardDiagram& d2);
HeegaardDiagram stabilize(const HeegaardDiagram& d);
// Replaces curve j of the family by curve_j * path * curve_k^sign * path^-1.
// j and k are 1-based.
HeegaardDiagram handleslide(const HeegaardDiagram& d, CurveFamily family,
                            int j, int k, const FreeWord& path = {},
                            int sign = 1);
// Replaces curve j by w * curve_j * w^-1 (a free-homotopy isotopy).
HeegaardDiagram conjugate_curve(const HeegaardDiagram& d, CurveFamily family,
                                int j, const FreeWord& w);

// H_1 = Z^{2g} / span of all curve abelianizations.
AbelianGroupInvariants h1_invariants(const HeegaardDiagram& d);
AbelianGroupInvariants invariants_from_snf(const SmithNormalForm& snf,
                                           int ambient_rank);

}  // namespace charvar
