#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "charvar/diagram.hpp"
#include "charvar/moduli.hpp"
#include "charvar/solver_config.hpp"

namespace charvar {

// Converged solutions of L_alpha \cap L_beta in the pinned gauge, in start
// order after deduplication.
struct SolutionSet {
  HeegaardDiagram diagram;
  std::vector<RepresentationPoint> points;
  std::vector<double> residuals;
  std::vector<int> kernel_dims;
  int starts = 0;
  int converged_starts = 0;
};

enum class Classification { kIsolated, kSphere, kThreeSphereLike, kOther };
std::string to_string(Classification c);

template <class Point>
struct BasicComponent {
  int dimension = 0;
  std::vector<Point> samples;
  Classification classification = Classification::kOther;
  // Traces of the handle generators at the first sample. SU(2) stores one
  // real per generator, SU(r) the real and imaginary parts.
  std::vector<double> trace_signature;
  bool signature_constant = true;
  double kernel_agreement = 1.0;
  bool ambiguous = false;
  // Rank of re-solved tangent perturbations, -1 if unavailable.
  int local_dimension = -1;
};

template <class Point>
struct BasicComponentReport {
  HeegaardDiagram diagram;
  int rank = 2;
  std::vector<BasicComponent<Point>> components;
  std::vector<std::string> warnings;

  int count(Classification c) const {
    int n = 0;
    for (const auto& comp : components) n += comp.classification == c;
    return n;
  }
};

using Component = BasicComponent<RepresentationPoint>;
using ComponentReport = BasicComponentReport<RepresentationPoint>;

// Classification from dimension and signature constancy.
Classification classify(int dimension, bool signature_constant);

// Relator word a_1 b_1 a_1^-1 b_1^-1 ... a_g b_g a_g^-1 b_g^-1.
FreeWord surface_relator(int genus);

double residual(const HeegaardDiagram& d, const RepresentationPoint& p);

struct RefineResult {
  RepresentationPoint point;
  double residual = 0.0;
  bool converged = false;
  int iterations = 0;
};

RefineResult refine(const HeegaardDiagram& d, const RepresentationPoint& p,
                    const SolverConfig& cfg = {});

// Constraint Jacobian in tangent coordinates: Fox-calculus (analytic) or
// central differences with step 1e-6.
Eigen::MatrixXd constraint_jacobian(const HeegaardDiagram& d,
                                    const RepresentationPoint& p,
                                    bool analytic);

// 6g - rank of the central-difference Jacobian.
int jacobian_kernel_dim(const HeegaardDiagram& d, const RepresentationPoint& p,
                        const SolverConfig& cfg = {});

SolutionSet solve_intersection(const HeegaardDiagram& d,
                               const SolverConfig& cfg = {});

ComponentReport cluster_components(const SolutionSet& s,
                                   const SolverConfig& cfg = {});

// slot_map[s] is the slot of the second diagram carrying slot s of the first.
using GeneratorMap = std::vector<int>;
GeneratorMap identity_map(int genus);

// For each r2 component, the r1 component containing the pullback of its
// samples along the map, or -1 when the samples land in none or in several.
std::vector<int> restrict_components(const ComponentReport& r1,
                                     const ComponentReport& r2,
                                     const GeneratorMap& slot_map,
                                     const SolverConfig& cfg = {});

struct Matching {
  bool perfect = false;
  std::vector<std::pair<int, int>> pairs;  // (component of r1, component of r2)
  std::vector<int> unmatched_first;
  std::vector<int> unmatched_second;
  // Largest |x - 1| over r2 samples in slots outside the map's image.
  double unmapped_deviation = 0.0;
  std::vector<std::string> details;
};

// Pulls samples of every r2 component back along the map and locates them in
// the solution set of r1's diagram.
Matching match_reports(const ComponentReport& r1, const ComponentReport& r2,
                       const GeneratorMap& slot_map,
                       const SolverConfig& cfg = {});

}  // namespace charvar
