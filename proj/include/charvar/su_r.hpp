#pragma once

#include <Eigen/Core>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "charvar/diagram.hpp"
#include "charvar/quaternion.hpp"
#include "charvar/solver.hpp"
#include "charvar/solver_config.hpp"

namespace charvar {

// Point of the fundamental alcove: sum zero, ascending, spread at most 1.
struct AlcoveLabel {
  std::vector<double> lambdas;

  int rank() const { return static_cast<int>(lambdas.size()); }
  // Throws InvalidParameterError when an invariant fails.
  void validate() const;
};

class SpecialUnitary {
 public:
  // Checked: U^dagger U = 1 and det U = 1 within tol, else InvalidElementError.
  explicit SpecialUnitary(Eigen::MatrixXcd m, double tol = 1e-10);
  static SpecialUnitary identity(int rank);
  // SU(2) image of a unit quaternion, with i -> diag(i, -i).
  static SpecialUnitary from_quaternion(const UnitQuaternion& q);

  int rank() const { return static_cast<int>(m_.rows()); }
  const Eigen::MatrixXcd& matrix() const { return m_; }
  std::complex<double> trace() const { return m_.trace(); }
  SpecialUnitary adjoint() const;
  SpecialUnitary operator*(const SpecialUnitary& o) const;

 private:
  Eigen::MatrixXcd m_;
};

double distance(const SpecialUnitary& a, const SpecialUnitary& b);

// j copies of (r-j)/(2r) and r-j copies of -j/(2r), ascending.
AlcoveLabel mu_label(int r, int j);

// diag(e^{2 pi i lambda_1}, ..., e^{2 pi i lambda_r}).
SpecialUnitary class_representative(const AlcoveLabel& label);

// (2g-2)(r^2-1) + 2j(r+1)(r-j).
int sur_dimension(int r, int j, int g);

// Monotonicity constant 1/(2r).
double sur_monotonicity(int r);

// Exact test of 2(r+1) mu = omega_d modulo the coweight lattice (traceless
// vectors with integral differences), for every d in [1, r-1] coprime to r.
struct CoweightCheck {
  int r = 0;
  int j = 0;
  std::vector<int> admissible_d;
  bool satisfied() const { return !admissible_d.empty(); }
};
CoweightCheck coweight_check(int r, int j);

struct ConjugacyResult {
  bool conjugate = false;
  // min over M of sum |M A_i M^dagger - B_i|^2 found by the search.
  double objective = 0.0;
  // Set when traces alone prove the tuples inequivalent.
  bool trace_certificate = false;
  Eigen::MatrixXcd conjugator;
};

ConjugacyResult unitary_conjugacy_test(const std::vector<SpecialUnitary>& a,
                                       const std::vector<SpecialUnitary>& b,
                                       double tol = 1e-6,
                                       std::uint64_t seed = 1);

struct Genus0Report {
  int r = 0;
  bool pass = false;
  int starts = 0;
  int converged = 0;
  // Distinct solutions C_1, ..., C_{r+1} in start order.
  std::vector<std::vector<SpecialUnitary>> solutions;
  double max_conjugacy_objective = 0.0;
  // Dimension of the solution set's tangent space at the first solution,
  // and of the conjugation orbit through it.
  int tangent_dimension = -1;
  int orbit_dimension = -1;
  std::vector<std::string> failures;

  int dimension_audit() const { return tangent_dimension - orbit_dimension; }
};

// Multistart solve of C_1 ... C_{r+1} = 1 with C_k = U_k D U_k^dagger, D the
// mu_label(r, 1) representative.
Genus0Report genus0_uniqueness(int r, const SolverConfig& cfg = {},
                               double tol = 1e-6);

// Puncture tuple the SU(r) solver pins to: the first genus-0 solution,
// cached per (r, seed). Throws ConfigurationError when uniqueness fails.
std::vector<SpecialUnitary> pinned_punctures(int r, const SolverConfig& cfg = {});

struct SurRepresentation {
  std::vector<SpecialUnitary> handles;
};

using SurComponent = BasicComponent<SurRepresentation>;
using SurComponentReport = BasicComponentReport<SurRepresentation>;

// Intersection census in SU(r) with punctures pinned; trace signatures hold
// (Re tr, Im tr) per handle slot.
SurComponentReport solve_sur(const HeegaardDiagram& d, int r,
                             const SolverConfig& cfg = {});

}  // namespace charvar
