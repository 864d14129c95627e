#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "charvar/diagram.hpp"
#include "charvar/solver.hpp"

namespace charvar {

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

bool all_pass(const std::vector<Check>& checks);

struct CensusReport {
  std::string diagram_name;
  ComponentReport report;
  AbelianGroupInvariants h1;
  std::int64_t euler_prediction = 0;
  // Sum of total Betti numbers over components (isolated 1, sphere 2,
  // three-sphere-like 2); -1 when some component is unclassified.
  int betti_rank = 0;
  std::vector<Check> checks;

  bool pass() const { return all_pass(checks); }
};

// Total Betti number heuristic of a component census.
int betti_rank(const ComponentReport& r);

// Solves, clusters and attaches H_1. Diagrams whose name rebuilds to the same
// curves through diagram_from_name also get family verdicts.
CensusReport generator_census(const HeegaardDiagram& d,
                              const SolverConfig& cfg = {});

// |H_1| when b_1 = 0, otherwise 0.
std::int64_t predict_euler(const HeegaardDiagram& d);

struct KunnethReport {
  CensusReport first;
  CensusReport second;
  CensusReport sum;
  // For each component of the sum, the components its restrictions land in.
  std::vector<std::pair<int, int>> restriction;
  std::vector<Check> checks;
  std::string witness;  // sample of the first offending component

  bool pass() const { return all_pass(checks); }
};

KunnethReport kunneth_check(const HeegaardDiagram& d1,
                            const HeegaardDiagram& d2,
                            const SolverConfig& cfg = {});

enum class MoveKind { kIsotopy, kHandleslide, kStabilize };

// Isotopy replaces curve j of the family by word * curve_j * word^-1. A
// handleslide replaces curve j by curve_j * word * curve_k^sign * word^-1.
struct Move {
  MoveKind kind = MoveKind::kStabilize;
  CurveFamily family = CurveFamily::kBeta;
  int j = 1;
  int k = 2;
  int sign = 1;
  FreeWord word;

  std::string to_string() const;
};

HeegaardDiagram apply_move(const HeegaardDiagram& d, const Move& m);

struct MoveReport {
  Move move;
  ComponentReport before;
  ComponentReport after;
  Matching matching;
  // Largest distance from a sample of either side to the other side's
  // solution set, measured by refining it there. Handleslides only.
  double hausdorff = 0.0;
  std::vector<Check> checks;

  bool pass() const { return all_pass(checks); }
};

MoveReport verify_move(const HeegaardDiagram& d, const Move& m,
                       const SolverConfig& cfg = {});

struct BlowupReport {
  std::vector<CensusReport> censuses;
  std::vector<Check> checks;

  bool pass() const { return all_pass(checks); }
};

// The genus-1 diagrams with curve pairs (a, b), (b, b a^-1), (a, b a^-1).
std::vector<HeegaardDiagram> blowup_diagrams();
BlowupReport blowup_triple_check(const SolverConfig& cfg = {});

}  // namespace charvar
