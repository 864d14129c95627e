#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "charvar/correspondences.hpp"
#include "charvar/invariants.hpp"
#include "charvar/io.hpp"
#include "charvar/solver_config.hpp"

namespace charvar {

inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailure = 1;
inline constexpr int kExitUsage = 2;

struct Command {
  // census, euler, kunneth, verify-move, blowup, compose-check, sur-census,
  // genus0
  std::string verb;
  std::vector<std::string> inputs;  // diagram JSON files
  std::string family;               // lens, s3, s2xs1 or a constructor name
  int p = 1;
  int q = 1;
  int genus = 1;
  std::string second;    // kunneth: file or constructor name
  std::string move;      // verify-move descriptor
  std::string bordisms;  // compose-check, e.g. "raise:0,lower:0"
  int samples = 200;
  int rank = 3;
  bool allow_high_rank = false;
  std::optional<double> tol;
  SolverConfig cfg;
  std::string out;
};

struct CommandResult {
  int exit_code = kExitPass;
  Json report;
  std::string summary;  // plain-text table
};

// Throws charvar::Error subclasses on bad input; cli_main maps them to exit 2.
CommandResult run_command(const Command& c);

// "stabilize", "isotopy:<alpha|beta>:<j>:<word>" or
// "slide:<alpha|beta>:<j>:<k>[:<sign>[:<word>]]"; words use FreeWord::parse.
Move parse_move(const std::string& descriptor);

// Comma-separated "raise:g", "lower:g" or "cylinder:g".
std::vector<ElementaryBordism> parse_bordisms(const std::string& list);

// Argument parsing, dispatch and output. The JSON report goes to --out (the
// summary then goes to `out`) or, without --out, to `out` with the summary on
// `err`.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace charvar
