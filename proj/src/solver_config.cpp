#include "charvar/solver_config.hpp"

#include <cstdlib>
#include <string>
#include <thread>

#include "charvar/errors.hpp"

namespace charvar {

void SolverConfig::validate() const {
  if (starts < 0 || converge_tol <= 0 || dedup_radius <= 0 ||
      cluster_radius <= 0 || rank_tol <= 0 || max_iterations <= 0 ||
      threads < 0) {
    throw InvalidParameterError("solver configuration values must be positive");
  }
}

int worker_count(const SolverConfig& cfg) {
  int cap = cfg.threads;
  if (cap <= 0) {
    if (const char* env = std::getenv("CHARVAR_THREADS")) {
      try {
        cap = std::stoi(env);
      } catch (const std::exception&) {
        cap = 0;
      }
    }
  }
  if (cap <= 0) cap = static_cast<int>(std::thread::hardware_concurrency());
  return std::max(cap, 1);
}

}  // namespace charvar
