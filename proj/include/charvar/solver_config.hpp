#pragma once

#include <cstdint>

namespace charvar {

struct SolverConfig {
  // 0 selects the default of 500 * 2^genus.
  int starts = 0;
  std::uint64_t seed = 1;
  double converge_tol = 1e-12;
  double dedup_radius = 1e-6;
  double cluster_radius = 1e-3;
  // Singular values below rank_tol * max are treated as zero.
  double rank_tol = 1e-6;
  int max_iterations = 200;
  // Worker cap; 0 reads CHARVAR_THREADS, falling back to the hardware count.
  int threads = 0;

  int effective_starts(int genus) const {
    if (starts > 0) return starts;
    return 500 * (1 << genus);
  }
  // Throws InvalidParameterError unless every field is positive.
  void validate() const;
};

// Worker count after applying cfg.threads and CHARVAR_THREADS.
int worker_count(const SolverConfig& cfg);

}  // namespace charvar
