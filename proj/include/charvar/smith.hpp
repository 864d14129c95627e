#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace charvar {

using IntMatrix = std::vector<std::vector<std::int64_t>>;
using BigMatrix = std::vector<std::vector<mpz_class>>;

// left * input * right = diag(invariant_factors) (padded with zero rows or
// columns), left and right unimodular, d_1 | d_2 | ... with d_k >= 0.
struct SmithNormalForm {
  std::vector<mpz_class> invariant_factors;  // length min(rows, cols)
  BigMatrix left;
  BigMatrix right;
  // True when the int64 pass overflowed and the big-integer pass ran.
  bool promoted = false;
};

// Exact; runs in int64 with overflow checks and reruns in GMP integers when
// any intermediate overflows.
SmithNormalForm smith_normal_form(const IntMatrix& m);
SmithNormalForm smith_normal_form(const BigMatrix& m);

BigMatrix to_big(const IntMatrix& m);
BigMatrix multiply(const BigMatrix& a, const BigMatrix& b);

}  // namespace charvar
