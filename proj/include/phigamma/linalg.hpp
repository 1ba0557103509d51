#pragma once

#include <optional>
#include <vector>

#include "phigamma/padic.hpp"

namespace phigamma {

using PMatrix = std::vector<std::vector<Padic>>;

struct SolveResult {
  bool consistent = false;
  long rank = 0;
  std::vector<Padic> x;  // one particular solution, free variables set to zero
  long residual_val = kInf;  // smallest valuation left in an inconsistent row
};

// Solve A x = b (A is rows x cols) by Gaussian elimination, pivoting on the
// entry of least valuation.  Rows that reduce to zero at precision must have a
// right-hand side that is zero at precision, otherwise the system is reported
// inconsistent.
SolveResult solve_linear(PMatrix A, std::vector<Padic> b, int p);

}  // namespace phigamma
