#pragma once

// Exact rational linear programming: minimize c.x subject to A x = b, x >= 0.
// Dense two-phase simplex with Bland's rule, so it terminates on degenerate
// problems. Meant for small problems.

#include <vector>

#include "ergo/rational.hpp"

namespace ergo {

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  Rational value;
  std::vector<Rational> x;
};

LpResult solve_lp(const std::vector<std::vector<Rational>>& A, const std::vector<Rational>& b,
                  const std::vector<Rational>& c);

}  // namespace ergo
