// Dense two-phase simplex over the rationals with Bland's rule.
#pragma once

#include <vector>

#include "ffdens/ring.hpp"

namespace ffdens {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  std::vector<Rational> x;
  Rational value;
};

// maximize c.x subject to A x <= b, x >= 0.
LpResult lp_maximize(const std::vector<std::vector<Rational>>& A, const std::vector<Rational>& b,
                     const std::vector<Rational>& c);

}  // namespace ffdens
