#pragma once

#include "circa/linalg.hpp"

namespace circa {

/// max objective.x  s.t.  eq_lhs x = eq_rhs, ineq_lhs x <= ineq_rhs, x free.
struct LpProblem {
    RatVector objective;
    RatMatrix eq_lhs;
    RatVector eq_rhs;
    RatMatrix ineq_lhs;
    RatVector ineq_rhs;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
    LpStatus status = LpStatus::infeasible;
    RatVector point;  // when optimal: a vertex of the feasible region if one exists
    Rational value{0};
};

/*
 * Exact primal simplex. Free variables are split into differences of
 * nonnegative ones, inequalities get slacks, feasibility comes from a
 * two-phase start with artificial variables. Entering and leaving choices
 * follow Bland's smallest-index rule throughout, so the solver terminates
 * (no cycling) and is fully deterministic. After phase 2 the solution is
 * moved within the optimal face to a basic point of the original system,
 * so the reported point is a vertex whenever the region is pointed.
 */
LpResult lp_solve(const LpProblem& problem);

}  // namespace circa
