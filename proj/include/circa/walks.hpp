#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "circa/pivot_rules.hpp"

namespace circa {

/// One maximal augmentation. point/objective are the values before moving.
struct WalkStep {
    std::size_t index;
    RatVector point;
    RatVector direction;   // co-prime integer entries
    Rational step_length;  // > 0
    Rational objective;
    std::string rule;
};

enum class WalkRule { greatest_improvement, dantzig, steepest_descent, steepest_edge_01 };

const char* walk_rule_name(WalkRule rule);

enum class WalkOutcome { optimal, unbounded, step_limit };

const char* walk_outcome_name(WalkOutcome outcome);

/// Iteration-count guarantee evaluated after a terminating walk. The bound is
/// evaluated with the natural logarithm in double precision; a failing check
/// is accompanied by its base-2 variant.
struct BoundCheck {
    std::string name;
    Rational bound;
    std::size_t observed;
    bool pass;
};

struct WalkReport {
    std::vector<WalkStep> steps;
    WalkOutcome outcome = WalkOutcome::optimal;
    RatVector final_point;
    Rational final_objective{0};
    std::vector<BoundCheck> bound_checks;
    bool edge_walk = false;  // steepest_edge_01: walk stayed on the 1-skeleton
};

struct WalkLimits {
    std::size_t max_steps = 10000;
};

struct SnapResult {
    bool unbounded = false;  // an improving ray with no finite maximal step was hit
    RatVector point;
    std::vector<WalkStep> steps;
};

/// Walks from a feasible point to a vertex without worsening the objective:
/// each maximal step follows a kernel direction of the current tight system,
/// so the tight rank grows and at most n - rank(eq) steps happen.
SnapResult snap_to_vertex(const Polyhedron& p, const RatVector& x, const RatVector& cost);

/// Full augmentation walk under one pivot rule until optimality,
/// unboundedness, or the step limit (reported explicitly, never silent).
/// Requires a feasible start and an integer objective.
WalkReport run_walk(const Polyhedron& p, const RatVector& x0, const RatVector& cost, WalkRule rule,
                    const WalkLimits& limits);

struct CircuitDistance {
    bool exact;         // false = only "at least value" is known
    std::size_t value;  // when !exact this is max_depth + 1
};

/// Length of the shortest maximal-augmentation path between two vertices,
/// by breadth-first search with memoized points, cut off at max_depth.
CircuitDistance circuit_distance(const Polyhedron& p, const RatVector& from, const RatVector& to,
                                 std::size_t max_depth);

/// Constructive upper bound: runs the greatest-improvement walk against an
/// objective built from the rows tight at the target (whose unique optimum
/// is the target) and returns its length.
std::size_t circuit_distance_upper_bound(const Polyhedron& p, const RatVector& from,
                                         const RatVector& to);

}  // namespace circa
