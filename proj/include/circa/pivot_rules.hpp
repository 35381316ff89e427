#pragma once

#include <optional>
#include <span>
#include <vector>

#include "circa/circuits.hpp"
#include "circa/polyhedron.hpp"

namespace circa {

/// Outcome of one pivot-rule query at a feasible point.
struct PivotChoice {
    RatVector circuit;                  // oriented, co-prime integer entries
    std::optional<Rational> step;       // maximal step; nullopt = unbounded ray
    Rational score;                     // rule-specific: improvement, rate, or steepness
    std::vector<RatVector> tie_class;   // every oriented circuit attaining the score
};

enum class PivotStatus {
    improving,      // a strictly improving bounded augmentation exists
    optimal,        // no feasible circuit improves the objective
    unbounded_ray,  // an improving feasible circuit has no finite maximal step
};

struct PivotResult {
    PivotStatus status = PivotStatus::optimal;
    std::optional<PivotChoice> choice;
};

/*
 * The three pivot-rule optimization problems over the feasible circuits at x
 * (those g with eq g = 0 and nonpositive products against the tight rows),
 * solved exhaustively over an enumerated circuit list. Scores are exact;
 * ties are broken by lexicographic order on the oriented integer vectors and
 * the full argmax set is reported. Overloads without an explicit circuit
 * list enumerate on demand.
 */

/// Maximizes the total improvement -cost.(step * g) over feasible circuits
/// with their maximal step.
PivotResult greatest_improvement(const Polyhedron& p, const RatVector& x, const RatVector& cost);
PivotResult greatest_improvement(const Polyhedron& p, const RatVector& x, const RatVector& cost,
                                 std::span<const RatVector> circuits);

/// Maximizes the rate -cost.g over co-prime normalized feasible circuits.
PivotResult dantzig(const Polyhedron& p, const RatVector& x, const RatVector& cost);
PivotResult dantzig(const Polyhedron& p, const RatVector& x, const RatVector& cost,
                    std::span<const RatVector> circuits);

/// Maximizes the steepness -cost.g / ||g||_1 over feasible circuits.
PivotResult steepest_descent_enum(const Polyhedron& p, const RatVector& x, const RatVector& cost);
PivotResult steepest_descent_enum(const Polyhedron& p, const RatVector& x, const RatVector& cost,
                                  std::span<const RatVector> circuits);

/// Polynomial steepest-descent for 0/1 vertices: one exact LP over the
/// feasible cone intersected with the facet-defining face of the unit
/// 1-norm ball. Requires x to be a vertex with 0/1 entries of a polyhedron
/// whose vertices all lie in {0,1}^n; the returned direction is an
/// edge-direction at x and its steepness equals the enumerative score.
PivotResult steepest_descent_lp(const Polyhedron& p, const RatVector& x, const RatVector& cost);

enum class ApproxKind { exact, steepest_edge };

/// Greatest-improvement oracle with a certified approximation factor: the
/// exact rule certifies 1, the steepest-edge rule certifies dim(P) on 0/1
/// vertices. The choice's score is the achieved improvement.
struct ApproxPivotResult {
    PivotResult result;
    Rational certified_factor;
};

ApproxPivotResult approx_great_oracle(ApproxKind kind, const Polyhedron& p, const RatVector& x,
                                      const RatVector& cost);

}  // namespace circa
