#include "circa/pivot_rules.hpp"

#include <utility>

#include "circa/errors.hpp"
#include "circa/lp.hpp"

namespace circa {

namespace {

enum class ScoreKind { improvement, rate, steepness };

// Shared exhaustive scan: scores every feasible oriented circuit at x and
// keeps the argmax set. For the improvement score an unbounded improving ray
// dominates everything; for rate/steepness the winner's own step decides
// between improving and unbounded_ray.
PivotResult scan_circuits(const Polyhedron& p, const RatVector& x, const RatVector& cost,
                          std::span<const RatVector> circuits, ScoreKind kind) {
    if (!p.is_feasible(x)) {
        throw PreconditionError("pivot rule: point is not feasible");
    }
    const Index mi = p.ineq_count();
    RatVector slack(mi);
    for (Index i = 0; i < mi; ++i) {
        slack(i) = p.ineq_rhs()(i) - p.ineq_lhs().row(i).dot(x);
    }

    std::optional<PivotChoice> best;
    bool best_unbounded = false;  // improvement scan: unbounded ray found

    auto consider = [&](const RatVector& g) {
        const Rational rate = -cost.dot(g);
        if (rate <= 0) {
            return;
        }
        RatVector image = p.ineq_lhs() * g;
        std::optional<Rational> step;
        for (Index i = 0; i < mi; ++i) {
            if (image(i) <= 0) {
                continue;
            }
            if (slack(i) == 0) {
                return;  // infeasible direction
            }
            const Rational ratio = slack(i) / image(i);
            if (!step || ratio < *step) {
                step = ratio;
            }
        }

        if (kind == ScoreKind::improvement) {
            if (!step) {
                // Unbounded improving ray; collect all of them as the tie class.
                if (!best_unbounded) {
                    best.reset();
                    best_unbounded = true;
                }
                if (!best) {
                    best = PivotChoice{g, std::nullopt, rate, {g}};
                } else if (lex_less(g, best->circuit)) {
                    best->circuit = g;
                    best->score = rate;
                    best->tie_class.push_back(g);
                } else {
                    best->tie_class.push_back(g);
                }
                return;
            }
            if (best_unbounded) {
                return;
            }
        }

        Rational score;
        switch (kind) {
            case ScoreKind::improvement:
                score = rate * *step;
                break;
            case ScoreKind::rate:
                score = rate;
                break;
            case ScoreKind::steepness:
                score = rate / norm1(g);
                break;
        }
        if (!best || score > best->score) {
            best = PivotChoice{g, step, score, {g}};
        } else if (score == best->score) {
            best->tie_class.push_back(g);
            if (lex_less(g, best->circuit)) {
                best->circuit = g;
                best->step = step;
            }
        }
    };

    for (const RatVector& base : circuits) {
        consider(base);
        consider(-base);
    }

    if (!best) {
        return {PivotStatus::optimal, std::nullopt};
    }
    if (best_unbounded || !best->step) {
        return {PivotStatus::unbounded_ray, std::move(best)};
    }
    return {PivotStatus::improving, std::move(best)};
}

}  // namespace

PivotResult greatest_improvement(const Polyhedron& p, const RatVector& x, const RatVector& cost) {
    const auto circuits = enumerate_circuits(p);
    return greatest_improvement(p, x, cost, circuits);
}

PivotResult greatest_improvement(const Polyhedron& p, const RatVector& x, const RatVector& cost,
                                 std::span<const RatVector> circuits) {
    return scan_circuits(p, x, cost, circuits, ScoreKind::improvement);
}

PivotResult dantzig(const Polyhedron& p, const RatVector& x, const RatVector& cost) {
    const auto circuits = enumerate_circuits(p);
    return dantzig(p, x, cost, circuits);
}

PivotResult dantzig(const Polyhedron& p, const RatVector& x, const RatVector& cost,
                    std::span<const RatVector> circuits) {
    return scan_circuits(p, x, cost, circuits, ScoreKind::rate);
}

PivotResult steepest_descent_enum(const Polyhedron& p, const RatVector& x, const RatVector& cost) {
    const auto circuits = enumerate_circuits(p);
    return steepest_descent_enum(p, x, cost, circuits);
}

PivotResult steepest_descent_enum(const Polyhedron& p, const RatVector& x, const RatVector& cost,
                                  std::span<const RatVector> circuits) {
    return scan_circuits(p, x, cost, circuits, ScoreKind::steepness);
}

PivotResult steepest_descent_lp(const Polyhedron& p, const RatVector& x, const RatVector& cost) {
    const Index n = p.dim();
    for (Index j = 0; j < n; ++j) {
        if (x(j) != 0 && x(j) != 1) {
            throw PreconditionError("steepest_descent_lp: point is not a 0/1 vector");
        }
    }
    if (!p.is_feasible(x) || !p.is_vertex(x)) {
        throw PreconditionError("steepest_descent_lp: point is not a vertex");
    }
    const auto tight = p.tight_set(x);

    // Feasible cone at x intersected with the one facet-defining row of the
    // unit 1-norm ball for the orthant the cone lives in.
    LpProblem q;
    q.objective = -cost;
    q.eq_lhs = p.eq_lhs();
    q.eq_rhs = RatVector::Zero(p.eq_count());
    const Index mt = static_cast<Index>(tight.size());
    q.ineq_lhs = RatMatrix::Zero(mt + 1, n);
    q.ineq_lhs.topRows(mt) = select_rows(p.ineq_lhs(), tight);
    for (Index j = 0; j < n; ++j) {
        q.ineq_lhs(mt, j) = x(j) == 0 ? 1 : -1;
    }
    q.ineq_rhs = RatVector::Zero(mt + 1);
    q.ineq_rhs(mt) = 1;

    const LpResult res = lp_solve(q);
    if (res.status == LpStatus::unbounded) {
        // The cone escapes its orthant, so the vertices of p cannot all be 0/1.
        throw PreconditionError("steepest_descent_lp: feasible region is not a 0/1 polytope");
    }
    if (res.status != LpStatus::optimal) {
        throw InvariantViolation("steepest_descent_lp: subproblem must be solvable");
    }
    if (res.value == 0) {
        return {PivotStatus::optimal, std::nullopt};
    }

    const RatVector g = to_coprime_integer(res.point);
    std::vector<Index> tight_cone_rows;
    for (Index i = 0; i < mt; ++i) {
        if (q.ineq_lhs.row(i).dot(res.point) == 0) {
            tight_cone_rows.push_back(tight[static_cast<std::size_t>(i)]);
        }
    }
    if (rank(stack_rows(p.eq_lhs(), select_rows(p.ineq_lhs(), tight_cone_rows))) != n - 1) {
        // The inner solver returns a vertex of the subproblem, and any
        // nonzero vertex of it sits on n-1 independent cone rows.
        throw InvariantViolation("steepest_descent_lp: optimizer is not an edge-direction");
    }

    const auto step = p.maximal_step(x, g);
    PivotChoice choice{g, step, -cost.dot(g) / norm1(g), {g}};
    if (!step) {
        return {PivotStatus::unbounded_ray, std::move(choice)};
    }
    return {PivotStatus::improving, std::move(choice)};
}

ApproxPivotResult approx_great_oracle(ApproxKind kind, const Polyhedron& p, const RatVector& x,
                                      const RatVector& cost) {
    if (kind == ApproxKind::exact) {
        return {greatest_improvement(p, x, cost), Rational(1)};
    }
    PivotResult res = steepest_descent_lp(p, x, cost);
    if (res.status == PivotStatus::improving) {
        // Report the improvement achieved by the maximal steepest-edge step.
        res.choice->score = -cost.dot(res.choice->circuit) * *res.choice->step;
    }
    return {std::move(res), Rational(p.dim())};
}

}  // namespace circa
