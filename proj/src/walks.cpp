#include "circa/walks.hpp"

#include <cmath>
#include <set>
#include <utility>

#include "circa/errors.hpp"

namespace circa {

namespace {

Rational from_double(double x) { return Rational(x); }

// factor * log(arg) + extra, evaluated in double precision. The walk bounds
// are loose by construction, so rounding here cannot flip a verdict on the
// exact-arithmetic instances this library targets.
Rational log_bound(const Rational& factor, const Rational& arg, Index extra, bool base2) {
    const double a = arg.convert_to<double>();
    const double f = factor.convert_to<double>();
    const double raw = f * (base2 ? std::log2(a) : std::log(a)) + static_cast<double>(extra);
    return from_double(raw);
}

void append_bound_check(WalkReport& report, const std::string& name, const Rational& factor,
                        const Rational& delta_gap, Index n, std::size_t observed) {
    // delta_gap = delta * (c.x0 - c.xmin); a zero gap degenerates to the
    // snap allowance alone.
    Rational bound = delta_gap == 0 ? Rational(n) : log_bound(factor, delta_gap, n, false);
    const bool pass = Rational(static_cast<long>(observed)) <= bound;
    report.bound_checks.push_back({name, bound, observed, pass});
    if (!pass && delta_gap != 0) {
        Rational bound2 = log_bound(factor, delta_gap, n, true);
        const bool pass2 = Rational(static_cast<long>(observed)) <= bound2;
        report.bound_checks.push_back({name + " (log2)", bound2, observed, pass2});
    }
}

PivotResult query_rule(const Polyhedron& p, const RatVector& x, const RatVector& cost,
                       WalkRule rule, std::span<const RatVector> circuits) {
    switch (rule) {
        case WalkRule::greatest_improvement:
            return greatest_improvement(p, x, cost, circuits);
        case WalkRule::dantzig:
            return dantzig(p, x, cost, circuits);
        case WalkRule::steepest_descent:
            return steepest_descent_enum(p, x, cost, circuits);
        case WalkRule::steepest_edge_01:
            return steepest_descent_lp(p, x, cost);
    }
    throw InvariantViolation("query_rule: unknown rule");
}

}  // namespace

const char* walk_rule_name(WalkRule rule) {
    switch (rule) {
        case WalkRule::greatest_improvement:
            return "great";
        case WalkRule::dantzig:
            return "dantzig";
        case WalkRule::steepest_descent:
            return "steepest";
        case WalkRule::steepest_edge_01:
            return "steepest-edge-01";
    }
    return "?";
}

const char* walk_outcome_name(WalkOutcome outcome) {
    switch (outcome) {
        case WalkOutcome::optimal:
            return "optimal";
        case WalkOutcome::unbounded:
            return "unbounded";
        case WalkOutcome::step_limit:
            return "step-limit";
    }
    return "?";
}

SnapResult snap_to_vertex(const Polyhedron& p, const RatVector& x, const RatVector& cost) {
    if (!p.is_feasible(x)) {
        throw PreconditionError("snap_to_vertex: point is not feasible");
    }
    SnapResult result;
    result.point = x;
    const Index n = p.dim();
    for (Index pass = 0; pass <= n; ++pass) {
        const auto tight = p.tight_set(result.point);
        const auto kernel =
            kernel_basis(stack_rows(p.eq_lhs(), select_rows(p.ineq_lhs(), tight)));
        if (kernel.empty()) {
            return result;
        }
        RatVector dir = kernel.front();
        if (cost.dot(dir) > 0) {
            dir = -dir;
        }
        auto step = p.maximal_step(result.point, dir);
        if (!step) {
            if (cost.dot(dir) < 0) {
                result.unbounded = true;
                return result;
            }
            dir = -dir;
            step = p.maximal_step(result.point, dir);
            if (!step) {
                throw InvariantViolation("snap_to_vertex: pointed polyhedron contains a line");
            }
        }
        result.steps.push_back({result.steps.size(), result.point, dir, *step,
                                cost.dot(result.point), "snap"});
        result.point += *step * dir;
    }
    throw InvariantViolation("snap_to_vertex: tight rank must reach n within n steps");
}

WalkReport run_walk(const Polyhedron& p, const RatVector& x0, const RatVector& cost, WalkRule rule,
                    const WalkLimits& limits) {
    if (!p.is_feasible(x0)) {
        throw PreconditionError("run_walk: start point is not feasible");
    }
    if (cost.size() != p.dim() || !is_integral(cost)) {
        throw PreconditionError("run_walk: objective must be an integer vector");
    }

    WalkReport report;
    RatVector x = x0;
    if (rule == WalkRule::steepest_edge_01) {
        report.edge_walk = true;
        if (!p.is_vertex(x)) {
            SnapResult snap = snap_to_vertex(p, x, cost);
            report.steps = std::move(snap.steps);
            x = std::move(snap.point);
            if (snap.unbounded) {
                report.outcome = WalkOutcome::unbounded;
                report.final_point = x;
                report.final_objective = cost.dot(x);
                return report;
            }
        }
    }

    std::vector<RatVector> circuits;
    if (rule != WalkRule::steepest_edge_01) {
        circuits = enumerate_circuits(p);
    }

    while (true) {
        if (report.steps.size() >= limits.max_steps) {
            report.outcome = WalkOutcome::step_limit;
            break;
        }
        const PivotResult res = query_rule(p, x, cost, rule, circuits);
        if (res.status == PivotStatus::optimal) {
            report.outcome = WalkOutcome::optimal;
            break;
        }
        if (res.status == PivotStatus::unbounded_ray) {
            report.outcome = WalkOutcome::unbounded;
            break;
        }
        const PivotChoice& choice = *res.choice;
        report.steps.push_back({report.steps.size(), x, choice.circuit, *choice.step, cost.dot(x),
                                walk_rule_name(rule)});
        RatVector next = x + *choice.step * choice.circuit;
        if (rule == WalkRule::steepest_edge_01) {
            std::vector<Index> common;
            for (Index i = 0; i < p.ineq_count(); ++i) {
                if (p.ineq_lhs().row(i).dot(x) == p.ineq_rhs()(i) &&
                    p.ineq_lhs().row(i).dot(next) == p.ineq_rhs()(i)) {
                    common.push_back(i);
                }
            }
            const bool adjacent =
                p.is_vertex(next) &&
                rank(stack_rows(p.eq_lhs(), select_rows(p.ineq_lhs(), common))) == p.dim() - 1;
            if (!adjacent) {
                throw InvariantViolation("run_walk: steepest-edge step left the 1-skeleton");
            }
        }
        x = std::move(next);
    }

    report.final_point = x;
    report.final_objective = cost.dot(x);

    if (report.outcome == WalkOutcome::optimal) {
        const Index n = p.dim();
        const Rational gap = cost.dot(x0) - report.final_objective;
        if (rule == WalkRule::greatest_improvement) {
            const Rational scaled = p.max_subdeterminant() * gap;
            append_bound_check(report, "greatest-improvement iterations", Rational(4 * n), scaled,
                               n, report.steps.size());
        } else if (rule == WalkRule::steepest_descent) {
            if (p.is_bounded()) {
                const DistanceStats stats = p.distance_stats();
                if (stats.min_vertex_facet_distance > 0) {
                    const Rational scaled = p.max_subdeterminant() * gap;
                    const Rational factor = Rational(4 * n * n) * stats.max_vertex_distance /
                                            stats.min_vertex_facet_distance;
                    append_bound_check(report, "steepest-descent iterations", factor, scaled, n,
                                       report.steps.size());
                }
            }
        } else if (rule == WalkRule::steepest_edge_01) {
            const Rational scaled = p.max_subdeterminant() * gap;
            append_bound_check(report, "steepest-edge iterations (n-approx)",
                               Rational(4 * n * n), scaled, n, report.steps.size());
            const DistanceStats stats = p.distance_stats();
            if (stats.min_vertex_facet_distance > 0) {
                const Rational factor = Rational(4 * n) * stats.max_vertex_distance /
                                        stats.min_vertex_facet_distance;
                append_bound_check(report, "steepest-edge iterations (spread)", factor, scaled, n,
                                   report.steps.size());
            }
        }
    }
    return report;
}

CircuitDistance circuit_distance(const Polyhedron& p, const RatVector& from, const RatVector& to,
                                 std::size_t max_depth) {
    if (!p.is_vertex(from) || !p.is_vertex(to)) {
        throw PreconditionError("circuit_distance: endpoints must be vertices");
    }
    if (!p.is_bounded()) {
        throw PreconditionError("circuit_distance: polyhedron must be bounded");
    }
    if (from == to) {
        return {true, 0};
    }
    const auto circuits = enumerate_circuits(p);
    const Index mi = p.ineq_count();

    std::set<RatVector, LexLess> visited;
    visited.insert(from);
    std::vector<RatVector> frontier{from};
    for (std::size_t depth = 1; depth <= max_depth && !frontier.empty(); ++depth) {
        std::vector<RatVector> next_frontier;
        for (const RatVector& x : frontier) {
            RatVector slack(mi);
            for (Index i = 0; i < mi; ++i) {
                slack(i) = p.ineq_rhs()(i) - p.ineq_lhs().row(i).dot(x);
            }
            for (const RatVector& base : circuits) {
                for (int orient = 0; orient < 2; ++orient) {
                    const RatVector g = orient == 0 ? base : RatVector(-base);
                    const RatVector image = p.ineq_lhs() * g;
                    std::optional<Rational> step;
                    bool feasible = true;
                    for (Index i = 0; i < mi && feasible; ++i) {
                        if (image(i) <= 0) {
                            continue;
                        }
                        if (slack(i) == 0) {
                            feasible = false;
                            break;
                        }
                        const Rational ratio = slack(i) / image(i);
                        if (!step || ratio < *step) {
                            step = ratio;
                        }
                    }
                    if (!feasible) {
                        continue;
                    }
                    if (!step) {
                        throw InvariantViolation("circuit_distance: unbounded step on bounded P");
                    }
                    RatVector y = x + *step * g;
                    if (!visited.insert(y).second) {
                        continue;
                    }
                    if (y == to) {
                        return {true, depth};
                    }
                    next_frontier.push_back(std::move(y));
                }
            }
        }
        frontier = std::move(next_frontier);
    }
    return {false, max_depth + 1};
}

std::size_t circuit_distance_upper_bound(const Polyhedron& p, const RatVector& from,
                                         const RatVector& to) {
    if (!p.is_vertex(from) || !p.is_vertex(to)) {
        throw PreconditionError("circuit_distance_upper_bound: endpoints must be vertices");
    }
    // Summing the rows tight at the target (negated) gives an objective whose
    // unique minimizer over P is the target.
    RatVector cost = RatVector::Zero(p.dim());
    for (Index i = 0; i < p.eq_count(); ++i) {
        cost -= p.eq_lhs().row(i).transpose();
    }
    for (Index i : p.tight_set(to)) {
        cost -= p.ineq_lhs().row(i).transpose();
    }
    const WalkReport report = run_walk(p, from, cost, WalkRule::greatest_improvement, WalkLimits{});
    if (report.outcome != WalkOutcome::optimal || report.final_point != to) {
        throw InvariantViolation(
            "circuit_distance_upper_bound: walk did not end at the target vertex");
    }
    return report.steps.size();
}

}  // namespace circa
