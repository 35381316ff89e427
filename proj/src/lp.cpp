#include "circa/lp.hpp"

#include <utility>

#include "circa/errors.hpp"

namespace circa {

namespace {

// Simplex tableau in canonical form: basis columns are unit columns and
// rhs >= 0. basis[i] is the variable basic in row i.
struct Tableau {
    RatMatrix a;
    RatVector rhs;
    std::vector<Index> basis;

    Index rows() const { return a.rows(); }
    Index cols() const { return a.cols(); }

    void pivot(Index r, Index c) {
        const Rational p = a(r, c);
        if (p == 0) {
            throw InvariantViolation("simplex: pivot on zero entry");
        }
        a.row(r) /= p;
        rhs(r) /= p;
        for (Index i = 0; i < rows(); ++i) {
            if (i == r || a(i, c) == 0) {
                continue;
            }
            const Rational f = a(i, c);
            a.row(i) -= f * a.row(r);
            rhs(i) -= f * rhs(r);
        }
        basis[static_cast<std::size_t>(r)] = c;
    }
};

enum class PhaseStatus { optimal, unbounded };

// Maximizes cost.y over the tableau's feasible set. Bland's rule: entering
// column = smallest index with positive reduced cost, leaving row = smallest
// basic variable index among the minimum ratios.
PhaseStatus run_simplex(Tableau& t, const RatVector& cost) {
    const Index m = t.rows();
    const Index ncols = t.cols();
    while (true) {
        Index enter = -1;
        for (Index j = 0; j < ncols && enter < 0; ++j) {
            Rational rc = cost(j);
            for (Index i = 0; i < m; ++i) {
                const Index bi = t.basis[static_cast<std::size_t>(i)];
                if (cost(bi) != 0 && t.a(i, j) != 0) {
                    rc -= cost(bi) * t.a(i, j);
                }
            }
            if (rc > 0) {
                enter = j;
            }
        }
        if (enter < 0) {
            return PhaseStatus::optimal;
        }
        Index leave = -1;
        Rational best_ratio(0);
        for (Index i = 0; i < m; ++i) {
            if (t.a(i, enter) <= 0) {
                continue;
            }
            const Rational ratio = t.rhs(i) / t.a(i, enter);
            if (leave < 0 || ratio < best_ratio ||
                (ratio == best_ratio && t.basis[static_cast<std::size_t>(i)] <
                                            t.basis[static_cast<std::size_t>(leave)])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        if (leave < 0) {
            return PhaseStatus::unbounded;
        }
        t.pivot(leave, enter);
    }
}

// Moves a feasible point within { x : eq x = eq_rhs, ineq x <= ineq_rhs } to
// a point whose tight system has full rank, without leaving any constraint.
// Each pass adds an independent tight row, so at most n passes happen. When
// the set contains a line the point is returned unchanged at that stage.
RatVector settle_on_vertex(const RatMatrix& eq, const RatMatrix& ineq, const RatVector& ineq_rhs,
                           RatVector point) {
    const Index n = point.size();
    const Index mi = ineq.rows();
    RatVector slack(mi);
    for (Index i = 0; i < mi; ++i) {
        slack(i) = ineq_rhs(i) - ineq.row(i).dot(point);
    }
    for (Index pass = 0; pass <= n; ++pass) {
        std::vector<Index> tight;
        for (Index i = 0; i < mi; ++i) {
            if (slack(i) == 0) {
                tight.push_back(i);
            }
        }
        const auto basis = kernel_basis(stack_rows(eq, select_rows(ineq, tight)));
        if (basis.empty()) {
            return point;
        }
        bool moved = false;
        for (int orient = 0; orient < 2 && !moved; ++orient) {
            const RatVector dir = orient == 0 ? basis.front() : RatVector(-basis.front());
            Rational step(0);
            bool finite = false;
            RatVector incr(mi);
            for (Index i = 0; i < mi; ++i) {
                incr(i) = ineq.row(i).dot(dir);
                if (incr(i) > 0) {
                    const Rational ratio = slack(i) / incr(i);
                    if (!finite || ratio < step) {
                        step = ratio;
                        finite = true;
                    }
                }
            }
            if (!finite) {
                continue;
            }
            point += step * dir;
            slack -= step * incr;
            moved = true;
        }
        if (!moved) {
            return point;  // the face contains a line; no vertex exists
        }
    }
    throw InvariantViolation("settle_on_vertex: no vertex after dim(P) passes");
}

}  // namespace

LpResult lp_solve(const LpProblem& problem) {
    const Index n = problem.objective.size();
    if (n < 1) {
        throw DimensionError("lp_solve: empty objective");
    }
    const Index me = problem.eq_lhs.rows();
    const Index mi = problem.ineq_lhs.rows();
    if ((me > 0 && problem.eq_lhs.cols() != n) || problem.eq_rhs.size() != me ||
        (mi > 0 && problem.ineq_lhs.cols() != n) || problem.ineq_rhs.size() != mi) {
        throw DimensionError("lp_solve: inconsistent dimensions");
    }

    // Columns: x+ (n), x- (n), slacks (mi), artificials (as needed).
    const Index m = me + mi;
    const Index slack0 = 2 * n;
    const Index art0 = slack0 + mi;

    RatMatrix rows(m, art0);
    rows.setZero();
    RatVector rhs(m);
    std::vector<Index> need_artificial;
    std::vector<Index> basis(static_cast<std::size_t>(m), -1);

    for (Index i = 0; i < me; ++i) {
        const int flip = problem.eq_rhs(i) < 0 ? -1 : 1;
        for (Index j = 0; j < n; ++j) {
            rows(i, j) = flip * problem.eq_lhs(i, j);
            rows(i, n + j) = -rows(i, j);
        }
        rhs(i) = flip * problem.eq_rhs(i);
        need_artificial.push_back(i);
    }
    for (Index k = 0; k < mi; ++k) {
        const Index i = me + k;
        const int flip = problem.ineq_rhs(k) < 0 ? -1 : 1;
        for (Index j = 0; j < n; ++j) {
            rows(i, j) = flip * problem.ineq_lhs(k, j);
            rows(i, n + j) = -rows(i, j);
        }
        rows(i, slack0 + k) = flip;
        rhs(i) = flip * problem.ineq_rhs(k);
        if (flip > 0) {
            basis[static_cast<std::size_t>(i)] = slack0 + k;
        } else {
            need_artificial.push_back(i);
        }
    }

    const Index num_art = static_cast<Index>(need_artificial.size());
    Tableau t;
    t.a.resize(m, art0 + num_art);
    t.a.setZero();
    t.a.leftCols(art0) = rows;
    t.rhs = rhs;
    t.basis = basis;
    for (Index k = 0; k < num_art; ++k) {
        const Index row = need_artificial[static_cast<std::size_t>(k)];
        t.a(row, art0 + k) = 1;
        t.basis[static_cast<std::size_t>(row)] = art0 + k;
    }

    if (num_art > 0) {
        RatVector phase1_cost = RatVector::Zero(art0 + num_art);
        for (Index k = 0; k < num_art; ++k) {
            phase1_cost(art0 + k) = -1;
        }
        if (run_simplex(t, phase1_cost) == PhaseStatus::unbounded) {
            throw InvariantViolation("simplex: phase 1 unbounded");
        }
        Rational art_sum(0);
        for (Index i = 0; i < m; ++i) {
            if (t.basis[static_cast<std::size_t>(i)] >= art0) {
                art_sum += t.rhs(i);
            }
        }
        if (art_sum != 0) {
            return {LpStatus::infeasible, RatVector(), Rational(0)};
        }
        // Degenerate artificials: pivot them out on any structural column, or
        // drop the row if it became redundant.
        std::vector<Index> keep;
        for (Index i = 0; i < m; ++i) {
            if (t.basis[static_cast<std::size_t>(i)] < art0) {
                keep.push_back(i);
                continue;
            }
            Index col = -1;
            for (Index j = 0; j < art0 && col < 0; ++j) {
                if (t.a(i, j) != 0) {
                    col = j;
                }
            }
            if (col >= 0) {
                t.pivot(i, col);
                keep.push_back(i);
            }
        }
        if (static_cast<Index>(keep.size()) < m) {
            Tableau trimmed;
            trimmed.a.resize(static_cast<Index>(keep.size()), art0);
            trimmed.rhs.resize(static_cast<Index>(keep.size()));
            Index r = 0;
            for (Index i : keep) {
                trimmed.a.row(r) = t.a.row(i).head(art0);
                trimmed.rhs(r) = t.rhs(i);
                trimmed.basis.push_back(t.basis[static_cast<std::size_t>(i)]);
                ++r;
            }
            t = std::move(trimmed);
        } else {
            RatMatrix structural = t.a.leftCols(art0);
            t.a = std::move(structural);
        }
    }

    RatVector phase2_cost = RatVector::Zero(art0);
    for (Index j = 0; j < n; ++j) {
        phase2_cost(j) = problem.objective(j);
        phase2_cost(n + j) = -problem.objective(j);
    }
    if (run_simplex(t, phase2_cost) == PhaseStatus::unbounded) {
        return {LpStatus::unbounded, RatVector(), Rational(0)};
    }

    RatVector x = RatVector::Zero(n);
    for (Index i = 0; i < t.rows(); ++i) {
        const Index b = t.basis[static_cast<std::size_t>(i)];
        if (b < n) {
            x(b) += t.rhs(i);
        } else if (b < 2 * n) {
            x(b - n) -= t.rhs(i);
        }
    }
    const Rational value = problem.objective.dot(x);

    // Pin the objective and settle on a basic point of the original system.
    RatMatrix pinned(me + 1, n);
    if (me > 0) {
        pinned.topRows(me) = problem.eq_lhs;
    }
    pinned.row(me) = problem.objective.transpose();
    x = settle_on_vertex(pinned, problem.ineq_lhs, problem.ineq_rhs, std::move(x));

    return {LpStatus::optimal, std::move(x), value};
}

}  // namespace circa
