#include "circa/polyhedron.hpp"

#include <set>

#include "circa/errors.hpp"
#include "circa/lp.hpp"

namespace circa {

Polyhedron::Polyhedron(RatMatrix eq_lhs, RatVector eq_rhs, RatMatrix ineq_lhs, RatVector ineq_rhs)
    : eq_lhs_(std::move(eq_lhs)),
      eq_rhs_(std::move(eq_rhs)),
      ineq_lhs_(std::move(ineq_lhs)),
      ineq_rhs_(std::move(ineq_rhs)),
      n_(ineq_lhs_.cols()) {
    if (ineq_lhs_.rows() < 1) {
        throw PreconditionError("polyhedron: at least one inequality row is required");
    }
    if (n_ < 1) {
        throw PreconditionError("polyhedron: dimension must be positive");
    }
    if (eq_lhs_.rows() > 0 && eq_lhs_.cols() != n_) {
        throw DimensionError("polyhedron: equality block has wrong column count");
    }
    if (eq_lhs_.rows() == 0) {
        eq_lhs_.resize(0, n_);
    }
    if (eq_rhs_.size() != eq_lhs_.rows() || ineq_rhs_.size() != ineq_lhs_.rows()) {
        throw DimensionError("polyhedron: right-hand side size mismatch");
    }
    if (!is_integral(eq_lhs_) || !is_integral(ineq_lhs_) || !is_integral(eq_rhs_) ||
        !is_integral(ineq_rhs_)) {
        throw PreconditionError("polyhedron: coefficient data must be integral");
    }
    if (rank(eq_lhs_) != eq_lhs_.rows()) {
        throw PreconditionError("polyhedron: equality block must have full row rank");
    }
    if (rank(stack_rows(eq_lhs_, ineq_lhs_)) != n_) {
        throw PreconditionError("polyhedron: stacked constraint matrix must have full column rank");
    }
}

RatVector Polyhedron::ineq_slack(const RatVector& x) const {
    RatVector s(ineq_lhs_.rows());
    for (Index i = 0; i < ineq_lhs_.rows(); ++i) {
        s(i) = ineq_rhs_(i) - ineq_lhs_.row(i).dot(x);
    }
    return s;
}

bool Polyhedron::is_feasible(const RatVector& x) const {
    if (x.size() != n_) {
        throw DimensionError("is_feasible: point has wrong dimension");
    }
    for (Index i = 0; i < eq_lhs_.rows(); ++i) {
        if (eq_lhs_.row(i).dot(x) != eq_rhs_(i)) {
            return false;
        }
    }
    for (Index i = 0; i < ineq_lhs_.rows(); ++i) {
        if (ineq_lhs_.row(i).dot(x) > ineq_rhs_(i)) {
            return false;
        }
    }
    return true;
}

std::vector<Index> Polyhedron::tight_set(const RatVector& x) const {
    if (!is_feasible(x)) {
        throw PreconditionError("tight_set: point is not feasible");
    }
    std::vector<Index> tight;
    for (Index i = 0; i < ineq_lhs_.rows(); ++i) {
        if (ineq_lhs_.row(i).dot(x) == ineq_rhs_(i)) {
            tight.push_back(i);
        }
    }
    return tight;
}

bool Polyhedron::is_vertex(const RatVector& x) const {
    const auto tight = tight_set(x);
    return rank(stack_rows(eq_lhs_, select_rows(ineq_lhs_, tight))) == n_;
}

std::optional<Rational> Polyhedron::maximal_step(const RatVector& x,
                                                 const RatVector& direction) const {
    if (direction.size() != n_) {
        throw DimensionError("maximal_step: direction has wrong dimension");
    }
    if (is_zero(direction)) {
        throw PreconditionError("maximal_step: zero direction");
    }
    if (!is_feasible(x)) {
        throw PreconditionError("maximal_step: point is not feasible");
    }
    for (Index i = 0; i < eq_lhs_.rows(); ++i) {
        if (eq_lhs_.row(i).dot(direction) != 0) {
            throw PreconditionError("maximal_step: direction leaves the equality subspace");
        }
    }
    const RatVector slack = ineq_slack(x);
    std::optional<Rational> step;
    for (Index i = 0; i < ineq_lhs_.rows(); ++i) {
        const Rational incr = ineq_lhs_.row(i).dot(direction);
        if (incr <= 0) {
            continue;
        }
        if (slack(i) == 0) {
            throw PreconditionError("maximal_step: direction is infeasible at the point");
        }
        const Rational ratio = slack(i) / incr;
        if (!step || ratio < *step) {
            step = ratio;
        }
    }
    return step;
}

std::vector<RatVector> Polyhedron::enumerate_vertices() const {
    const Index k = n_ - eq_lhs_.rows();
    std::set<RatVector, LexLess> found;
    for_each_subset(ineq_lhs_.rows(), k, [&](const std::vector<Index>& subset) {
        const RatMatrix m = stack_rows(eq_lhs_, select_rows(ineq_lhs_, subset));
        RatVector rhs(n_);
        for (Index i = 0; i < eq_lhs_.rows(); ++i) {
            rhs(i) = eq_rhs_(i);
        }
        for (Index i = 0; i < k; ++i) {
            rhs(eq_lhs_.rows() + i) = ineq_rhs_(subset[static_cast<std::size_t>(i)]);
        }
        const auto x = try_solve_square(m, rhs);
        if (x && is_feasible(*x)) {
            found.insert(*x);
        }
    });
    return {found.begin(), found.end()};
}

std::vector<RatVector> Polyhedron::adjacent_vertices(const RatVector& v) const {
    if (!is_vertex(v)) {
        throw PreconditionError("adjacent_vertices: point is not a vertex");
    }
    const RatVector slack_v = ineq_slack(v);
    std::vector<RatVector> out;
    for (const RatVector& w : enumerate_vertices()) {
        if (w == v) {
            continue;
        }
        std::vector<Index> common;
        for (Index i = 0; i < ineq_lhs_.rows(); ++i) {
            if (slack_v(i) == 0 && ineq_lhs_.row(i).dot(w) == ineq_rhs_(i)) {
                common.push_back(i);
            }
        }
        if (rank(stack_rows(eq_lhs_, select_rows(ineq_lhs_, common))) == n_ - 1) {
            out.push_back(w);
        }
    }
    return out;
}

bool Polyhedron::is_bounded() const {
    // The recession cone { g : eq g = 0, ineq g <= 0 } is trivial iff every
    // coordinate is bounded on it; each cone LP is either 0 or unbounded.
    LpProblem cone;
    cone.eq_lhs = eq_lhs_;
    cone.eq_rhs = RatVector::Zero(eq_lhs_.rows());
    cone.ineq_lhs = ineq_lhs_;
    cone.ineq_rhs = RatVector::Zero(ineq_lhs_.rows());
    for (Index j = 0; j < n_; ++j) {
        for (int orient : {1, -1}) {
            cone.objective = RatVector::Zero(n_);
            cone.objective(j) = orient;
            const LpResult res = lp_solve(cone);
            if (res.status == LpStatus::unbounded) {
                return false;
            }
            if (res.status != LpStatus::optimal || res.value != 0) {
                throw InvariantViolation("is_bounded: cone LP must be 0 or unbounded");
            }
        }
    }
    return true;
}

Rational Polyhedron::max_subdeterminant() const {
    const RatMatrix stacked = stack_rows(eq_lhs_, ineq_lhs_);
    Rational best(0);
    for_each_subset(stacked.rows(), n_, [&](const std::vector<Index>& subset) {
        const Rational d = abs(determinant(select_rows(stacked, subset)));
        if (d > best) {
            best = d;
        }
    });
    return best;
}

Rational Polyhedron::max_augmented_subdeterminant() const {
    RatMatrix aug(eq_lhs_.rows() + ineq_lhs_.rows(), n_ + 1);
    aug.topLeftCorner(eq_lhs_.rows(), n_) = eq_lhs_;
    aug.bottomLeftCorner(ineq_lhs_.rows(), n_) = ineq_lhs_;
    for (Index i = 0; i < eq_lhs_.rows(); ++i) {
        aug(i, n_) = eq_rhs_(i);
    }
    for (Index i = 0; i < ineq_lhs_.rows(); ++i) {
        aug(eq_lhs_.rows() + i, n_) = ineq_rhs_(i);
    }
    Rational best(0);
    for_each_subset(aug.rows(), n_, [&](const std::vector<Index>& rows) {
        const RatMatrix sub = select_rows(aug, rows);
        for (Index dropped = 0; dropped <= n_; ++dropped) {
            RatMatrix square(n_, n_);
            Index c = 0;
            for (Index j = 0; j <= n_; ++j) {
                if (j != dropped) {
                    square.col(c++) = sub.col(j);
                }
            }
            const Rational d = abs(determinant(square));
            if (d > best) {
                best = d;
            }
        }
    });
    return best;
}

DistanceStats Polyhedron::distance_stats() const {
    if (!is_bounded()) {
        throw PreconditionError("distance_stats: polyhedron is unbounded");
    }
    const auto vertices = enumerate_vertices();
    DistanceStats stats{Rational(0), Rational(0)};
    if (vertices.size() < 2) {
        return stats;
    }
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        for (std::size_t j = i + 1; j < vertices.size(); ++j) {
            const Rational d = norm1(vertices[i] - vertices[j]);
            if (d > stats.max_vertex_distance) {
                stats.max_vertex_distance = d;
            }
        }
    }

    // Affine dimension of P from its vertex set.
    RatMatrix diffs(static_cast<Index>(vertices.size()) - 1, n_);
    for (std::size_t i = 1; i < vertices.size(); ++i) {
        diffs.row(static_cast<Index>(i - 1)) = (vertices[i] - vertices[0]).transpose();
    }
    const Index poly_dim = rank(diffs);

    // A row defines a facet iff its tight vertices span one dimension less.
    std::vector<Index> facet_rows;
    for (Index r = 0; r < ineq_lhs_.rows(); ++r) {
        std::vector<const RatVector*> on_row;
        for (const auto& v : vertices) {
            if (ineq_lhs_.row(r).dot(v) == ineq_rhs_(r)) {
                on_row.push_back(&v);
            }
        }
        if (on_row.empty()) {
            continue;
        }
        RatMatrix face_diffs(static_cast<Index>(on_row.size()) - 1, n_);
        for (std::size_t i = 1; i < on_row.size(); ++i) {
            face_diffs.row(static_cast<Index>(i - 1)) = (*on_row[i] - *on_row[0]).transpose();
        }
        if (rank(face_diffs) == poly_dim - 1) {
            facet_rows.push_back(r);
        }
    }

    // min over (vertex, facet avoiding it) of min ||v - y||_1 over y on the
    // facet, each solved exactly with auxiliary variables t >= |v - y|.
    std::optional<Rational> best;
    for (const auto& v : vertices) {
        for (Index r : facet_rows) {
            if (ineq_lhs_.row(r).dot(v) == ineq_rhs_(r)) {
                continue;
            }
            LpProblem lp;
            lp.objective = RatVector::Zero(2 * n_);
            for (Index j = 0; j < n_; ++j) {
                lp.objective(n_ + j) = -1;
            }
            const Index me = eq_lhs_.rows();
            lp.eq_lhs = RatMatrix::Zero(me + 1, 2 * n_);
            lp.eq_lhs.topLeftCorner(me, n_) = eq_lhs_;
            lp.eq_lhs.block(me, 0, 1, n_) = ineq_lhs_.row(r);
            lp.eq_rhs.resize(me + 1);
            lp.eq_rhs.head(me) = eq_rhs_;
            lp.eq_rhs(me) = ineq_rhs_(r);
            const Index mi = ineq_lhs_.rows();
            lp.ineq_lhs = RatMatrix::Zero(mi + 2 * n_, 2 * n_);
            lp.ineq_lhs.topLeftCorner(mi, n_) = ineq_lhs_;
            lp.ineq_rhs.resize(mi + 2 * n_);
            lp.ineq_rhs.head(mi) = ineq_rhs_;
            for (Index j = 0; j < n_; ++j) {
                lp.ineq_lhs(mi + 2 * j, j) = 1;
                lp.ineq_lhs(mi + 2 * j, n_ + j) = -1;
                lp.ineq_rhs(mi + 2 * j) = v(j);
                lp.ineq_lhs(mi + 2 * j + 1, j) = -1;
                lp.ineq_lhs(mi + 2 * j + 1, n_ + j) = -1;
                lp.ineq_rhs(mi + 2 * j + 1) = -v(j);
            }
            const LpResult res = lp_solve(lp);
            if (res.status != LpStatus::optimal) {
                throw InvariantViolation("distance_stats: facet distance LP must be solvable");
            }
            const Rational dist = -res.value;
            if (!best || dist < *best) {
                best = dist;
            }
        }
    }
    if (best) {
        stats.min_vertex_facet_distance = *best;
    }
    return stats;
}

}  // namespace circa
