#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "circa/linalg.hpp"

namespace circa {

/// 1-norm spread data of a bounded polyhedron: the largest vertex-to-vertex
/// distance and the smallest distance from a vertex to a facet avoiding it.
struct DistanceStats {
    Rational max_vertex_distance;      // reported as "m1"
    Rational min_vertex_facet_distance;  // reported as "omega1"
};

/*
 * P = { x : eq_lhs x = eq_rhs, ineq_lhs x <= ineq_rhs } over the rationals,
 * with integer coefficient data. The equality block must have full row rank
 * and the stacked coefficient matrix must have rank n (P is pointed); at
 * least one inequality row is required. Bound constraints are ordinary rows
 * of the inequality block, never implicit.
 *
 * All members are const and the object is immutable after construction, so
 * instances can be shared freely across threads.
 */
class Polyhedron {
public:
    Polyhedron(RatMatrix eq_lhs, RatVector eq_rhs, RatMatrix ineq_lhs, RatVector ineq_rhs);

    Index dim() const { return n_; }
    Index eq_count() const { return eq_lhs_.rows(); }
    Index ineq_count() const { return ineq_lhs_.rows(); }
    const RatMatrix& eq_lhs() const { return eq_lhs_; }
    const RatVector& eq_rhs() const { return eq_rhs_; }
    const RatMatrix& ineq_lhs() const { return ineq_lhs_; }
    const RatVector& ineq_rhs() const { return ineq_rhs_; }

    /// Exact membership test. Throws DimensionError on size mismatch.
    bool is_feasible(const RatVector& x) const;

    /// Indices of inequality rows satisfied with equality at x.
    /// Requires is_feasible(x); throws PreconditionError otherwise.
    std::vector<Index> tight_set(const RatVector& x) const;

    /// True iff the rows tight at x span the whole space.
    bool is_vertex(const RatVector& x) const;

    /// Largest alpha with x + alpha * direction still feasible, or nullopt
    /// when the whole ray stays inside P. Requires a feasible x and a nonzero
    /// feasible direction at x (in the kernel of the equality block, with
    /// nonpositive products against the tight rows).
    std::optional<Rational> maximal_step(const RatVector& x, const RatVector& direction) const;

    /// All basic feasible solutions, deduplicated, in lexicographic order.
    /// Intended for desk-scale instances.
    std::vector<RatVector> enumerate_vertices() const;

    /// Vertices w such that [v, w] is a 1-face. Requires is_vertex(v).
    std::vector<RatVector> adjacent_vertices(const RatVector& v) const;

    /// Exact recession-cone test via 2n small LPs.
    bool is_bounded() const;

    /// Largest |det| over all n x n row subsets of the stacked coefficient
    /// matrix; reported as "delta".
    Rational max_subdeterminant() const;

    /// Same search over the right-hand-side-augmented rows; reported as
    /// "delta_bar".
    Rational max_augmented_subdeterminant() const;

    /// Requires a bounded polyhedron; throws PreconditionError otherwise.
    /// Facets are detected from the vertex set; the vertex-facet distance is
    /// an exact auxiliary-variable LP per (vertex, facet) pair.
    DistanceStats distance_stats() const;

private:
    RatVector ineq_slack(const RatVector& x) const;

    RatMatrix eq_lhs_;
    RatVector eq_rhs_;
    RatMatrix ineq_lhs_;
    RatVector ineq_rhs_;
    Index n_;
};

}  // namespace circa
