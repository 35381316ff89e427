#pragma once

#include <span>
#include <vector>

#include "circa/polyhedron.hpp"

namespace circa {

/*
 * A circuit of (eq_lhs, ineq_lhs) is a nonzero kernel vector of the equality
 * block whose inequality image has support-minimal zero pattern. Circuits are
 * represented as co-prime integer vectors; enumeration returns one canonical
 * representative per +/- pair (first nonzero entry positive) in lexicographic
 * order.
 */

/// Definitional test via the rank criterion: g != 0, eq g = 0 and the rows
/// zeroed by g together with the equality block have rank n - 1.
bool is_circuit(const Polyhedron& p, const RatVector& g);

/// All circuits up to sign. Candidates come from row subsets of the
/// inequality block whose stacked system has a one-dimensional kernel; each
/// surviving generator is filtered through is_circuit and deduplicated.
/// Intended for desk-scale instances.
std::vector<RatVector> enumerate_circuits(const Polyhedron& p);

struct DecompositionTerm {
    Rational coefficient;  // > 0
    RatVector circuit;     // oriented (not sign-canonical)
};

/// target = sum of coefficient * circuit over terms, each term
/// sign-compatible with the target through the inequality block.
struct Decomposition {
    std::vector<DecompositionTerm> terms;
    RatVector target;
};

/// Conformal circuit decomposition of a nonzero kernel vector v: at most
/// dim(P) terms, nonnegative coefficients, every term sign-compatible with v
/// w.r.t. the inequality rows and with inequality-image support contained in
/// that of v. Greedy: repeatedly subtract the first sign-compatible circuit
/// at the largest coefficient that keeps the residual conformal.
Decomposition sign_compatible_decompose(const Polyhedron& p, const RatVector& v);
Decomposition sign_compatible_decompose(const Polyhedron& p, const RatVector& v,
                                        std::span<const RatVector> circuits);

}  // namespace circa
