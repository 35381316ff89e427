#include "circa/circuits.hpp"

#include <set>

#include "circa/errors.hpp"

namespace circa {

bool is_circuit(const Polyhedron& p, const RatVector& g) {
    if (g.size() != p.dim()) {
        throw DimensionError("is_circuit: vector has wrong dimension");
    }
    if (is_zero(g)) {
        return false;
    }
    for (Index i = 0; i < p.eq_count(); ++i) {
        if (p.eq_lhs().row(i).dot(g) != 0) {
            return false;
        }
    }
    std::vector<Index> zero_rows;
    for (Index i = 0; i < p.ineq_count(); ++i) {
        if (p.ineq_lhs().row(i).dot(g) == 0) {
            zero_rows.push_back(i);
        }
    }
    return rank(stack_rows(p.eq_lhs(), select_rows(p.ineq_lhs(), zero_rows))) == p.dim() - 1;
}

std::vector<RatVector> enumerate_circuits(const Polyhedron& p) {
    const Index n = p.dim();
    const Index k = n - 1 - p.eq_count();
    if (k < 0) {
        return {};
    }
    std::set<RatVector, LexLess> found;
    for_each_subset(p.ineq_count(), k, [&](const std::vector<Index>& subset) {
        const auto kernel = kernel_basis(stack_rows(p.eq_lhs(), select_rows(p.ineq_lhs(), subset)));
        if (kernel.size() != 1) {
            return;
        }
        const RatVector& g = kernel.front();
        if (found.contains(g) || !is_circuit(p, g)) {
            return;
        }
        found.insert(g);
    });
    return {found.begin(), found.end()};
}

Decomposition sign_compatible_decompose(const Polyhedron& p, const RatVector& v) {
    const auto circuits = enumerate_circuits(p);
    return sign_compatible_decompose(p, v, circuits);
}

Decomposition sign_compatible_decompose(const Polyhedron& p, const RatVector& v,
                                        std::span<const RatVector> circuits) {
    if (v.size() != p.dim()) {
        throw DimensionError("sign_compatible_decompose: vector has wrong dimension");
    }
    if (is_zero(v)) {
        throw PreconditionError("sign_compatible_decompose: zero vector");
    }
    for (Index i = 0; i < p.eq_count(); ++i) {
        if (p.eq_lhs().row(i).dot(v) != 0) {
            throw PreconditionError("sign_compatible_decompose: vector not in the equality kernel");
        }
    }

    const Index mi = p.ineq_count();
    RatVector residual = v;
    RatVector residual_image = p.ineq_lhs() * residual;

    Decomposition result;
    result.target = v;
    const Index max_terms = p.dim();
    while (!is_zero(residual)) {
        if (static_cast<Index>(result.terms.size()) >= max_terms) {
            throw InvariantViolation("sign_compatible_decompose: more than dim(P) terms needed");
        }
        if (is_zero(residual_image)) {
            // residual in ker(eq) with zero inequality image contradicts the
            // full-column-rank constraint system
            throw InvariantViolation("sign_compatible_decompose: nonzero residual with zero image");
        }
        bool advanced = false;
        for (const RatVector& base : circuits) {
            for (int orient = 0; orient < 2 && !advanced; ++orient) {
                const RatVector g = orient == 0 ? base : RatVector(-base);
                const RatVector image = p.ineq_lhs() * g;
                bool compatible = true;
                std::optional<Rational> coeff;
                for (Index i = 0; i < mi && compatible; ++i) {
                    if (image(i) == 0) {
                        continue;
                    }
                    if (sign_of(image(i)) != sign_of(residual_image(i))) {
                        compatible = false;
                        break;
                    }
                    const Rational ratio = residual_image(i) / image(i);
                    if (!coeff || ratio < *coeff) {
                        coeff = ratio;
                    }
                }
                if (!compatible || !coeff) {
                    continue;
                }
                residual -= *coeff * g;
                residual_image -= *coeff * image;
                result.terms.push_back({*coeff, g});
                advanced = true;
            }
            if (advanced) {
                break;
            }
        }
        if (!advanced) {
            throw InvariantViolation("sign_compatible_decompose: no conformal circuit matches");
        }
    }
    return result;
}

}  // namespace circa
