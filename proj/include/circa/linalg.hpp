#pragma once

#include <boost/multiprecision/eigen.hpp>

#include <Eigen/Dense>
#include <functional>
#include <initializer_list>
#include <optional>
#include <vector>

#include "circa/rational.hpp"

namespace circa {

using RatVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using RatMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using Index = Eigen::Index;

RatVector make_vector(std::initializer_list<long> entries);
RatMatrix make_matrix(std::initializer_list<std::initializer_list<long>> rows);

/*
 * Exact elimination kernel shared by rank / kernel_basis / determinant /
 * solve_square. Rows are first scaled to integer entries (lcm of the
 * denominators), then reduced by fraction-free Bareiss steps so every
 * intermediate entry is an integer minor of the scaled matrix. Pivoting is
 * first-nonzero (smallest row index), which keeps all results deterministic.
 */

/// Rank over the rationals.
Index rank(const RatMatrix& m);

/// Basis of ker(m), each vector scaled to co-prime integer entries with the
/// first nonzero entry positive; empty when the kernel is trivial.
std::vector<RatVector> kernel_basis(const RatMatrix& m);

/// Exact determinant. Throws DimensionError on non-square input.
Rational determinant(const RatMatrix& m);

/// Unique solution of m * x = rhs for square nonsingular m.
/// Throws DimensionError / SingularMatrixError.
RatVector solve_square(const RatMatrix& m, const RatVector& rhs);

/// Like solve_square but reports a singular matrix as absence of a value.
std::optional<RatVector> try_solve_square(const RatMatrix& m, const RatVector& rhs);

Rational norm1(const RatVector& v);
bool is_zero(const RatVector& v);
bool is_integral(const RatVector& v);
bool is_integral(const RatMatrix& m);

/// Scales a nonzero vector to co-prime integer entries, preserving orientation.
RatVector to_coprime_integer(const RatVector& v);

/// to_coprime_integer followed by a sign flip making the first nonzero entry
/// positive; the canonical representative of {v, -v}.
RatVector canonical_direction(const RatVector& v);

bool lex_less(const RatVector& a, const RatVector& b);

struct LexLess {
    bool operator()(const RatVector& a, const RatVector& b) const { return lex_less(a, b); }
};

RatMatrix stack_rows(const RatMatrix& top, const RatMatrix& bottom);
RatMatrix select_rows(const RatMatrix& m, const std::vector<Index>& rows);
RatVector select_entries(const RatVector& v, const std::vector<Index>& rows);

/// Visits every k-element subset of {0, ..., n-1} in lexicographic order.
void for_each_subset(Index n, Index k, const std::function<void(const std::vector<Index>&)>& fn);

}  // namespace circa
