#include <doctest.h>

#include <random>

#include "circa/errors.hpp"
#include "circa/linalg.hpp"

using namespace circa;

namespace {

// Independent oracle: determinant by cofactor expansion along the first row.
Rational cofactor_det(const RatMatrix& m) {
    const Index n = m.rows();
    if (n == 0) {
        return Rational(1);
    }
    if (n == 1) {
        return m(0, 0);
    }
    Rational sum(0);
    int sign = 1;
    for (Index j = 0; j < n; ++j) {
        RatMatrix minor(n - 1, n - 1);
        for (Index r = 1; r < n; ++r) {
            Index cc = 0;
            for (Index c = 0; c < n; ++c) {
                if (c != j) {
                    minor(r - 1, cc++) = m(r, c);
                }
            }
        }
        sum += sign * m(0, j) * cofactor_det(minor);
        sign = -sign;
    }
    return sum;
}

long draw(std::mt19937_64& rng, long lo, long hi) {
    return lo + static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1));
}

}  // namespace

TEST_CASE("rank on hand cases") {
    CHECK(rank(make_matrix({{1, 0}, {0, 1}})) == 2);
    CHECK(rank(RatMatrix::Zero(3, 3)) == 0);
    // node-edge incidence of a triangle has full rank 3
    CHECK(rank(make_matrix({{1, 1, 0}, {1, 0, 1}, {0, 1, 1}})) == 3);
    CHECK(rank(make_matrix({{1, 2, 3}, {2, 4, 6}})) == 1);
    CHECK(rank(RatMatrix(0, 4)) == 0);
}

TEST_CASE("kernel_basis returns co-prime integer generators") {
    const auto sym = kernel_basis(make_matrix({{1, 1}}));
    REQUIRE(sym.size() == 1);
    CHECK(sym[0] == make_vector({1, -1}));

    CHECK(kernel_basis(make_matrix({{1, 0}, {0, 1}})).empty());

    const RatMatrix m = make_matrix({{1, 2, 3}});
    const auto basis = kernel_basis(m);
    REQUIRE(basis.size() == 2);
    for (const auto& v : basis) {
        CHECK(is_integral(v));
        CHECK(is_zero(m * v));
        CHECK(v == canonical_direction(v));
    }
    CHECK(rank(make_matrix({{1, 2, 3}})) + 2 == 3);
}

TEST_CASE("kernel vectors always satisfy m * v = 0 on random matrices") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        const Index rows = draw(rng, 1, 4);
        const Index cols = draw(rng, 1, 5);
        RatMatrix m(rows, cols);
        for (Index i = 0; i < rows; ++i) {
            for (Index j = 0; j < cols; ++j) {
                m(i, j) = rat(draw(rng, -3, 3), draw(rng, 1, 2));
            }
        }
        const auto basis = kernel_basis(m);
        CHECK(static_cast<Index>(basis.size()) == cols - rank(m));
        RatMatrix stacked(rows + 1, cols);
        for (const auto& v : basis) {
            CHECK(is_zero(m * v));
            CHECK(is_integral(v));
        }
    }
}

TEST_CASE("determinant on hand cases") {
    CHECK(determinant(make_matrix({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})) == 1);
    CHECK(determinant(make_matrix({{1, 2}, {3, 4}})) == -2);
    CHECK(determinant(make_matrix({{1, 2}, {1, 2}})) == 0);
    CHECK(determinant(RatMatrix(0, 0)) == 1);
    CHECK_THROWS_AS(determinant(RatMatrix(2, 3)), DimensionError);
}

TEST_CASE("determinant agrees with cofactor expansion up to n = 5") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        const Index n = draw(rng, 1, 5);
        RatMatrix m(n, n);
        for (Index i = 0; i < n; ++i) {
            for (Index j = 0; j < n; ++j) {
                m(i, j) = rat(draw(rng, -4, 4), draw(rng, 1, 3));
            }
        }
        CHECK(determinant(m) == cofactor_det(m));
    }
}

TEST_CASE("solve_square on hand cases") {
    const RatVector rhs = make_vector({5, -3});
    CHECK(solve_square(make_matrix({{1, 0}, {0, 1}}), rhs) == rhs);

    const RatVector x = solve_square(make_matrix({{2, 0}, {0, 4}}), make_vector({1, 1}));
    CHECK(x(0) == rat(1, 2));
    CHECK(x(1) == rat(1, 4));

    CHECK_THROWS_AS(solve_square(make_matrix({{1, 1}, {2, 2}}), make_vector({1, 1})),
                    SingularMatrixError);
    CHECK_THROWS_AS(solve_square(RatMatrix(2, 3), make_vector({1, 1})), DimensionError);
}

TEST_CASE("solve_square recovers a known solution on random systems") {
    std::mt19937_64 rng(13);
    int solved = 0;
    while (solved < 25) {
        const Index n = draw(rng, 1, 4);
        RatMatrix m(n, n);
        for (Index i = 0; i < n; ++i) {
            for (Index j = 0; j < n; ++j) {
                m(i, j) = Rational(draw(rng, -5, 5));
            }
        }
        if (determinant(m) == 0) {
            continue;
        }
        RatVector expected(n);
        for (Index i = 0; i < n; ++i) {
            expected(i) = rat(draw(rng, -6, 6), draw(rng, 1, 3));
        }
        CHECK(solve_square(m, m * expected) == expected);
        ++solved;
    }
}

TEST_CASE("substituting results back gives zero residual") {
    // the 3x3 construction from the rank case, solved against a known image
    const RatMatrix m = make_matrix({{1, 1, 0}, {1, 0, 1}, {0, 1, 1}});
    const RatVector expected = make_vector({1, 2, 3});
    const RatVector solution = solve_square(m, m * expected);
    CHECK(is_zero(m * solution - m * expected));
}

TEST_CASE("co-prime scaling and canonical direction") {
    RatVector v(3);
    v << rat(1, 2), rat(-1, 3), Rational(0);
    const RatVector w = to_coprime_integer(v);
    CHECK(w == make_vector({3, -2, 0}));
    CHECK(canonical_direction(-v) == make_vector({3, -2, 0}));
    CHECK(canonical_direction(v) == make_vector({3, -2, 0}));
    CHECK(to_coprime_integer(make_vector({-2, -4})) == make_vector({-1, -2}));
    CHECK_THROWS_AS(to_coprime_integer(RatVector::Zero(2)), PreconditionError);
    CHECK(norm1(v) == rat(5, 6));
    CHECK(lex_less(make_vector({0, 1}), make_vector({1, 0})));
    CHECK_FALSE(lex_less(make_vector({1, 0}), make_vector({0, 1})));
}

TEST_CASE("for_each_subset visits lexicographically") {
    std::vector<std::vector<Index>> seen;
    for_each_subset(4, 2, [&](const std::vector<Index>& s) { seen.push_back(s); });
    REQUIRE(seen.size() == 6);
    CHECK(seen.front() == std::vector<Index>{0, 1});
    CHECK(seen.back() == std::vector<Index>{2, 3});
    int count = 0;
    for_each_subset(3, 0, [&](const std::vector<Index>& s) {
        CHECK(s.empty());
        ++count;
    });
    CHECK(count == 1);
}
