#include <doctest.h>

#include <random>

#include "circa/errors.hpp"
#include "circa/lp.hpp"

using namespace circa;

namespace {

long draw(std::mt19937_64& rng, long lo, long hi) {
    return lo + static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1));
}

// Independent oracle pieces: plain division-based Gaussian elimination and
// exhaustive basic-solution enumeration.
std::optional<RatVector> gauss_solve(RatMatrix m, RatVector rhs) {
    const Index n = m.rows();
    for (Index c = 0; c < n; ++c) {
        Index p = -1;
        for (Index r = c; r < n && p < 0; ++r) {
            if (m(r, c) != 0) {
                p = r;
            }
        }
        if (p < 0) {
            return std::nullopt;
        }
        m.row(p).swap(m.row(c));
        std::swap(rhs(p), rhs(c));
        for (Index r = 0; r < n; ++r) {
            if (r == c || m(r, c) == 0) {
                continue;
            }
            const Rational f = m(r, c) / m(c, c);
            m.row(r) -= f * m.row(c);
            rhs(r) -= f * rhs(c);
        }
    }
    RatVector x(n);
    for (Index i = 0; i < n; ++i) {
        x(i) = rhs(i) / m(i, i);
    }
    return x;
}

struct BruteLp {
    bool feasible = false;
    Rational best_value{0};
};

BruteLp brute_force_lp(const LpProblem& p) {
    const Index n = p.objective.size();
    const Index me = p.eq_lhs.rows();
    const Index mi = p.ineq_lhs.rows();
    RatMatrix all(me + mi, n);
    RatVector rhs(me + mi);
    if (me > 0) {
        all.topRows(me) = p.eq_lhs;
        rhs.head(me) = p.eq_rhs;
    }
    all.bottomRows(mi) = p.ineq_lhs;
    rhs.tail(mi) = p.ineq_rhs;

    BruteLp result;
    std::vector<Index> pick(static_cast<std::size_t>(n));
    std::function<void(Index, Index)> rec = [&](Index start, Index chosen) {
        if (chosen == n) {
            RatMatrix m(n, n);
            RatVector b(n);
            for (Index i = 0; i < n; ++i) {
                m.row(i) = all.row(pick[static_cast<std::size_t>(i)]);
                b(i) = rhs(pick[static_cast<std::size_t>(i)]);
            }
            const auto x = gauss_solve(m, b);
            if (!x) {
                return;
            }
            for (Index i = 0; i < me; ++i) {
                if (p.eq_lhs.row(i).dot(*x) != p.eq_rhs(i)) {
                    return;
                }
            }
            for (Index i = 0; i < mi; ++i) {
                if (p.ineq_lhs.row(i).dot(*x) > p.ineq_rhs(i)) {
                    return;
                }
            }
            const Rational value = p.objective.dot(*x);
            if (!result.feasible || value > result.best_value) {
                result.best_value = value;
            }
            result.feasible = true;
            return;
        }
        for (Index r = start; r < all.rows(); ++r) {
            pick[static_cast<std::size_t>(chosen)] = r;
            rec(r + 1, chosen + 1);
        }
    };
    rec(0, 0);
    return result;
}

Index tight_rank(const LpProblem& p, const RatVector& x) {
    std::vector<Index> tight;
    for (Index i = 0; i < p.ineq_lhs.rows(); ++i) {
        if (p.ineq_lhs.row(i).dot(x) == p.ineq_rhs(i)) {
            tight.push_back(i);
        }
    }
    return rank(stack_rows(p.eq_lhs, select_rows(p.ineq_lhs, tight)));
}

}  // namespace

TEST_CASE("one-dimensional box") {
    LpProblem p;
    p.objective = make_vector({1});
    p.eq_lhs = RatMatrix(0, 1);
    p.eq_rhs = RatVector(0);
    p.ineq_lhs = make_matrix({{1}, {-1}});
    p.ineq_rhs = make_vector({1, 0});
    const LpResult res = lp_solve(p);
    REQUIRE(res.status == LpStatus::optimal);
    CHECK(res.value == 1);
    CHECK(res.point == make_vector({1}));
}

TEST_CASE("unbounded ray is detected") {
    LpProblem p;
    p.objective = make_vector({1});
    p.eq_lhs = RatMatrix(0, 1);
    p.eq_rhs = RatVector(0);
    p.ineq_lhs = make_matrix({{-1}});
    p.ineq_rhs = make_vector({0});
    CHECK(lp_solve(p).status == LpStatus::unbounded);
}

TEST_CASE("simplex on a segment lands on a vertex") {
    LpProblem p;
    p.objective = make_vector({-1, -1});
    p.eq_lhs = make_matrix({{1, 1}});
    p.eq_rhs = make_vector({1});
    p.ineq_lhs = make_matrix({{-1, 0}, {0, -1}});
    p.ineq_rhs = make_vector({0, 0});
    const LpResult res = lp_solve(p);
    REQUIRE(res.status == LpStatus::optimal);
    CHECK(res.value == -1);
    CHECK(tight_rank(p, res.point) == 2);
    const bool at_e1 = res.point == make_vector({1, 0});
    const bool at_e2 = res.point == make_vector({0, 1});
    CHECK((at_e1 || at_e2));
}

TEST_CASE("infeasible system") {
    LpProblem p;
    p.objective = make_vector({1});
    p.eq_lhs = RatMatrix(0, 1);
    p.eq_rhs = RatVector(0);
    p.ineq_lhs = make_matrix({{1}, {-1}});
    p.ineq_rhs = make_vector({-1, 0});  // x <= -1 and x >= 0
    CHECK(lp_solve(p).status == LpStatus::infeasible);
}

TEST_CASE("free variables reach negative optima") {
    LpProblem p;
    p.objective = make_vector({-1});
    p.eq_lhs = RatMatrix(0, 1);
    p.eq_rhs = RatVector(0);
    p.ineq_lhs = make_matrix({{-1}});
    p.ineq_rhs = make_vector({3});  // x >= -3
    const LpResult res = lp_solve(p);
    REQUIRE(res.status == LpStatus::optimal);
    CHECK(res.point == make_vector({-3}));
    CHECK(res.value == 3);
}

TEST_CASE("agrees with exhaustive vertex enumeration on random instances") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        const Index n = draw(rng, 1, 4);
        const Index extra = draw(rng, 0, 10 - 2 * static_cast<long>(n));
        LpProblem p;
        p.objective = RatVector(n);
        for (Index j = 0; j < n; ++j) {
            p.objective(j) = Rational(draw(rng, -4, 4));
        }
        const bool with_eq = n >= 2 && draw(rng, 0, 3) == 0;
        if (with_eq) {
            p.eq_lhs = RatMatrix(1, n);
            Rational sum(0);
            for (Index j = 0; j < n; ++j) {
                p.eq_lhs(0, j) = Rational(draw(rng, -2, 2));
                sum += p.eq_lhs(0, j);  // keep (1,...,1) on the hyperplane
            }
            p.eq_rhs = RatVector(1);
            p.eq_rhs(0) = sum;
            if (rank(p.eq_lhs) == 0) {
                p.eq_lhs = RatMatrix(0, n);
                p.eq_rhs = RatVector(0);
            }
        } else {
            p.eq_lhs = RatMatrix(0, n);
            p.eq_rhs = RatVector(0);
        }
        p.ineq_lhs = RatMatrix(2 * n + extra, n);
        p.ineq_lhs.setZero();
        p.ineq_rhs = RatVector(2 * n + extra);
        for (Index j = 0; j < n; ++j) {
            p.ineq_lhs(2 * j, j) = 1;
            p.ineq_rhs(2 * j) = 2;
            p.ineq_lhs(2 * j + 1, j) = -1;
            p.ineq_rhs(2 * j + 1) = 0;
        }
        for (Index k = 0; k < extra; ++k) {
            for (Index j = 0; j < n; ++j) {
                p.ineq_lhs(2 * n + k, j) = Rational(draw(rng, -2, 2));
            }
            p.ineq_rhs(2 * n + k) = Rational(draw(rng, -2, 6));
        }

        const BruteLp oracle = brute_force_lp(p);
        const LpResult res = lp_solve(p);
        if (!oracle.feasible) {
            CHECK(res.status == LpStatus::infeasible);
            continue;
        }
        REQUIRE(res.status == LpStatus::optimal);
        CHECK(res.value == oracle.best_value);
        CHECK(p.objective.dot(res.point) == res.value);
        // the box rows make the region pointed, so the point must be basic
        CHECK(tight_rank(p, res.point) == n);
    }
}
