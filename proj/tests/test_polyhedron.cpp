#include <doctest.h>

#include <algorithm>

#include "circa/errors.hpp"
#include "circa/polyhedron.hpp"

using namespace circa;

namespace {

Polyhedron unit_square() {
    return Polyhedron(RatMatrix(0, 2), RatVector(0),
                      make_matrix({{-1, 0}, {0, -1}, {1, 0}, {0, 1}}), make_vector({0, 0, 1, 1}));
}

// Hexagon with vertices (0,0), (0,1), (1,0), (k,k-1), (k-1,k), (k,k).
Polyhedron spread_polygon(long k) {
    return Polyhedron(RatMatrix(0, 2), RatVector(0),
                      make_matrix({{-1, 0}, {0, -1}, {1, -1}, {-1, 1}, {1, 0}, {0, 1}}),
                      make_vector({0, 0, 1, 1, k, k}));
}

// Fractional matching polytope of a triangle, variables (x12, x13, x23).
Polyhedron triangle_fmat() {
    return Polyhedron(
        RatMatrix(0, 3), RatVector(0),
        make_matrix({{1, 1, 0}, {1, 0, 1}, {0, 1, 1}, {-1, 0, 0}, {0, -1, 0}, {0, 0, -1}}),
        make_vector({1, 1, 1, 0, 0, 0}));
}

RatVector half_vector() {
    RatVector x(3);
    x << rat(1, 2), rat(1, 2), rat(1, 2);
    return x;
}

}  // namespace

TEST_CASE("constructor validates the input system") {
    CHECK_THROWS_AS(Polyhedron(RatMatrix(0, 2), RatVector(0), RatMatrix(0, 2), RatVector(0)),
                    PreconditionError);
    RatMatrix b = make_matrix({{1, 0}, {0, 1}});
    b(0, 0) = rat(1, 2);
    CHECK_THROWS_AS(Polyhedron(RatMatrix(0, 2), RatVector(0), b, make_vector({1, 1})),
                    PreconditionError);
    // equality block with dependent rows
    CHECK_THROWS_AS(Polyhedron(make_matrix({{1, 1}, {2, 2}}), make_vector({1, 2}),
                               make_matrix({{1, 0}}), make_vector({1})),
                    PreconditionError);
    // stacked rank below n (only x1 is constrained)
    CHECK_THROWS_AS(Polyhedron(RatMatrix(0, 2), RatVector(0), make_matrix({{1, 0}, {-1, 0}}),
                               make_vector({1, 0})),
                    PreconditionError);
    CHECK_THROWS_AS(
        Polyhedron(RatMatrix(0, 2), RatVector(0), make_matrix({{1, 0}}), make_vector({1, 1})),
        DimensionError);
}

TEST_CASE("feasibility and tight sets") {
    const Polyhedron p = unit_square();
    CHECK(p.is_feasible(make_vector({0, 0})));
    CHECK_FALSE(p.is_feasible(make_vector({2, 0})));
    CHECK_THROWS_AS(p.is_feasible(make_vector({1, 1, 1})), DimensionError);

    CHECK(p.tight_set(make_vector({0, 0})) == std::vector<Index>{0, 1});
    RatVector mid(2);
    mid << rat(1, 2), rat(1, 2);
    CHECK(p.tight_set(mid).empty());
    CHECK_THROWS_AS(p.tight_set(make_vector({3, 3})), PreconditionError);

    const Polyhedron fmat = triangle_fmat();
    CHECK(fmat.is_feasible(half_vector()));
    CHECK(fmat.tight_set(half_vector()) == std::vector<Index>{0, 1, 2});
}

TEST_CASE("vertex recognition") {
    const Polyhedron p = unit_square();
    CHECK(p.is_vertex(make_vector({0, 0})));
    RatVector edge_mid(2);
    edge_mid << rat(1, 2), Rational(0);
    CHECK_FALSE(p.is_vertex(edge_mid));
    CHECK(triangle_fmat().is_vertex(half_vector()));
}

TEST_CASE("maximal steps") {
    const Polyhedron square = unit_square();
    auto step = square.maximal_step(make_vector({0, 0}), make_vector({1, 0}));
    REQUIRE(step.has_value());
    CHECK(*step == 1);

    const Polyhedron ray(RatMatrix(0, 1), RatVector(0), make_matrix({{-1}}), make_vector({0}));
    CHECK_FALSE(ray.maximal_step(make_vector({0}), make_vector({1})).has_value());

    const Polyhedron polygon = spread_polygon(3);
    auto diag = polygon.maximal_step(make_vector({0, 0}), make_vector({1, 1}));
    REQUIRE(diag.has_value());
    CHECK(*diag == 3);
    CHECK(polygon.is_feasible(make_vector({3, 3})));

    // walking outward from a tight row is rejected
    CHECK_THROWS_AS(square.maximal_step(make_vector({0, 0}), make_vector({-1, 0})),
                    PreconditionError);
    CHECK_THROWS_AS(square.maximal_step(make_vector({0, 0}), make_vector({0, 0})),
                    PreconditionError);
}

TEST_CASE("maximal step makes a new row tight") {
    const Polyhedron polygon = spread_polygon(4);
    const RatVector origin = make_vector({0, 0});
    for (const RatVector& dir :
         {make_vector({1, 0}), make_vector({0, 1}), make_vector({1, 1}), make_vector({2, 1})}) {
        const auto step = polygon.maximal_step(origin, dir);
        REQUIRE(step.has_value());
        const RatVector landed = origin + *step * dir;
        const auto before = polygon.tight_set(origin);
        const auto after = polygon.tight_set(landed);
        bool fresh = false;
        for (Index i : after) {
            if (std::find(before.begin(), before.end(), i) == before.end()) {
                fresh = true;
            }
        }
        CHECK(fresh);
    }
}

TEST_CASE("vertex enumeration matches hand lists") {
    const auto square_vertices = unit_square().enumerate_vertices();
    REQUIRE(square_vertices.size() == 4);
    CHECK(square_vertices[0] == make_vector({0, 0}));
    CHECK(square_vertices[1] == make_vector({0, 1}));
    CHECK(square_vertices[2] == make_vector({1, 0}));
    CHECK(square_vertices[3] == make_vector({1, 1}));

    const auto polygon_vertices = spread_polygon(3).enumerate_vertices();
    REQUIRE(polygon_vertices.size() == 6);
    CHECK(polygon_vertices[0] == make_vector({0, 0}));
    CHECK(polygon_vertices[1] == make_vector({0, 1}));
    CHECK(polygon_vertices[2] == make_vector({1, 0}));
    CHECK(polygon_vertices[3] == make_vector({2, 3}));
    CHECK(polygon_vertices[4] == make_vector({3, 2}));
    CHECK(polygon_vertices[5] == make_vector({3, 3}));

    const auto fmat_vertices = triangle_fmat().enumerate_vertices();
    REQUIRE(fmat_vertices.size() == 5);
    CHECK(fmat_vertices[0] == make_vector({0, 0, 0}));
    CHECK(fmat_vertices[1] == make_vector({0, 0, 1}));
    CHECK(fmat_vertices[2] == make_vector({0, 1, 0}));
    CHECK(fmat_vertices[3] == half_vector());
    CHECK(fmat_vertices[4] == make_vector({1, 0, 0}));
}

TEST_CASE("vertex enumeration is invariant under row permutation") {
    const Polyhedron permuted(RatMatrix(0, 2), RatVector(0),
                              make_matrix({{0, 1}, {1, 0}, {0, -1}, {-1, 0}}),
                              make_vector({1, 1, 0, 0}));
    const auto a = permuted.enumerate_vertices();
    const auto b = unit_square().enumerate_vertices();
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i] == b[i]);
    }
}

TEST_CASE("adjacency via common tight rank") {
    const Polyhedron square = unit_square();
    const auto adj = square.adjacent_vertices(make_vector({0, 0}));
    REQUIRE(adj.size() == 2);
    CHECK(adj[0] == make_vector({0, 1}));
    CHECK(adj[1] == make_vector({1, 0}));
    CHECK_THROWS_AS(square.adjacent_vertices(make_vector({1, 2})), PreconditionError);

    // the long diagonal of the polygon is not an edge
    const auto polygon_adj = spread_polygon(3).adjacent_vertices(make_vector({0, 0}));
    REQUIRE(polygon_adj.size() == 2);
    CHECK(polygon_adj[0] == make_vector({0, 1}));
    CHECK(polygon_adj[1] == make_vector({1, 0}));

    const auto fmat_adj = triangle_fmat().adjacent_vertices(make_vector({0, 0, 0}));
    REQUIRE(fmat_adj.size() == 3);
    CHECK(fmat_adj[0] == make_vector({0, 0, 1}));
    CHECK(fmat_adj[1] == make_vector({0, 1, 0}));
    CHECK(fmat_adj[2] == make_vector({1, 0, 0}));
}

TEST_CASE("boundedness") {
    CHECK(unit_square().is_bounded());
    CHECK(triangle_fmat().is_bounded());
    const Polyhedron quadrant(RatMatrix(0, 2), RatVector(0), make_matrix({{-1, 0}, {0, -1}}),
                              make_vector({0, 0}));
    CHECK_FALSE(quadrant.is_bounded());
}

TEST_CASE("subdeterminant statistics") {
    CHECK(unit_square().max_subdeterminant() == 1);
    CHECK(unit_square().max_augmented_subdeterminant() == 1);
    // hand scan of all 2x2 minors of the six polygon rows gives 1; adding the
    // right-hand side column raises the maximum to k + 1
    CHECK(spread_polygon(3).max_subdeterminant() == 1);
    CHECK(spread_polygon(3).max_augmented_subdeterminant() == 4);
    // odd-cycle incidence submatrix
    CHECK(triangle_fmat().max_subdeterminant() == 2);
    CHECK(triangle_fmat().max_subdeterminant() <=
          triangle_fmat().max_augmented_subdeterminant());
}

TEST_CASE("distance statistics") {
    const DistanceStats square = unit_square().distance_stats();
    CHECK(square.max_vertex_distance == 2);
    CHECK(square.min_vertex_facet_distance == 1);

    for (long k : {2L, 3L, 5L}) {
        const DistanceStats polygon = spread_polygon(k).distance_stats();
        CHECK(polygon.max_vertex_distance == 2 * k);
        CHECK(polygon.min_vertex_facet_distance == 1);
    }

    // hand LP: the barycenter vertex sits 1/2 away from each nonnegativity facet
    const DistanceStats fmat = triangle_fmat().distance_stats();
    CHECK(fmat.max_vertex_distance == 2);
    CHECK(fmat.min_vertex_facet_distance == rat(1, 2));

    const Polyhedron quadrant(RatMatrix(0, 2), RatVector(0), make_matrix({{-1, 0}, {0, -1}}),
                              make_vector({0, 0}));
    CHECK_THROWS_AS(quadrant.distance_stats(), PreconditionError);
}

TEST_CASE("0/1 polytopes have unit facet clearance and spread at most n") {
    RatMatrix rows(6, 3);
    rows.setZero();
    RatVector rhs(6);
    for (Index j = 0; j < 3; ++j) {
        rows(2 * j, j) = 1;
        rhs(2 * j) = 1;
        rows(2 * j + 1, j) = -1;
        rhs(2 * j + 1) = 0;
    }
    const Polyhedron cube(RatMatrix(0, 3), RatVector(0), rows, rhs);
    for (const auto& v : cube.enumerate_vertices()) {
        for (Index i = 0; i < 3; ++i) {
            CHECK((v(i) == 0 || v(i) == 1));
        }
    }
    const DistanceStats stats = cube.distance_stats();
    CHECK(stats.min_vertex_facet_distance >= 1);
    CHECK(stats.max_vertex_distance <= 3);
}
