#include "skelet/fiber.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <set>

using namespace skelet;

namespace {

template <typename F>
std::optional<ErrorCode> thrown_code(F&& f) {
    try {
        std::forward<F>(f)();
    } catch (const Error& e) {
        return e.code();
    }
    return std::nullopt;
}

StarTriangulation quadric_star() {
    auto poly = LatticePolytope::from_points(3, {{0, 0, 0}, {2, 0, 0}, {0, 2, 0}, {0, 0, 2}});
    std::vector<IntVec> verts = {{0, 0, 0}, {2, 0, 0}, {0, 2, 0}, {0, 0, 2}};
    return StarTriangulation::from_simplices(poly, verts, {{0, 1, 2, 3}});
}

StarTriangulation twodex_star() {
    auto poly = LatticePolytope::from_points(2, {{1, 0}, {0, 1}, {-1, -1}, {0, 0}});
    std::vector<IntVec> verts = {{0, 0}, {1, 0}, {0, 1}, {-1, -1}};
    return StarTriangulation::from_simplices(poly, verts, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}});
}

LatticePolytope conic() {
    return LatticePolytope::from_points(2, {{0, 0}, {2, 0}, {0, 2}});
}

StarTriangulation conic_coarse() {
    std::vector<IntVec> verts = {{0, 0}, {2, 0}, {0, 2}};
    return StarTriangulation::from_simplices(conic(), verts, {{0, 1, 2}});
}

StarTriangulation conic_fine() {
    std::vector<IntVec> verts = {{0, 0}, {2, 0}, {1, 1}, {0, 2}};
    return StarTriangulation::from_simplices(conic(), verts, {{0, 1, 2}, {0, 2, 3}});
}

size_t by_verts(const StarTriangulation& t, const std::vector<IntVec>& pts) {
    std::vector<size_t> ids;
    for (const auto& p : pts)
        for (size_t i = 0; i < t.vertices().size(); ++i)
            if (t.vertices()[i] == p) ids.push_back(i);
    std::sort(ids.begin(), ids.end());
    return t.simplex_id(ids);
}

RatVec rv(std::initializer_list<Rat> xs) { return RatVec(xs); }

RationalCone quadrant() {
    return RationalCone::from_generators(2, {{1, 0}, {0, 1}});
}

RationalCone octant() {
    return RationalCone::from_generators(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
}

}  // namespace

TEST_CASE("fiber groups of the quadric boundary", "[fiber]") {
    auto t = quadric_star();
    t.validate();

    auto vert = fiber_group(t, by_verts(t, {{2, 0, 0}}));
    CHECK(vert.torus_rank == 2);
    CHECK(vert.components.invariant_factors == std::vector<Int>{2});
    REQUIRE(vert.component_count() == 2);
    CHECK(vert.coset_reps[0] == rv({0, 0, 0}));
    CHECK(vert.coset_reps[1] == rv({Rat(1, 2), 0, 0}));

    auto edge = fiber_group(t, by_verts(t, {{2, 0, 0}, {0, 2, 0}}));
    CHECK(edge.torus_rank == 1);
    CHECK(edge.components.invariant_factors == std::vector<Int>{2, 2});
    REQUIRE(edge.component_count() == 4);
    CHECK(edge.coset_reps[1] == rv({0, Rat(1, 2), 0}));
    CHECK(edge.coset_reps[3] == rv({Rat(1, 2), Rat(1, 2), 0}));

    auto facet = fiber_group(t, by_verts(t, {{2, 0, 0}, {0, 2, 0}, {0, 0, 2}}));
    CHECK(facet.torus_rank == 0);
    CHECK(facet.components.order() == 8);
    CHECK(facet.components.invariant_factors == std::vector<Int>{2, 2, 2});
    // for a full-rank simplex the component count is the vertex determinant
    IntMat m = {{2, 0, 0}, {0, 2, 0}, {0, 0, 2}};
    CHECK(facet.components.order() == int_det(m));

    // representatives are honest members: every label is distinct and every
    // rep reduces to itself
    std::set<RatVec> reps(facet.coset_reps.begin(), facet.coset_reps.end());
    CHECK(reps.size() == 8);
    for (size_t i = 0; i < facet.component_count(); ++i)
        CHECK(facet.component_of(facet.coset_reps[i]) == i);
}

TEST_CASE("twodex boundary fibers are connected", "[fiber]") {
    auto t = twodex_star();
    t.validate();
    FiberTable table(t);
    Int top_total = 0;
    for (size_t id : t.boundary_part()) {
        const auto& g = table.at(id);
        CHECK(g.components.trivial());
        CHECK(g.component_count() == 1);
        CHECK(g.torus_rank + t.simplices()[id].dim == 1);
        if (t.simplices()[id].dim == 1) top_total += g.components.order();
    }
    // the component census over top boundary simplices carries the Euler
    // characteristic of the skeleton, here 3 up to sign
    CHECK(top_total == 3);
}

TEST_CASE("conic component reps and restriction maps", "[fiber]") {
    auto t = conic_fine();
    t.validate();

    size_t b = by_verts(t, {{2, 0}});
    size_t d = by_verts(t, {{1, 1}});
    size_t bd = by_verts(t, {{2, 0}, {1, 1}});

    auto gb = fiber_group(t, b);
    CHECK(gb.torus_rank == 1);
    REQUIRE(gb.component_count() == 2);
    CHECK(gb.coset_reps[1] == rv({Rat(1, 2), 0}));

    auto gd = fiber_group(t, d);
    CHECK(gd.torus_rank == 1);
    CHECK(gd.components.trivial());

    auto gbd = fiber_group(t, bd);
    CHECK(gbd.torus_rank == 0);
    REQUIRE(gbd.component_count() == 2);
    CHECK(gbd.coset_reps[1] == rv({Rat(1, 2), Rat(1, 2)}));

    auto to_b = restriction_map(t, bd, b);
    CHECK(to_b.image == std::vector<size_t>{0, 1});
    auto to_d = restriction_map(t, bd, d);
    CHECK(to_d.image == std::vector<size_t>{0, 0});
    auto self = restriction_map(t, bd, bd);
    CHECK(self.image == std::vector<size_t>{0, 1});
}

TEST_CASE("restriction is functorial", "[fiber]") {
    auto t = quadric_star();
    t.validate();
    FiberTable table(t);

    size_t facet = by_verts(t, {{2, 0, 0}, {0, 2, 0}, {0, 0, 2}});
    size_t edge = by_verts(t, {{2, 0, 0}, {0, 2, 0}});
    size_t vert = by_verts(t, {{2, 0, 0}});

    auto fe = table.restriction(facet, edge);
    auto ev = table.restriction(edge, vert);
    auto fv = table.restriction(facet, vert);
    for (size_t c = 0; c < table.at(facet).component_count(); ++c)
        CHECK(fv.image[c] == ev.image[fe.image[c]]);

    // restriction is a homomorphism
    const auto& gf = table.at(facet);
    const auto& ge = table.at(edge);
    for (size_t a = 0; a < gf.component_count(); ++a)
        for (size_t b = 0; b < gf.component_count(); ++b)
            CHECK(fe.image[gf.add(a, b)] == ge.add(fe.image[a], fe.image[b]));
}

TEST_CASE("component arithmetic", "[fiber]") {
    auto t = quadric_star();
    auto g = fiber_group(t, by_verts(t, {{2, 0, 0}, {0, 2, 0}}));
    REQUIRE(g.component_count() == 4);
    for (size_t a = 0; a < 4; ++a) {
        CHECK(g.add(a, 0) == a);
        CHECK(g.add(a, a) == 0);  // every element is 2-torsion
        for (size_t b = 0; b < 4; ++b) CHECK(g.add(a, b) == g.add(b, a));
    }
    CHECK(g.add(1, 2) == 3);

    // membership only constrains the residues, not the exact coordinates
    auto vg = fiber_group(t, by_verts(t, {{2, 0, 0}}));
    CHECK(vg.component_of(rv({Rat(1, 2), Rat(7, 3), Rat(5, 6)})) == 1);
    CHECK(vg.component_of(rv({1, Rat(1, 4), 0})) == 0);
}

TEST_CASE("fiber groups are only defined over the boundary", "[fiber]") {
    auto t = conic_coarse();
    t.validate();
    // the unique maximal cell contains the origin
    size_t cone_cell = t.maximal_cells().front();
    CHECK(thrown_code([&] { fiber_group(t, cone_cell); }) == ErrorCode::SimplexContainsOrigin);
    FiberTable table(t);
    CHECK(thrown_code([&] { table.at(cone_cell); }) == ErrorCode::SimplexContainsOrigin);

    size_t b = by_verts(t, {{2, 0}});
    size_t e = by_verts(t, {{0, 2}});
    CHECK(thrown_code([&] { restriction_map(t, b, e); }) == ErrorCode::NotAFace);
    CHECK(thrown_code([&] { table.restriction(b, e); }) == ErrorCode::NotAFace);
}

TEST_CASE("quotient fibers over cone faces", "[fiber][quotient]") {
    auto t = conic_coarse();
    t.validate();

    SECTION("a vertex on a ray keeps only the component group") {
        auto q = quotient_fiber_group(t, by_verts(t, {{2, 0}}), quadrant());
        CHECK(q.face_basis == IntMat{{1, 0}});
        CHECK(q.group.torus_rank == 0);
        CHECK(q.group.components.invariant_factors == std::vector<Int>{2});
        REQUIRE(q.group.component_count() == 2);
        CHECK(q.group.coset_reps[0] == rv({0}));
        CHECK(q.group.coset_reps[1] == rv({Rat(1, 2)}));
    }
    SECTION("a simplex through the interior keeps the whole fiber") {
        size_t be = by_verts(t, {{2, 0}, {0, 2}});
        auto q = quotient_fiber_group(t, be, quadrant());
        auto g = fiber_group(t, be);
        CHECK(q.face_basis.rows() == 2);
        CHECK(q.group.torus_rank == g.torus_rank);
        CHECK(q.group.components == g.components);
        CHECK(q.group.component_count() == g.component_count());
    }
    SECTION("a quadric edge in a coordinate face") {
        auto s = quadric_star();
        auto q = quotient_fiber_group(s, by_verts(s, {{2, 0, 0}, {0, 2, 0}}), octant());
        CHECK(q.face_basis.rows() == 2);
        CHECK(q.group.torus_rank == 0);
        CHECK(q.group.components.invariant_factors == std::vector<Int>{2, 2});
    }
}

TEST_CASE("ambient cone preconditions", "[fiber][assumptions]") {
    auto t = conic_coarse();
    t.validate();

    SECTION("smooth cones pass") {
        check_cone_assumptions(t, quadrant());
        check_cone_assumptions(quadric_star(), octant());
    }
    SECTION("an isolated singularity passes") {
        std::vector<IntVec> verts = {{0, 0}, {1, 1}, {1, -1}};
        auto poly = LatticePolytope::from_points(2, {{0, 0}, {1, 1}, {1, -1}});
        auto s = StarTriangulation::from_simplices(poly, verts, {{0, 1, 2}});
        auto k = RationalCone::from_generators(2, {{1, 1}, {1, -1}});
        check_cone_assumptions(s, k);

        auto q = quotient_fiber_group(s, by_verts(s, {{1, 1}}), k);
        CHECK(q.group.components.trivial());
        CHECK(q.group.torus_rank == 0);
    }
    SECTION("invertible directions pass when the quotient is smooth") {
        std::vector<IntVec> verts = {{0, 0}, {1, 0}, {-1, 0}, {0, 1}};
        auto poly = LatticePolytope::from_points(2, {{1, 0}, {-1, 0}, {0, 1}, {0, 0}});
        auto s = StarTriangulation::from_simplices(poly, verts, {{0, 1, 3}, {0, 2, 3}});
        auto k = RationalCone::from_generators(2, {{1, 0}, {-1, 0}, {0, 1}});
        REQUIRE(k.lineality().rows() == 1);
        check_cone_assumptions(s, k);
    }
    SECTION("rank mismatch") {
        CHECK(thrown_code([&] { check_cone_assumptions(t, octant()); }) ==
              ErrorCode::AssumptionViolation);
    }
    SECTION("a polytope vertex outside the cone") {
        auto k = RationalCone::from_generators(2, {{1, 0}, {1, 2}});
        CHECK(thrown_code([&] { check_cone_assumptions(t, k); }) ==
              ErrorCode::AssumptionViolation);
    }
    SECTION("a cone strictly larger than the polytope generates") {
        auto k = RationalCone::from_generators(2, {{1, -1}, {0, 1}});
        CHECK(thrown_code([&] { check_cone_assumptions(t, k); }) ==
              ErrorCode::AssumptionViolation);
    }
    SECTION("a singular locus along a ray") {
        std::vector<IntVec> verts = {{0, 0, 0}, {1, 1, 0}, {1, -1, 0}, {0, 0, 1}};
        auto poly = LatticePolytope::from_points(
            3, {{0, 0, 0}, {1, 1, 0}, {1, -1, 0}, {0, 0, 1}});
        auto s = StarTriangulation::from_simplices(poly, verts, {{0, 1, 2, 3}});
        auto k = RationalCone::from_generators(3, {{1, 1, 0}, {1, -1, 0}, {0, 0, 1}});
        CHECK(thrown_code([&] { check_cone_assumptions(s, k); }) ==
              ErrorCode::AssumptionViolation);
    }
    SECTION("a singular cone with invertible directions") {
        std::vector<IntVec> verts = {{0, 0, 0}, {1, 1, 0}, {1, -1, 0}, {0, 0, 1}, {0, 0, -1}};
        auto poly = LatticePolytope::from_points(
            3, {{1, 1, 0}, {1, -1, 0}, {0, 0, 1}, {0, 0, -1}, {0, 0, 0}});
        auto s = StarTriangulation::from_simplices(
            poly, verts, {{0, 1, 2, 3}, {0, 1, 2, 4}});
        auto k = RationalCone::from_generators(
            3, {{1, 1, 0}, {1, -1, 0}, {0, 0, 1}, {0, 0, -1}});
        REQUIRE(k.lineality().rows() == 1);
        CHECK(thrown_code([&] { check_cone_assumptions(s, k); }) ==
              ErrorCode::AssumptionViolation);
    }
}

TEST_CASE("unimodular star cones have connected fibers", "[fiber]") {
    std::vector<IntVec> verts = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}};
    auto poly = LatticePolytope::from_points(
        3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}, {0, 0, 0}});
    auto t = StarTriangulation::from_simplices(
        poly, verts, {{0, 1, 2, 3}, {0, 1, 2, 4}, {0, 1, 3, 4}, {0, 2, 3, 4}});
    t.validate();
    FiberTable table(t);
    Int top_total = 0;
    for (size_t id : t.boundary_part()) {
        const auto& g = table.at(id);
        CHECK(g.components.trivial());
        CHECK(g.torus_rank == 2 - t.simplices()[id].dim);
        if (t.simplices()[id].dim == 2) top_total += g.components.order();
    }
    CHECK(top_total == 4);
}
