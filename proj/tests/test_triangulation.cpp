#include "skelet/triangulation.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <map>
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

RatVec rv(std::initializer_list<Rat> xs) { return RatVec(xs); }

LatticePolytope twodex() {
    return LatticePolytope::from_points(2, {{1, 0}, {0, 1}, {-1, -1}, {0, 0}});
}

// the unique star triangulation of the twodex triangle
StarTriangulation twodex_star() {
    std::vector<IntVec> verts = {{0, 0}, {1, 0}, {0, 1}, {-1, -1}};
    return StarTriangulation::from_simplices(twodex(), verts, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}});
}

LatticePolytope quadric() {
    return LatticePolytope::from_points(3, {{0, 0, 0}, {2, 0, 0}, {0, 2, 0}, {0, 0, 2}});
}

LatticePolytope conic() {
    return LatticePolytope::from_points(2, {{0, 0}, {2, 0}, {0, 2}});
}

// two nested twisted triangles, coned over the origin: the classical
// non-regular pinwheel, realized as a star triangulation in rank 3
StarTriangulation pinwheel() {
    std::vector<IntVec> verts = {{0, 0, 0},  {4, 0, 1}, {0, 4, 1}, {0, 0, 1},
                                 {2, 1, 1},  {1, 2, 1}, {1, 1, 1}};
    // outer 1,2,3; inner 4,5,6 with 4 opposite edge 12, 5 opposite 23, 6 opposite 31
    std::vector<std::vector<size_t>> tops = {{1, 2, 4}, {2, 3, 5}, {3, 1, 6},
                                             {2, 4, 5}, {3, 5, 6}, {1, 6, 4},
                                             {4, 5, 6}};
    auto pts = std::vector<IntVec>(verts.begin() + 1, verts.end());
    pts.push_back({0, 0, 0});
    auto poly = LatticePolytope::from_points(3, pts);
    std::vector<std::vector<size_t>> cells;
    for (auto t : tops) {
        t.push_back(0);
        cells.push_back(t);
    }
    return StarTriangulation::from_simplices(poly, verts, cells);
}

size_t count_dim(const StarTriangulation& t, const std::vector<size_t>& ids, size_t dim) {
    size_t c = 0;
    for (size_t s : ids)
        if (t.simplices()[s].dim == dim) ++c;
    return c;
}

std::vector<size_t> ids_of(const StarTriangulation& t, const std::vector<IntVec>& pts) {
    std::vector<size_t> ids;
    for (const auto& p : pts)
        for (size_t i = 0; i < t.vertices().size(); ++i)
            if (t.vertices()[i] == p) ids.push_back(i);
    std::sort(ids.begin(), ids.end());
    return ids;
}

}  // namespace

TEST_CASE("star triangulations validate", "[triangulation]") {
    SECTION("reflexive tetrahedron, unique star triangulation") {
        std::vector<IntVec> verts = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}};
        auto poly = LatticePolytope::from_points(
            3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}, {0, 0, 0}});
        auto t = StarTriangulation::from_simplices(
            poly, verts, {{0, 1, 2, 3}, {0, 1, 2, 4}, {0, 1, 3, 4}, {0, 2, 3, 4}});
        auto rep = t.validate();
        CHECK(rep.maximal_cells == 4);
        CHECK(rep.covered_volume == 4);
        CHECK(rep.origin_interior);
        CHECK(rep.boundary_simplices == 14);
        CHECK(count_dim(t, t.boundary_part(), 0) == 4);
        CHECK(count_dim(t, t.boundary_part(), 1) == 6);
        CHECK(count_dim(t, t.boundary_part(), 2) == 4);
        CHECK(t.boundary_maximal().size() == 4);
    }
    SECTION("quadric with a single boundary simplex") {
        std::vector<IntVec> verts = {{0, 0, 0}, {2, 0, 0}, {0, 2, 0}, {0, 0, 2}};
        auto t = StarTriangulation::from_simplices(quadric(), verts, {{0, 1, 2, 3}});
        auto rep = t.validate();
        CHECK(rep.maximal_cells == 1);
        CHECK(rep.covered_volume == 8);
        CHECK_FALSE(rep.origin_interior);
        CHECK(rep.boundary_simplices == 7);
    }
    SECTION("overlapping cells are rejected") {
        std::vector<IntVec> verts = {{0, 0}, {2, 0}, {0, 2}, {1, 1}};
        auto t = StarTriangulation::from_simplices(conic(), verts, {{0, 1, 2}, {0, 1, 3}});
        CHECK(thrown_code([&] { t.validate(); }) == ErrorCode::GapOrOverlap);
    }
    SECTION("a gap is caught by the volume census") {
        std::vector<IntVec> verts = {{0, 0}, {2, 0}, {1, 1}};
        auto t = StarTriangulation::from_simplices(conic(), verts, {{0, 1, 2}});
        CHECK(thrown_code([&] { t.validate(); }) == ErrorCode::GapOrOverlap);
    }
    SECTION("cell base must lie in a boundary facet") {
        auto poly = LatticePolytope::from_points(
            2, {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}, {0, 0}});
        std::vector<IntVec> verts = {{0, 0}, {1, 0}, {0, 1}};
        auto t = StarTriangulation::from_simplices(poly, verts, {{0, 1, 2}});
        CHECK(thrown_code([&] { t.validate(); }) == ErrorCode::NotStarShaped);
    }
    SECTION("cells not through the origin are rejected") {
        std::vector<IntVec> verts = {{0, 0}, {2, 0}, {0, 2}, {1, 0}};
        auto t = StarTriangulation::from_simplices(conic(), verts, {{1, 2, 3}});
        CHECK(thrown_code([&] { t.validate(); }) == ErrorCode::NotStarShaped);
    }
    SECTION("structural rejects at construction") {
        std::vector<IntVec> verts = {{1, 0}, {0, 1}, {-1, -1}};
        CHECK(thrown_code([&] { StarTriangulation::from_simplices(twodex(), verts, {{0, 1, 2}}); }) ==
              ErrorCode::OriginMissing);
        std::vector<IntVec> collinear = {{0, 0}, {1, 0}, {2, 0}};
        CHECK(thrown_code([&] { StarTriangulation::from_simplices(conic(), collinear, {{0, 1, 2}}); }) ==
              ErrorCode::NotSimplicial);
        std::vector<IntVec> outside = {{0, 0}, {3, 0}, {0, 2}};
        CHECK(thrown_code([&] { StarTriangulation::from_simplices(conic(), outside, {{0, 1, 2}}); }) ==
              ErrorCode::AssumptionViolation);
    }
}

TEST_CASE("incidence signs square to zero", "[triangulation]") {
    auto t = pinwheel();
    t.validate();
    for (size_t m : t.maximal_cells()) {
        std::map<size_t, int> twice;
        for (auto [f, sf] : t.boundary_facets(m))
            for (auto [g, sg] : t.boundary_facets(f)) twice[g] += sf * sg;
        for (auto [g, total] : twice) CHECK(total == 0);
    }
}

TEST_CASE("carrier simplices", "[triangulation]") {
    auto t = twodex_star();
    t.validate();

    size_t edge = t.carrier_simplex(rv({Rat(1, 2), Rat(1, 2)}));
    CHECK(t.simplices()[edge].vertex_ids == ids_of(t, {{1, 0}, {0, 1}}));
    CHECK(t.simplices()[edge].dim == 1);

    size_t vert = t.carrier_simplex(rv({1, 0}));
    CHECK(t.simplices()[vert].vertex_ids == ids_of(t, {{1, 0}}));

    // interior points have a carrier cell but no boundary carrier
    RatVec inner = rv({Rat(-1, 4), Rat(-1, 4)});
    CHECK(thrown_code([&] { t.carrier_simplex(inner); }) == ErrorCode::PointOutsideSupport);
    size_t cell = t.carrier_cell(inner);
    CHECK(t.simplices()[cell].vertex_ids == ids_of(t, {{0, 0}, {-1, -1}}));

    CHECK(thrown_code([&] { t.carrier_simplex(rv({5, 5})); }) == ErrorCode::PointOutsideSupport);
}

TEST_CASE("regularity of the twodex triangle", "[triangulation][regularity]") {
    auto t = twodex_star();
    auto res = check_regularity(t);
    REQUIRE(res.regular());
    CHECK(verify_certificate(t, *res.certificate));
    // one wall per boundary vertex plus one bound per height
    CHECK(res.system.lhs.rows() == 6);

    // unit heights certify with the exact global margin
    HeightCertificate ones;
    ones.values = {0, 1, 1, 1};
    ones.margin = 3;
    CHECK(verify_certificate(t, ones));
    ones.margin = 4;
    CHECK_FALSE(verify_certificate(t, ones));
    ones.margin = 3;
    ones.values = {0, 1, -1, 1};
    CHECK_FALSE(verify_certificate(t, ones));
}

TEST_CASE("one-cell triangulation is regular with a linear lift", "[triangulation][regularity]") {
    std::vector<IntVec> verts = {{0, 0}, {2, 0}, {0, 2}};
    auto t = StarTriangulation::from_simplices(conic(), verts, {{0, 1, 2}});
    auto res = check_regularity(t);
    REQUIRE(res.regular());
    CHECK(res.certificate->values == std::vector<Int>{0, 0, 0});
    CHECK(res.certificate->margin == 1);
    CHECK(verify_certificate(t, *res.certificate));
}

TEST_CASE("the pinwheel is not regular", "[triangulation][regularity]") {
    auto t = pinwheel();
    auto rep = t.validate();
    CHECK(rep.maximal_cells == 7);
    CHECK(rep.covered_volume == 16);

    auto res = check_regularity(t);
    REQUIRE_FALSE(res.regular());
    REQUIRE(res.farkas.has_value());
    CHECK(farkas_valid(res.system.lhs, res.system.rhs, *res.farkas));

    // the witness is load-bearing: perturbing it breaks the recheck
    RatVec bent = *res.farkas;
    bool broke_one = false;
    for (size_t i = 0; i < bent.size() && !broke_one; ++i) {
        if (bent[i] == 0) continue;
        RatVec w = bent;
        w[i] = 0;
        broke_one = !farkas_valid(res.system.lhs, res.system.rhs, w);
    }
    CHECK(broke_one);
}

TEST_CASE("regularity is a unimodular invariant", "[triangulation][regularity]") {
    IntMat u = {{1, 1, 0}, {0, 1, 0}, {1, 0, 1}};  // det 1

    auto image = [&](const StarTriangulation& t) {
        std::vector<IntVec> verts;
        for (const auto& v : t.vertices()) verts.push_back(u.apply(v));
        std::vector<IntVec> pts = verts;
        std::vector<std::vector<size_t>> cells;
        for (size_t m : t.maximal_cells()) cells.push_back(t.simplices()[m].vertex_ids);
        return StarTriangulation::from_simplices(
            LatticePolytope::from_points(3, pts), verts, cells);
    };

    auto pin = image(pinwheel());
    pin.validate();
    CHECK_FALSE(check_regularity(pin).regular());

    std::vector<IntVec> verts = {{0, 0, 0}, {2, 0, 0}, {0, 2, 0}, {0, 0, 2}};
    auto quad = image(StarTriangulation::from_simplices(quadric(), verts, {{0, 1, 2, 3}}));
    auto res = check_regularity(quad);
    REQUIRE(res.regular());
    CHECK(verify_certificate(quad, *res.certificate));
}

TEST_CASE("generation from heights", "[triangulation][generate]") {
    SECTION("zero heights on the quadric give the coarse triangulation") {
        std::vector<std::pair<IntVec, Rat>> h = {
            {{0, 0, 0}, 0}, {{2, 0, 0}, 0}, {{0, 2, 0}, 0}, {{0, 0, 2}, 0},
            {{1, 1, 0}, 0}, {{1, 0, 1}, 0}, {{0, 1, 1}, 0}};
        auto t = generate_star_triangulation(quadric(), h);
        CHECK(t.maximal_cells().size() == 1);
        CHECK(t.vertices().size() == 4);
        CHECK(t.dropped_points().size() == 3);
        for (const auto& [p, why] : t.dropped_points())
            CHECK(why == "absorbed into a lower hull cell");
        auto res = check_regularity(t);
        REQUIRE(res.regular());
        CHECK(verify_certificate(t, *res.certificate));
    }
    SECTION("midpoints below the outer vertices give the four-triangle subdivision") {
        std::vector<std::pair<IntVec, Rat>> h = {
            {{0, 0, 0}, 0}, {{2, 0, 0}, 2}, {{0, 2, 0}, 2}, {{0, 0, 2}, 2},
            {{1, 1, 0}, 1}, {{1, 0, 1}, 1}, {{0, 1, 1}, 1}};
        auto t = generate_star_triangulation(quadric(), h);
        CHECK(t.maximal_cells().size() == 4);
        CHECK(t.vertices().size() == 7);
        CHECK(t.dropped_points().empty());
        CHECK(t.boundary_maximal().size() == 4);
        // the inner triangle is one of the boundary cells
        auto inner = ids_of(t, {{1, 1, 0}, {1, 0, 1}, {0, 1, 1}});
        size_t inner_id = t.simplex_id(inner);
        auto tops = t.boundary_maximal();
        CHECK(std::count(tops.begin(), tops.end(), inner_id) == 1);
        auto res = check_regularity(t);
        REQUIRE(res.regular());
        CHECK(verify_certificate(t, *res.certificate));
    }
    SECTION("squared-norm heights on the conic give the fine boundary triangulation") {
        std::vector<IntVec> pts = {{0, 0}, {1, 0}, {2, 0}, {0, 1}, {0, 2}, {1, 1}};
        auto t = generate_star_triangulation(conic(), pts, "squared-norm");
        REQUIRE(t.maximal_cells().size() == 2);
        std::set<std::vector<size_t>> cells;
        for (size_t m : t.maximal_cells()) cells.insert(t.simplices()[m].vertex_ids);
        std::set<std::vector<size_t>> expect = {
            ids_of(t, {{0, 0}, {2, 0}, {1, 1}}), ids_of(t, {{0, 0}, {1, 1}, {0, 2}})};
        CHECK(cells == expect);
        CHECK(t.dropped_points().size() == 2);  // (1,0) and (0,1) sit on facets through 0
        auto res = check_regularity(t);
        REQUIRE(res.regular());
        CHECK(verify_certificate(t, *res.certificate));
    }
    SECTION("the twodex triangulation is unique, whatever the heights") {
        std::vector<IntVec> pts = {{0, 0}, {1, 0}, {0, 1}, {-1, -1}};
        auto a = generate_star_triangulation(twodex(), pts, "squared-norm");
        auto b = generate_star_triangulation(twodex(), pts, "random", 7);
        REQUIRE(a.maximal_cells().size() == 3);
        std::set<std::vector<size_t>> ca, cb;
        for (size_t m : a.maximal_cells()) ca.insert(a.simplices()[m].vertex_ids);
        for (size_t m : b.maximal_cells()) cb.insert(b.simplices()[m].vertex_ids);
        CHECK(ca == cb);
    }
    SECTION("prerequisites") {
        std::vector<std::pair<IntVec, Rat>> missing = {{{0, 0}, 0}, {{2, 0}, 1}};
        CHECK(thrown_code([&] { generate_star_triangulation(conic(), missing); }) == ErrorCode::AssumptionViolation);
        std::vector<std::pair<IntVec, Rat>> no_origin = {{{2, 0}, 1}, {{0, 2}, 1}};
        CHECK(thrown_code([&] { generate_star_triangulation(conic(), no_origin); }) == ErrorCode::OriginMissing);
        auto shifted = LatticePolytope::from_points(2, {{1, 1}, {2, 1}, {1, 2}});
        std::vector<std::pair<IntVec, Rat>> hs = {{{1, 1}, 0}, {{2, 1}, 0}, {{1, 2}, 0}};
        CHECK(thrown_code([&] { generate_star_triangulation(shifted, hs); }) == ErrorCode::OriginMissing);
    }
}

TEST_CASE("tied heights on the cube pull to a regular triangulation", "[triangulation][generate]") {
    std::vector<IntVec> corners;
    for (int x = 0; x <= 1; ++x)
        for (int y = 0; y <= 1; ++y)
            for (int z = 0; z <= 1; ++z) corners.push_back({x, y, z});
    auto cube = LatticePolytope::from_points(3, corners);
    std::vector<std::pair<IntVec, Rat>> flat;
    for (const auto& c : corners) flat.emplace_back(c, 0);

    CHECK(thrown_code([&] { generate_star_triangulation(cube, flat, false); }) == ErrorCode::DegenerateHeights);

    auto t = generate_star_triangulation(cube, flat);
    auto rep = t.validate();
    CHECK(rep.maximal_cells == 6);
    CHECK(rep.covered_volume == 6);
    CHECK_FALSE(rep.origin_interior);
    auto res = check_regularity(t);
    REQUIRE(res.regular());
    CHECK(verify_certificate(t, *res.certificate));
}

TEST_CASE("random heights round-trip through the regularity check", "[triangulation][generate]") {
    auto poly = quadric();
    auto pts = poly.lattice_points();
    for (unsigned long seed = 1; seed <= 5; ++seed) {
        auto t = generate_star_triangulation(poly, pts, "random", seed);
        auto rep = t.validate();
        CHECK(rep.covered_volume == 8);
        auto res = check_regularity(t);
        REQUIRE(res.regular());
        CHECK(verify_certificate(t, *res.certificate));
    }
}
