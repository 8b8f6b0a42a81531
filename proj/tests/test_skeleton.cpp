#include "skelet/skeleton.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

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

StarTriangulation segment_star() {
    auto poly = LatticePolytope::from_points(1, {{-1}, {1}});
    std::vector<IntVec> verts = {{0}, {-1}, {1}};
    return StarTriangulation::from_simplices(poly, verts, {{0, 1}, {0, 2}});
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

LatticePolytope quadric() {
    return LatticePolytope::from_points(3, {{0, 0, 0}, {2, 0, 0}, {0, 2, 0}, {0, 0, 2}});
}

StarTriangulation quadric_coarse() {
    std::vector<IntVec> verts = {{0, 0, 0}, {2, 0, 0}, {0, 2, 0}, {0, 0, 2}};
    return StarTriangulation::from_simplices(quadric(), verts, {{0, 1, 2, 3}});
}

StarTriangulation quadric_midpoint() {
    std::vector<IntVec> verts = {{0, 0, 0}, {2, 0, 0}, {0, 2, 0}, {0, 0, 2},
                                 {1, 1, 0}, {1, 0, 1}, {0, 1, 1}};
    return StarTriangulation::from_simplices(
        quadric(), verts, {{0, 1, 4, 5}, {0, 2, 4, 6}, {0, 3, 5, 6}, {0, 4, 5, 6}});
}

StarTriangulation simplex3_star() {
    auto poly = LatticePolytope::from_points(
        3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}, {0, 0, 0}});
    std::vector<IntVec> verts = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}};
    return StarTriangulation::from_simplices(
        poly, verts, {{0, 1, 2, 3}, {0, 1, 2, 4}, {0, 1, 3, 4}, {0, 2, 3, 4}});
}

StarTriangulation octahedron_star() {
    std::vector<IntVec> pts = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
    auto poly = LatticePolytope::from_points(3, pts);
    std::vector<IntVec> verts = pts;
    verts.insert(verts.begin(), {0, 0, 0});
    std::vector<std::vector<size_t>> cells;
    for (size_t a : {1, 2})
        for (size_t b : {3, 4})
            for (size_t c : {5, 6}) cells.push_back({0, a, b, c});
    return StarTriangulation::from_simplices(poly, verts, cells);
}

StarTriangulation transformed(const StarTriangulation& t, const IntMat& u) {
    std::vector<IntVec> verts;
    for (const auto& v : t.vertices()) verts.push_back(u.apply(v));
    auto poly = LatticePolytope::from_points(t.polytope().ambient_rank(), verts);
    std::vector<std::vector<size_t>> maximal;
    for (size_t m : t.maximal_cells()) maximal.push_back(t.simplices()[m].vertex_ids);
    return StarTriangulation::from_simplices(poly, verts, maximal);
}

size_t by_verts(const StarTriangulation& t, const std::vector<IntVec>& pts) {
    std::vector<size_t> ids;
    for (const auto& p : pts)
        for (size_t i = 0; i < t.vertices().size(); ++i)
            if (t.vertices()[i] == p) ids.push_back(i);
    std::sort(ids.begin(), ids.end());
    return t.simplex_id(ids);
}

RationalCone quadrant() {
    return RationalCone::from_generators(2, {{1, 0}, {0, 1}});
}

RationalCone octant() {
    return RationalCone::from_generators(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
}

// reduced homology concentrated in the top degree, with no torsion
void check_wedge(const RationalCellComplex& c, size_t n) {
    auto h = homology(c.chain());
    REQUIRE(h.betti.size() <= n + 1);
    CHECK(h.torsion_free());
    if (n == 0) return;
    CHECK(h.betti[0] == 1);
    for (size_t k = 1; k + 1 < h.betti.size(); ++k) CHECK(h.betti[k] == 0);
}

}  // namespace

TEST_CASE("component complexes over the boundary part", "[skeleton]") {
    SECTION("twodex boundary is a circle of singletons") {
        auto t = twodex_star();
        auto h = build_hatted(t);
        CHECK(h.complex.f_vector() == std::vector<size_t>{3, 3});
        for (const auto& [s, n] : h.census) CHECK(n == 1);
        auto hom = homology(h.complex.chain());
        CHECK(hom.betti == std::vector<size_t>{1, 1});
        CHECK(hom.torsion_free());
    }

    SECTION("coarse quadric doubles into an octahedron sphere") {
        auto t = quadric_coarse();
        auto h = build_hatted(t);
        CHECK(h.complex.f_vector() == std::vector<size_t>{6, 12, 8});
        CHECK(h.complex.euler() == 2);
        CHECK(h.complex.is_regular());
        CHECK(h.census.at(by_verts(t, {{2, 0, 0}})) == 2);
        CHECK(h.census.at(by_verts(t, {{2, 0, 0}, {0, 2, 0}})) == 4);
        CHECK(h.census.at(by_verts(t, {{2, 0, 0}, {0, 2, 0}, {0, 0, 2}})) == 8);
        auto hom = homology(h.complex.chain());
        CHECK(hom.betti == std::vector<size_t>{1, 0, 1});
        CHECK(hom.torsion_free());
    }

    SECTION("midpoint quadric stays a sphere") {
        auto h = build_hatted(quadric_midpoint());
        CHECK(h.complex.f_vector() == std::vector<size_t>{9, 15, 8});
        auto hom = homology(h.complex.chain());
        CHECK(hom.betti == std::vector<size_t>{1, 0, 1});
    }

    SECTION("fine conic collapses to a tree") {
        auto h = build_hatted(conic_fine());
        CHECK(h.complex.f_vector() == std::vector<size_t>{5, 4});
        auto hom = homology(h.complex.chain());
        CHECK(hom.betti == std::vector<size_t>{1, 0});
    }
}

TEST_CASE("skeleton models", "[skeleton]") {
    SECTION("segment gives two points") {
        auto s = build_skeleton(segment_star());
        CHECK(s.complex.f_vector() == std::vector<size_t>{2});
        CHECK(homology(s.complex.chain()).betti == std::vector<size_t>{2});
    }

    SECTION("twodex") {
        auto s = build_skeleton(twodex_star());
        CHECK(s.complex.f_vector() == std::vector<size_t>{3, 6});
        CHECK(s.complex.euler() == -3);
        CHECK(homology(s.complex.chain()).betti == std::vector<size_t>{1, 4});
        CHECK(s.arrangement.classes.size() == 3);
    }

    SECTION("conic is independent of the subdivision") {
        auto fine = build_skeleton(conic_fine());
        CHECK(fine.complex.f_vector() == std::vector<size_t>{10, 14});
        CHECK(homology(fine.complex.chain()).betti == std::vector<size_t>{1, 5});

        auto coarse = build_skeleton(conic_coarse());
        CHECK(coarse.complex.f_vector() == std::vector<size_t>{8, 12});
        CHECK(homology(coarse.complex.chain()).betti == std::vector<size_t>{1, 5});
    }

    SECTION("coarse quadric") {
        auto t = quadric_coarse();
        auto s = build_skeleton(t);
        CHECK(s.complex.f_vector() == std::vector<size_t>{24, 72, 56});
        CHECK(s.complex.euler() == 8);
        CHECK(s.census.at(by_verts(t, {{2, 0, 0}})) == 32);
        CHECK(s.census.at(by_verts(t, {{2, 0, 0}, {0, 2, 0}})) == 16);
        CHECK(s.census.at(by_verts(t, {{2, 0, 0}, {0, 2, 0}, {0, 0, 2}})) == 8);
        auto hom = homology(s.complex.chain());
        CHECK(hom.betti[0] == 1);
        CHECK(hom.euler() == 8);
    }

    SECTION("reflexive simplex") {
        auto s = build_skeleton(simplex3_star());
        CHECK(s.complex.f_vector() == std::vector<size_t>{4, 18, 18});
        CHECK(s.complex.euler() == 4);
        CHECK(homology(s.complex.chain()).betti[0] == 1);
    }
}

TEST_CASE("euler censuses", "[skeleton]") {
    CHECK(euler_census(segment_star(), SkeletonKind::hatted) == 2);
    CHECK(euler_census(segment_star(), SkeletonKind::skeleton) == 2);
    CHECK(euler_census(twodex_star(), SkeletonKind::hatted) == 0);
    CHECK(euler_census(twodex_star(), SkeletonKind::skeleton) == -3);
    CHECK(euler_census(conic_fine(), SkeletonKind::hatted) == 1);
    CHECK(euler_census(conic_fine(), SkeletonKind::skeleton) == -4);
    CHECK(euler_census(conic_coarse(), SkeletonKind::skeleton) == -4);
    CHECK(euler_census(quadric_coarse(), SkeletonKind::hatted) == 2);
    CHECK(euler_census(quadric_coarse(), SkeletonKind::skeleton) == 8);
    CHECK(euler_census(quadric_midpoint(), SkeletonKind::hatted) == 2);
    CHECK(euler_census(quadric_midpoint(), SkeletonKind::skeleton) == 8);
    CHECK(euler_census(simplex3_star(), SkeletonKind::hatted) == 2);
    CHECK(euler_census(simplex3_star(), SkeletonKind::skeleton) == 4);

    SECTION("interior origin ties the census to the volume") {
        for (const auto& t : {twodex_star(), simplex3_star(), octahedron_star()}) {
            size_t n = t.polytope().dim() - 1;
            Int vol = t.polytope().normalized_volume();
            CHECK(euler_census(t, SkeletonKind::skeleton) == (n % 2 == 0 ? vol : -vol));
        }
    }
}

TEST_CASE("quotient skeletons", "[skeleton]") {
    SECTION("fine conic over the quadrant") {
        auto t = conic_fine();
        auto q = build_quotient_skeleton(t, quadrant());
        CHECK(q.rounds == 1);
        CHECK(q.complex.f_vector() == std::vector<size_t>{6, 6});
        auto hom = homology(q.complex.chain());
        CHECK(hom.betti == std::vector<size_t>{1, 1});
        CHECK(hom.torsion_free());

        CHECK(q.census.at(by_verts(t, {{2, 0}})) == 2);
        CHECK(q.census.at(by_verts(t, {{1, 1}})) == 4);
        CHECK(q.census.at(by_verts(t, {{2, 0}, {1, 1}})) == 2);

        // the refinement did not need to grow the skeleton arrangement
        auto plain = build_skeleton(t);
        CHECK(q.refined.arrangement.classes.size() == plain.arrangement.classes.size());
        CHECK(homology(q.refined.complex.chain()).betti == std::vector<size_t>{1, 5});

        CHECK(q.quotient.source.size() == q.refined.complex.size());
        CHECK(q.quotient.target.size() == q.complex.size());
    }

    SECTION("coarse quadric over the octant matches the component complex") {
        auto t = quadric_coarse();
        auto k = octant();
        auto q = build_quotient_skeleton(t, k);
        CHECK(q.rounds == 1);
        CHECK(q.complex.f_vector() == std::vector<size_t>{6, 12, 8});
        CHECK(q.complex.is_regular());
        auto hom = homology(q.complex.chain());
        CHECK(hom.betti == std::vector<size_t>{1, 0, 1});
        CHECK(hom.torsion_free());

        auto h = build_hatted(t);
        CHECK(q.complex.f_vector() == h.complex.f_vector());

        // carriers: vertices push to rays, edges to two-faces, the top to the cone
        const auto& faces = k.face_lattice();
        CHECK(faces[q.carrier.at(by_verts(t, {{2, 0, 0}}))].dim == 1);
        CHECK(faces[q.carrier.at(by_verts(t, {{2, 0, 0}, {0, 2, 0}}))].dim == 2);
        CHECK(faces[q.carrier.at(by_verts(t, {{2, 0, 0}, {0, 2, 0}, {0, 0, 2}}))].dim == 3);
    }

    SECTION("midpoint quadric needs one refinement round") {
        auto t = quadric_midpoint();
        auto q = build_quotient_skeleton(t, octant());
        CHECK(q.rounds == 2);
        CHECK(q.complex.f_vector() == std::vector<size_t>{12, 24, 14});
        auto hom = homology(q.complex.chain());
        CHECK(hom.betti == std::vector<size_t>{1, 0, 1});
        CHECK(hom.torsion_free());

        // the skew walls pulled back from the face tori refine the skeleton
        auto plain = build_skeleton(t);
        CHECK(q.refined.arrangement.classes.size() > plain.arrangement.classes.size());
        CHECK(homology(q.refined.complex.chain()).betti ==
              homology(plain.complex.chain()).betti);

        CHECK(q.census.at(by_verts(t, {{1, 1, 0}})) == 4);
        CHECK(q.census.at(by_verts(t, {{1, 0, 1}, {1, 1, 0}})) == 4);
        CHECK(q.census.at(by_verts(t, {{1, 0, 1}, {1, 1, 0}, {0, 1, 1}})) == 2);

        CHECK(thrown_code([&] { build_quotient_skeleton(t, octant(), kTorusRankCap, 1); }) ==
              ErrorCode::CellularizationDidNotStabilize);
    }
}

TEST_CASE("model invariants", "[skeleton]") {
    SECTION("wedge shape of every component complex") {
        for (const auto& t : {segment_star(), twodex_star(), conic_fine(), conic_coarse(),
                              quadric_coarse(), quadric_midpoint(), simplex3_star(),
                              octahedron_star()}) {
            auto h = build_hatted(t);
            check_wedge(h.complex, t.polytope().dim() - 1);
        }
    }

    SECTION("models never exceed the hypersurface dimension") {
        for (const auto& t : {twodex_star(), conic_fine(), quadric_coarse(), simplex3_star()}) {
            size_t n = t.polytope().dim() - 1;
            CHECK(build_hatted(t).complex.dimension() <= n);
            CHECK(build_skeleton(t).complex.dimension() <= n);
        }
    }

    SECTION("unimodular transforms change nothing") {
        IntMat u2 = {{1, 1}, {0, 1}};
        IntMat u3 = {{1, 0, 1}, {0, 1, 0}, {0, -1, -1}};

        auto t = twodex_star();
        auto tt = transformed(t, u2);
        CHECK(homology(build_hatted(t).complex.chain()).betti ==
              homology(build_hatted(tt).complex.chain()).betti);
        CHECK(homology(build_skeleton(t).complex.chain()).betti ==
              homology(build_skeleton(tt).complex.chain()).betti);
        CHECK(euler_census(t, SkeletonKind::skeleton) ==
              euler_census(tt, SkeletonKind::skeleton));

        auto s = quadric_coarse();
        auto st = transformed(s, u3);
        CHECK(homology(build_hatted(s).complex.chain()).betti ==
              homology(build_hatted(st).complex.chain()).betti);
        CHECK(homology(build_skeleton(s).complex.chain()).betti ==
              homology(build_skeleton(st).complex.chain()).betti);
    }

    SECTION("subdivision invariance of the quadric") {
        auto coarse = build_skeleton(quadric_coarse());
        auto mid = build_skeleton(quadric_midpoint());
        CHECK(homology(coarse.complex.chain()).betti == homology(mid.complex.chain()).betti);
        CHECK(coarse.complex.euler() == mid.complex.euler());

        auto hc = build_hatted(quadric_coarse());
        auto hm = build_hatted(quadric_midpoint());
        CHECK(homology(hc.complex.chain()).betti == homology(hm.complex.chain()).betti);
    }
}
