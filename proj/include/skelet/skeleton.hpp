#pragma once

// The three combinatorial models attached to a star triangulation: the
// component complex over the boundary part, the skeleton fibered in the
// ambient torus, and the skeleton pushed into the quotient tori of a cone's
// faces, together with the verified chain map onto the latter.

#include <map>
#include <set>
#include <utility>

#include "skelet/cellular.hpp"
#include "skelet/fiber.hpp"

namespace skelet {

// Cells are pairs (tau, d): a boundary simplex and a component of its fiber
// group. A facet keeps the simplicial sign and restricts the component along
// the inclusion of the fiber groups.
struct HattedComplex {
    RationalCellComplex complex;
    std::vector<std::pair<size_t, size_t>> cell_keys;  // (simplex, component)
    std::map<size_t, size_t> census;                   // simplex -> component count
};

HattedComplex build_hatted(const StarTriangulation& t);

// Cells are pairs (sigma, c): a boundary simplex and a cell of its fiber
// subgroup inside one shared arrangement of the ambient torus whose walls
// are induced by the boundary vertices. Boundaries follow the product rule:
// simplicial facets keep the fiber cell, fiber facets pick up the sign
// (-1)^dim(sigma).
struct SkeletonModel {
    TorusArrangement arrangement;
    RationalCellComplex complex;
    std::vector<std::pair<size_t, size_t>> cell_keys;  // (simplex, arrangement cell)
    std::map<size_t, size_t> census;                   // simplex -> fiber cell count
};

SkeletonModel build_skeleton(const StarTriangulation& t, size_t rank_cap = kTorusRankCap);

// The skeleton pushed into the face tori of the cone: over each stratum the
// fiber is projected along the saturated basis of the minimal cone face
// carrying that stratum. All face arrangements are refined jointly until
// every projection is cellular, each stratum's identification is checked to
// be a quotient by connected fibers, and the result comes with the verified
// chain map from the skeleton rebuilt on the refined arrangement.
struct QuotientSkeletonModel {
    SkeletonModel refined;
    RationalCellComplex complex;
    std::vector<std::pair<size_t, size_t>> cell_keys;  // (simplex, face-torus cell)
    std::map<size_t, size_t> census;                   // simplex -> image cell count
    std::map<size_t, size_t> carrier;                  // simplex -> cone face id
    CellularMap quotient;                              // refined skeleton -> complex
    size_t rounds = 0;                                 // refinement rounds used
};

QuotientSkeletonModel build_quotient_skeleton(const StarTriangulation& t, const RationalCone& k,
                                              size_t rank_cap = kTorusRankCap,
                                              size_t rounds_cap = kCellularizationRoundsCap);

enum class SkeletonKind { hatted, skeleton };

// Euler characteristic of either model straight from the fiber census, with
// no complex built; in the skeleton only rank-zero fibers contribute.
Int euler_census(const StarTriangulation& t, SkeletonKind which);

}  // namespace skelet
