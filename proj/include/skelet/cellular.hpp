#pragma once

// Cellular maps between rational cell complexes: chain-level verification,
// cellularization of integral torus projections by iterative wall
// refinement, and quotients along cellular identifications.

#include <set>

#include "skelet/arrangement.hpp"

namespace skelet {

// Assignment sends each source cell to its image cell; the degree is +-1
// when the image keeps the dimension and 0 when it drops. build_chain
// derives the per-degree chain matrices from that data, and validate checks
// the chain maps commute with both boundaries.
struct CellularMap {
    RationalCellComplex source, target;
    std::vector<size_t> assignment;
    std::vector<int> degree;
    std::vector<SparseIntMat> chain;  // degree k: C_k(source) -> C_k(target)

    void build_chain();
    void validate() const;
};

inline constexpr size_t kCellularizationRoundsCap = 8;

struct CellularizedMap {
    TorusArrangement source, target;  // refined arrangements
    CellularMap map;
    size_t rounds = 0;  // refinement rounds actually used
};

// Makes theta -> b * theta cellular between two torus arrangements. Each
// round pushes the supporting wall classes of every image polytope into the
// target, pulls every target class back to the source, and rebuilds both
// arrangements; the loop stops when neither class set grows. At that point
// each open source cell maps onto exactly one open target cell.
CellularizedMap cellularize_map(const TorusArrangement& source, const TorusArrangement& target,
                                const IntMat& b, size_t rounds_cap = kCellularizationRoundsCap);

// geometric degree of the map x -> b*x from one chart onto another of the
// same dimension, by orienting frames; 0 when the dimension drops
int map_degree(const IntMat& b, const std::vector<RatVec>& source_chart,
               const std::vector<RatVec>& target_chart);

// chart vertices pushed through x -> b*x
std::vector<RatVec> image_points(const IntMat& b, const std::vector<RatVec>& chart);

// wall classes of every hyperplane supporting conv(pts): facets plus the
// affine-hull equations, all reduced to canonical torus classes; reports
// whether the set grew
bool insert_hull_classes(const std::vector<RatVec>& pts, std::set<HyperplaneClass>& into);

// extreme points of the image polytope under x -> b*x, exact
std::vector<RatVec> image_chart(const IntMat& b, const std::vector<RatVec>& chart);

std::vector<std::pair<IntVec, Rat>> as_raw(const std::set<HyperplaneClass>& classes);

// Image subcomplex of the identification. The image must be closed under
// facets and each cell fiber of the assignment must be connected.
RationalCellComplex quotient_by_cellular_map(const CellularMap& m);

}  // namespace skelet
