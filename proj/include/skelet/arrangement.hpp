#pragma once

// CW decompositions of the torus R^r/Z^r by integral hyperplane classes
// {<u, theta> in q + Z}, built inside the fundamental cube and glued along
// canonical translates, plus extraction of subgroup subcomplexes.

#include <utility>
#include <vector>

#include "skelet/complex.hpp"

namespace skelet {

inline constexpr size_t kTorusRankCap = 4;

struct HyperplaneClass {
    IntVec normal;  // primitive, first nonzero entry positive
    Rat offset;     // in [0, 1)
    bool operator==(const HyperplaneClass&) const = default;
    bool operator<(const HyperplaneClass& o) const {
        return normal != o.normal ? normal < o.normal : offset < o.offset;
    }
};

// the canonical classes of one wall family <v, theta> in q + Z: the normal is
// reduced to primitive form with first nonzero entry positive, which splits a
// content-c input into c parallel classes
std::vector<HyperplaneClass> split_class(const IntVec& v, const Rat& q);

// canonical deduplicated class set; the r coordinate classes are always added
std::vector<HyperplaneClass> normalize_classes(size_t rank,
                                               const std::vector<std::pair<IntVec, Rat>>& raw);

struct TorusArrangement {
    size_t rank = 0;
    std::vector<HyperplaneClass> classes;  // sorted
    RationalCellComplex complex;
    bool has_class(const HyperplaneClass& c) const;
};

TorusArrangement torus_arrangement(size_t rank, const std::vector<std::pair<IntVec, Rat>>& raw,
                                   size_t rank_cap = kTorusRankCap);

// canonical translate of a geometric cell: subtract the floor of each
// coordinatewise minimum, landing the chart in the fundamental cube with no
// coordinate pinned at 1
std::vector<RatVec> canonical_shift(const std::vector<RatVec>& verts);

// cells lying in the subgroup {theta : <v, theta - theta0> in Z for all v};
// each condition's wall classes must be present in the arrangement
std::vector<size_t> subgroup_cells(const TorusArrangement& a,
                                   const std::vector<IntVec>& conditions, const RatVec& theta0);

RationalCellComplex subgroup_subcomplex(const TorusArrangement& a,
                                        const std::vector<IntVec>& conditions,
                                        const RatVec& theta0);

}  // namespace skelet
