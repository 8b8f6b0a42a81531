#pragma once

#include "skelet/lattice.hpp"

namespace skelet {

// gcd-reduced with the leading nonzero entry's sign preserved
IntVec primitive(IntVec v);

// extreme rays of the pointed cone {x : ineqs x >= 0}; the rank of ineqs must
// equal the ambient dimension, which for an inequality cone is exactly
// pointedness. Rays come out primitive and lex-sorted.
std::vector<IntVec> dd_extreme_rays(const IntMat& ineqs);

// inward facet normals of a full-dimensional cone given by generators
std::vector<IntVec> cone_facet_normals(const std::vector<IntVec>& gens);

// generators spanning the lineality space, as a canonical lattice basis
IntMat cone_lineality(const std::vector<IntVec>& gens);

struct HalfSpace {
    IntVec normal;  // primitive
    Int offset;     // normal . x <= offset
    bool operator==(const HalfSpace&) const = default;
};

// affine hull (eq x = rhs) plus facet inequalities within the hull
struct HRep {
    IntMat eq;
    IntVec eq_rhs;
    std::vector<HalfSpace> ineq;
};

HRep polytope_hrep(const std::vector<IntVec>& pts);

// vertices of a bounded {A x <= b}; sorted, exact
std::vector<RatVec> polytope_vertices(const RatMat& a, const RatVec& b);

size_t affine_rank(const std::vector<IntVec>& pts);
size_t affine_rank(const std::vector<RatVec>& pts);

}  // namespace skelet
