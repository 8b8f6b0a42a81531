#pragma once

// Census of the initial toric degeneration attached to a certified star
// triangulation: the overgraph cone of the heights, its facets split by
// whether they contain the vertical ray, the resulting vertical/horizontal
// divisor classification, and the restrictions of the defining polynomial
// to the boundary strata.

#include "skelet/polytope.hpp"
#include "skelet/triangulation.hpp"

#include <utility>
#include <vector>

namespace skelet {

// All points of the support cone lying on or above the graph of h, as a
// full-dimensional cone one rank up. Its facets are the graph pieces (one
// per maximal cone of linearity) and the walls over the facets of the
// support cone; the walls are exactly the facets through the vertical ray.
struct OvergraphCone {
    size_t ambient_rank = 0;        // polytope rank + 1
    RationalCone cone;
    std::vector<IntVec> lifted;     // (v, h(v)) per triangulation vertex
    std::vector<bool> through_ray;  // facet i contains the vertical ray
};

OvergraphCone overgraph_cone(const StarTriangulation& t, const HeightCertificate& h);

// Vertical divisors are the components of the central fiber; they
// correspond to the graph facets, one per maximal boundary simplex.
// Horizontal divisors are the remaining toric divisors, carried by the
// boundary simplices through the origin. Entries pair the simplex with its
// facet index in the overgraph cone. Several horizontal simplices share a
// facet when the triangulation subdivides a polytope facet through the
// origin; the facets, not the simplices, count the divisors.
struct DivisorClassification {
    std::vector<std::pair<size_t, size_t>> vertical;    // (simplex, facet)
    std::vector<std::pair<size_t, size_t>> horizontal;  // (simplex, facet)
};

DivisorClassification classify_divisors(const OvergraphCone& g, const StarTriangulation& t);

// The defining polynomial restricted to the orbit closure of a boundary
// simplex: the constant term survives together with the monomials at the
// simplex vertices. The homogeneous part drops the constant; with the sign
// conditions in force it is positive wherever all coordinates are.
struct RestrictedPolynomial {
    size_t simplex = 0;
    Rat constant;                               // a_0 < 0
    std::vector<std::pair<IntVec, Rat>> terms;  // (m, a_m), a_m > 0

    Rat value_at(const RatVec& z) const;        // constant + homogeneous part
    Rat homogeneous_at(const RatVec& z) const;  // sum of the monomial terms
};

// coeffs must carry exactly the origin plus every boundary vertex, with a
// negative constant term and positive vertex coefficients.
RestrictedPolynomial restrict_polynomial(const StarTriangulation& t,
                                         const std::vector<std::pair<IntVec, Rat>>& coeffs,
                                         size_t simplex);

}  // namespace skelet
