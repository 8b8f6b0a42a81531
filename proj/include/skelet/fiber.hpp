#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <vector>

#include "skelet/lattice.hpp"
#include "skelet/polytope.hpp"
#include "skelet/triangulation.hpp"

namespace skelet {

// The subgroup of Hom(M, S^1) = R^r/Z^r of characters that are trivial on the
// vertices of a boundary simplex.  The identity component is a torus of
// dimension torus_rank; `components` is the finite component group, with one
// canonical representative per element: the lexicographically least point of
// that component inside [0,1)^r.  Representatives are sorted, so the identity
// component is index 0 with representative 0.
struct FiberGroup {
    size_t simplex = 0;
    size_t ambient_rank = 0;
    LatticeQuotient quotient;          // ambient lattice / (vertex span)
    size_t torus_rank = 0;
    FiniteAbelianGroup components;
    std::vector<RatVec> coset_reps;

    // Component membership is read off from the residues of residue_rows * theta
    // modulo 1; residue_rows is the saturated basis of the vertex span, so the
    // residues are constant on components and distinct across them.
    IntMat residue_rows{0, 0};
    std::vector<RatVec> labels;        // residue label per component, aligned with coset_reps

    size_t component_count() const { return coset_reps.size(); }
    // index of the component containing theta; theta must lie in the group
    size_t component_of(const RatVec& theta) const;
    // component index of the product of two components
    size_t add(size_t a, size_t b) const;
};

FiberGroup fiber_group(const StarTriangulation& t, size_t simplex);

// The character-restriction homomorphism D_{larger} -> D_{smaller} induced by
// the containment G_{larger} <= G_{smaller}.
struct RestrictionMap {
    size_t source = 0;                 // the larger simplex
    size_t target = 0;                 // a face of it
    std::vector<size_t> image;         // target component index per source component
};

RestrictionMap restriction_map(const FiberGroup& larger, const FiberGroup& smaller);
RestrictionMap restriction_map(const StarTriangulation& t, size_t larger, size_t smaller);

// Fiber data of the quotient model over a cone face: the simplex sits inside
// the face F of K spanned by its carrier stratum, and the group lives in
// Hom(L_F, S^1) where L_F is the saturated span lattice of F.
struct QuotientFiberGroup {
    size_t simplex = 0;
    size_t cone_face = 0;              // face id within k.face_lattice()
    IntMat face_basis{0, 0};           // rows: Hermite basis of L_F
    FiberGroup group;                  // computed in the face_basis coordinates
};

QuotientFiberGroup quotient_fiber_group(const StarTriangulation& t, size_t simplex,
                                        const RationalCone& k);

// Preconditions on the ambient cone of the quotient model, checked exactly:
// (1) the cone is smooth away from its apex (smooth, or pointed with all
//     proper faces smooth), (2) the polytope has the dimension of the cone,
// (3) the polytope generates the cone modulo its lineality space.
void check_cone_assumptions(const StarTriangulation& t, const RationalCone& k);

// Immutable table of the fiber groups of every boundary simplex, built once.
class FiberTable {
  public:
    explicit FiberTable(const StarTriangulation& t);

    const StarTriangulation& triangulation() const { return *t_; }
    const FiberGroup& at(size_t simplex) const;
    RestrictionMap restriction(size_t larger, size_t smaller) const;

  private:
    const StarTriangulation* t_;
    std::map<size_t, FiberGroup> groups_;
};

}  // namespace skelet
