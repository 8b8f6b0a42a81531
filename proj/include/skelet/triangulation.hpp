#pragma once

// Star triangulations of a lattice polytope based at the origin: validation,
// exact regularity certificates via LP, and generation from height functions.

#include "skelet/lp.hpp"
#include "skelet/polytope.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>

namespace skelet {

struct TriSimplex {
    std::vector<size_t> vertex_ids;  // sorted indices into vertices()
    size_t dim = 0;
    bool contains_origin = false;
};

struct TriangulationReport {
    size_t maximal_cells = 0;
    size_t boundary_simplices = 0;  // size of the boundary part
    Int covered_volume = 0;         // sum of cell volumes == polytope volume
    bool origin_interior = false;   // the boundary part covers all of the boundary
};

// Piecewise linear heights certifying regularity. values[i] belongs to
// vertices()[i]; the origin's value is 0. margin is the exact minimum of
// h(v) - (affine extension of h over sigma)(v) over maximal cells sigma and
// triangulation vertices v outside sigma; positive exactly when the cells are
// the non-extendable domains of linearity.
struct HeightCertificate {
    std::vector<Int> values;
    Rat margin;
};

// Wall constraint system, margin-normalized: lhs x <= rhs encodes one strict
// convexity inequality per interior wall plus non-negativity of each height.
// columns[j] is the vertex id behind column j (origin excluded).
struct RegularitySystem {
    RatMat lhs;
    RatVec rhs;
    std::vector<size_t> columns;
};

struct RegularityResult {
    RegularitySystem system;
    std::optional<HeightCertificate> certificate;
    std::optional<RatVec> farkas;  // checked witness when infeasible
    bool regular() const { return certificate.has_value(); }
};

class StarTriangulation {
  public:
    // Structural construction: ids must index verts, the origin must be among
    // verts, cells must be genuine simplices and their vertices lattice points
    // of poly. Geometric soundness is validate()'s business.
    static StarTriangulation from_simplices(LatticePolytope poly,
                                            std::vector<IntVec> verts,
                                            const std::vector<std::vector<size_t>>& maximal);

    const LatticePolytope& polytope() const { return poly_; }
    const std::vector<IntVec>& vertices() const { return verts_; }
    size_t origin_id() const { return origin_; }

    // face poset of the whole triangulation, sorted by (dim, vertex ids)
    const std::vector<TriSimplex>& simplices() const { return faces_; }
    const std::vector<size_t>& maximal_cells() const { return maximal_; }
    // ids of simplices not meeting 0, i.e. the boundary part
    const std::vector<size_t>& boundary_part() const { return boundary_; }
    // top-dimensional members of the boundary part
    const std::vector<size_t>& boundary_maximal() const { return boundary_top_; }

    size_t simplex_id(const std::vector<size_t>& vertex_ids) const;
    // codimension-1 faces of s with alternating signs: dropping the i-th
    // vertex in ascending id order carries (-1)^i
    std::vector<std::pair<size_t, int>> boundary_facets(size_t s) const;

    // cells intersect in common faces, cover the polytope exactly, and every
    // cell is the cone at 0 over a simplex inscribed in the boundary
    TriangulationReport validate() const;

    // minimal simplex of the boundary part containing x
    size_t carrier_simplex(const RatVec& x) const;
    // minimal simplex of the full triangulation containing x
    size_t carrier_cell(const RatVec& x) const;

    // requested generator points that ended up unused (set by generation)
    const std::vector<std::pair<IntVec, std::string>>& dropped_points() const {
        return dropped_;
    }

  private:
    friend StarTriangulation generate_star_triangulation(const LatticePolytope&,
                                                         const std::vector<std::pair<IntVec, Rat>>&,
                                                         bool);

    LatticePolytope poly_;
    std::vector<IntVec> verts_;
    size_t origin_ = 0;
    std::vector<TriSimplex> faces_;
    std::vector<size_t> maximal_;
    std::vector<size_t> boundary_;
    std::vector<size_t> boundary_top_;
    std::map<std::vector<size_t>, size_t> index_;
    std::vector<std::pair<IntVec, std::string>> dropped_;
};

// Exact LP for the convex lift: a certificate with integral heights (h integral
// at every lattice point of the polytope) or a Farkas witness for the wall
// system. Margins are normalized to >= 1 before scaling.
RegularityResult check_regularity(const StarTriangulation& t);

// exact recheck of a certificate: non-negative integral values, zero at the
// origin, integral at all lattice points, and every slack >= margin > 0
bool verify_certificate(const StarTriangulation& t, const HeightCertificate& cert);

// Regular star triangulation from lifted heights: per boundary facet avoiding
// 0, the lower hull of the lifted usable points, ties refined by pulling, then
// coned at the origin. Points that cannot appear (interior, or only on faces
// through 0) and points the lower hull rejects are recorded as dropped.
StarTriangulation generate_star_triangulation(const LatticePolytope& poly,
                                              const std::vector<std::pair<IntVec, Rat>>& heights,
                                              bool allow_ties = true);

// rule "squared-norm" or "random" (seeded) applied to the given points
StarTriangulation generate_star_triangulation(const LatticePolytope& poly,
                                              const std::vector<IntVec>& points,
                                              const std::string& rule,
                                              unsigned long seed = 1);

}  // namespace skelet
