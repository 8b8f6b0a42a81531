#pragma once

// Regular-CW-style cell complexes with exact rational charts, their chain
// complexes, and integral homology by Smith reduction.

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "skelet/homology.hpp"
#include "skelet/triangulation.hpp"

namespace skelet {

inline constexpr size_t kNoFactor = static_cast<size_t>(-1);

struct CWCell {
    size_t dim = 0;
    std::vector<RatVec> chart;  // sorted vertex list of the canonical lift
    size_t base = kNoFactor;    // optional id of the simplex factor
    size_t fiber = kNoFactor;   // optional id of the fiber-cell factor
};

// Boundary data is stored per geometric incidence: a glued facet may appear
// twice in one cell's list with opposite signs (square-torus style), in which
// case its chain coefficient is the sum. is_regular() reports whether every
// facet occurs exactly once.
class RationalCellComplex {
  public:
    // facets must already be present and of dimension dim-1; signs are +1/-1
    size_t add_cell(CWCell cell, std::vector<std::pair<size_t, int>> facets);

    size_t size() const { return cells_.size(); }
    size_t dimension() const;
    const CWCell& cell(size_t id) const;
    const std::vector<CWCell>& cells() const { return cells_; }
    const std::vector<std::pair<size_t, int>>& facets_of(size_t id) const;

    std::optional<size_t> find(size_t dim, const std::vector<RatVec>& chart) const;
    std::vector<std::vector<size_t>> cells_by_dim() const;
    std::vector<size_t> f_vector() const;
    Int euler() const;
    bool is_regular() const;
    ChainComplex chain() const;

    // chart sanity plus boundary-of-boundary = 0 on the chain matrices
    void validate() const;

  private:
    std::vector<CWCell> cells_;
    std::vector<std::vector<std::pair<size_t, int>>> facets_;
    std::map<std::pair<size_t, std::vector<RatVec>>, size_t> index_;
};

// the cells with the listed ids, reindexed; the selection must be closed
// under facets
RationalCellComplex subcomplex(const RationalCellComplex& c, const std::vector<size_t>& ids);

// product of the closed simplex (with all its faces) and a fiber complex;
// boundary by the Leibniz rule with sign (-1)^(base dim) on the fiber term
RationalCellComplex product_with_simplex(const StarTriangulation& t, size_t simplex,
                                         const RationalCellComplex& fiber);

HomologyResult homology(const RationalCellComplex& c);
HomologyResult homology_reference(const RationalCellComplex& c);

// orientation frame of a chart: greedy affinely independent difference
// vectors off the sorted vertex list; translation invariant
std::vector<RatVec> orientation_frame(const std::vector<RatVec>& chart);

// sign of one geometric incidence: `facet` is the facet's vertex set in the
// cell's own coordinates (a translate of the facet cell's canonical chart)
int incidence_sign(const std::vector<RatVec>& cell, const std::vector<RatVec>& facet);

}  // namespace skelet
