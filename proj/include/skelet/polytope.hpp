#pragma once

#include <memory>
#include <mutex>

#include "skelet/geometry.hpp"

namespace skelet {

inline constexpr size_t kFaceLatticeRankCap = 6;

struct PolytopeFace {
    std::vector<size_t> vertex_ids;    // sorted indices into vertices()
    size_t dim = 0;
    std::vector<size_t> tight_facets;  // facet indices cutting out this face
};

class LatticePolytope {
  public:
    // convex hull; non-extreme input points are dropped and recorded
    static LatticePolytope from_points(size_t ambient_rank, const std::vector<IntVec>& pts);

    size_t ambient_rank() const { return ambient_rank_; }
    size_t dim() const { return ambient_rank_ - hrep_.eq.rows(); }
    const std::vector<IntVec>& vertices() const { return vertices_; }
    const std::vector<IntVec>& discarded_points() const { return discarded_; }
    const HRep& hrep() const { return hrep_; }

    bool contains(const RatVec& p) const;
    std::vector<IntVec> lattice_points() const;

    // complete face poset ordered by (dim, vertex ids); includes the polytope
    const std::vector<PolytopeFace>& face_lattice(size_t cap = kFaceLatticeRankCap) const;
    const PolytopeFace& minimal_face(const RatVec& p) const;
    Int normalized_volume() const;

    // pulling triangulation of a face, as sorted vertex-id simplices; the
    // rule recurses on the lex-least vertex, so shared faces refine alike
    std::vector<std::vector<size_t>> pulling_triangulation(size_t face_index) const;

  private:
    struct LazyFaces {
        std::once_flag once;
        std::vector<PolytopeFace> faces;
    };

    size_t ambient_rank_ = 0;
    std::vector<IntVec> vertices_;
    std::vector<IntVec> discarded_;
    HRep hrep_;
    std::shared_ptr<LazyFaces> lazy_ = std::make_shared<LazyFaces>();
};

struct ConeFace {
    size_t id = 0;
    size_t dim = 0;
    std::vector<size_t> generator_ids;   // sorted indices into generators()
    std::vector<size_t> tight_normals;   // facet normals vanishing on the face
    IntMat span_lattice_basis;           // saturated basis of the span lattice
};

class RationalCone {
  public:
    // full-dimensional cone; lineality is handled, generators are kept as given
    // apart from dropping zero vectors and duplicates
    static RationalCone from_generators(size_t ambient_rank, const std::vector<IntVec>& gens);

    size_t ambient_rank() const { return ambient_rank_; }
    const std::vector<IntVec>& generators() const { return generators_; }
    const IntMat& lineality() const { return lineality_; }
    const std::vector<IntVec>& facet_normals() const { return normals_; }

    bool contains(const RatVec& x) const;
    const std::vector<ConeFace>& face_lattice(size_t cap = kFaceLatticeRankCap) const;
    const ConeFace& minimal_face(const RatVec& x) const;

  private:
    struct LazyFaces {
        std::once_flag once;
        std::vector<ConeFace> faces;
    };

    size_t ambient_rank_ = 0;
    std::vector<IntVec> generators_;
    IntMat lineality_{0, 0};
    std::vector<IntVec> normals_;
    std::shared_ptr<LazyFaces> lazy_ = std::make_shared<LazyFaces>();
};

}  // namespace skelet
