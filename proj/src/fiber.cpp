#include "skelet/fiber.hpp"

#include <algorithm>

#include "skelet/errors.hpp"

namespace skelet {

namespace {

IntMat vertex_matrix(const StarTriangulation& t, size_t simplex) {
    if (simplex >= t.simplices().size())
        fail(ErrorCode::AssumptionViolation, "simplex index out of range");
    const TriSimplex& s = t.simplices()[simplex];
    if (s.contains_origin)
        fail(ErrorCode::SimplexContainsOrigin, "fiber groups are defined over the boundary part");
    size_t rank = t.polytope().ambient_rank();
    IntMat v(s.vertex_ids.size(), rank);
    for (size_t i = 0; i < s.vertex_ids.size(); ++i)
        v.set_row(i, t.vertices()[s.vertex_ids[i]]);
    return v;
}

RatVec residue_label(const IntMat& rows, const RatVec& theta) {
    RatVec label(rows.rows());
    for (size_t i = 0; i < rows.rows(); ++i) {
        Rat acc = 0;
        for (size_t j = 0; j < rows.cols(); ++j) acc += Rat(rows(i, j)) * theta[j];
        label[i] = mod1(acc);
    }
    return label;
}

FiberGroup fiber_group_core(size_t simplex, size_t ambient_rank, const IntMat& verts) {
    FiberGroup g;
    g.simplex = simplex;
    g.ambient_rank = ambient_rank;
    g.quotient = lattice_quotient(ambient_rank, verts);
    g.torus_rank = g.quotient.free_rank;
    g.components = g.quotient.torsion;
    g.coset_reps = g.quotient.coset_reps;
    g.residue_rows = saturate(ambient_rank, verts);
    for (const auto& rep : g.coset_reps) g.labels.push_back(residue_label(g.residue_rows, rep));
    for (size_t i = 0; i + 1 < g.labels.size(); ++i)
        for (size_t j = i + 1; j < g.labels.size(); ++j)
            require_internal(g.labels[i] != g.labels[j], "component labels collide");
    return g;
}

}  // namespace

size_t FiberGroup::component_of(const RatVec& theta) const {
    require_internal(theta.size() == ambient_rank, "character has the wrong rank");
    const IntMat& verts = quotient.sub_generators;
    for (size_t i = 0; i < verts.rows(); ++i) {
        Rat acc = 0;
        for (size_t j = 0; j < verts.cols(); ++j) acc += Rat(verts(i, j)) * theta[j];
        require_internal(is_integer(acc), "character is not trivial on the simplex vertices");
    }
    RatVec label = residue_label(residue_rows, theta);
    for (size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == label) return i;
    require_internal(false, "character matches no component label");
    return 0;
}

size_t FiberGroup::add(size_t a, size_t b) const {
    require_internal(a < coset_reps.size() && b < coset_reps.size(), "component index out of range");
    RatVec sum(ambient_rank);
    for (size_t j = 0; j < ambient_rank; ++j) sum[j] = mod1(coset_reps[a][j] + coset_reps[b][j]);
    return component_of(sum);
}

FiberGroup fiber_group(const StarTriangulation& t, size_t simplex) {
    return fiber_group_core(simplex, t.polytope().ambient_rank(), vertex_matrix(t, simplex));
}

RestrictionMap restriction_map(const FiberGroup& larger, const FiberGroup& smaller) {
    require_internal(larger.ambient_rank == smaller.ambient_rank,
                     "restriction between fiber groups of different rank");
    RestrictionMap m;
    m.source = larger.simplex;
    m.target = smaller.simplex;
    for (const auto& rep : larger.coset_reps) m.image.push_back(smaller.component_of(rep));
    return m;
}

RestrictionMap restriction_map(const StarTriangulation& t, size_t larger, size_t smaller) {
    if (larger >= t.simplices().size() || smaller >= t.simplices().size())
        fail(ErrorCode::AssumptionViolation, "simplex index out of range");
    const auto& sv = t.simplices()[smaller].vertex_ids;
    const auto& lv = t.simplices()[larger].vertex_ids;
    if (!std::includes(lv.begin(), lv.end(), sv.begin(), sv.end()))
        fail(ErrorCode::NotAFace, "restriction target is not a face of the source");
    return restriction_map(fiber_group(t, larger), fiber_group(t, smaller));
}

namespace {

RatVec barycenter(const StarTriangulation& t, size_t simplex) {
    const TriSimplex& s = t.simplices()[simplex];
    size_t rank = t.polytope().ambient_rank();
    RatVec b(rank, Rat(0));
    for (size_t id : s.vertex_ids)
        for (size_t j = 0; j < rank; ++j) b[j] += Rat(t.vertices()[id][j]);
    for (size_t j = 0; j < rank; ++j) b[j] /= Rat(Int(s.vertex_ids.size()));
    return b;
}

// projection Z^n -> Z^n/span(rows) =~ Z^(n-a) as the trailing coordinates of a
// basis completion; rows must be a saturated lattice
IntMat quotient_projection(size_t rank, const IntMat& rows) {
    if (rows.rows() == 0) return IntMat::identity(rank);
    SNFDecomposition s = smith_normal_form(rows);
    require_internal(s.rank() == rows.rows(), "quotient_projection needs a sublattice basis");
    for (const auto& f : s.invariant_factors())
        require_internal(f == 1, "quotient_projection needs a saturated sublattice");
    size_t m = rank - rows.rows();
    IntMat p(rank, m);
    for (size_t i = 0; i < rank; ++i)
        for (size_t j = 0; j < m; ++j) p(i, j) = s.right(i, rows.rows() + j);
    return p;
}

std::vector<IntVec> project_rows(const IntMat& p, const std::vector<IntVec>& xs) {
    std::vector<IntVec> out;
    for (const auto& x : xs) {
        IntVec y(p.cols(), Int(0));
        for (size_t j = 0; j < p.cols(); ++j)
            for (size_t i = 0; i < p.rows(); ++i) y[j] += x[i] * p(i, j);
        out.push_back(y);
    }
    return out;
}

// a full-dimensional pointed cone is smooth iff its primitive ray generators
// form a lattice basis
bool pointed_cone_smooth(size_t rank, const std::vector<IntVec>& gens) {
    if (rank == 0) return true;
    RationalCone c = RationalCone::from_generators(rank, gens);
    require_internal(c.lineality().rows() == 0, "pointed_cone_smooth given a non-pointed cone");
    std::vector<IntVec> rays;
    for (const auto& f : c.face_lattice())
        if (f.dim == 1) rays.push_back(primitive(c.generators()[f.generator_ids.front()]));
    if (rays.size() != rank) return false;
    IntMat m(rays.size(), rank);
    for (size_t i = 0; i < rays.size(); ++i) m.set_row(i, rays[i]);
    LatticeQuotient q = lattice_quotient(rank, m);
    return q.torsion.trivial() && q.free_rank == 0;
}

// smoothness of the full-dimensional cone modulo its lineality space
bool cone_smooth(const RationalCone& c) {
    IntMat lin = c.lineality();
    size_t m = c.ambient_rank() - lin.rows();
    IntMat p = quotient_projection(c.ambient_rank(), lin);
    std::vector<IntVec> gens = project_rows(p, c.generators());
    std::vector<IntVec> nonzero;
    for (auto& g : gens)
        if (IntVec(g.size(), Int(0)) != g) nonzero.push_back(g);
    if (nonzero.empty()) return true;  // the cone is its lineality space
    return pointed_cone_smooth(m, nonzero);
}

}  // namespace

void check_cone_assumptions(const StarTriangulation& t, const RationalCone& k) {
    size_t rank = t.polytope().ambient_rank();
    if (k.ambient_rank() != rank)
        fail(ErrorCode::AssumptionViolation,
             "ambient cone assumption (2): cone rank does not match the polytope");
    // the cone is full-dimensional by construction, so (2) is a dimension match
    if (t.polytope().dim() != rank)
        fail(ErrorCode::AssumptionViolation,
             "ambient cone assumption (2): polytope dimension below the cone dimension");

    // (3): the polytope generates the cone up to invertible elements
    for (const auto& v : t.polytope().vertices()) {
        RatVec x(rank);
        for (size_t j = 0; j < rank; ++j) x[j] = Rat(v[j]);
        if (!k.contains(x))
            fail(ErrorCode::AssumptionViolation,
                 "ambient cone assumption (3): polytope vertex outside the cone");
    }
    std::vector<IntVec> gens = t.polytope().vertices();
    for (size_t i = 0; i < k.lineality().rows(); ++i) {
        gens.push_back(k.lineality().row(i));
        IntVec neg = k.lineality().row(i);
        for (auto& c : neg) c = -c;
        gens.push_back(neg);
    }
    RationalCone spanned = RationalCone::from_generators(rank, gens);
    auto canon = [](std::vector<IntVec> ns) {
        std::sort(ns.begin(), ns.end());
        return ns;
    };
    if (canon(spanned.facet_normals()) != canon(k.facet_normals()))
        fail(ErrorCode::AssumptionViolation,
             "ambient cone assumption (3): the polytope does not generate the cone");

    // (1): smooth, or pointed with all proper localizations smooth
    if (cone_smooth(k)) return;
    if (k.lineality().rows() != 0)
        fail(ErrorCode::AssumptionViolation,
             "ambient cone assumption (1): singular cone with invertible directions");
    for (const auto& f : k.face_lattice()) {
        if (f.dim == 0 || f.dim == rank) continue;
        std::vector<IntVec> local = k.generators();
        for (size_t i = 0; i < f.span_lattice_basis.rows(); ++i) {
            local.push_back(f.span_lattice_basis.row(i));
            IntVec neg = f.span_lattice_basis.row(i);
            for (auto& c : neg) c = -c;
            local.push_back(neg);
        }
        if (!cone_smooth(RationalCone::from_generators(rank, local)))
            fail(ErrorCode::AssumptionViolation,
                 "ambient cone assumption (1): the singular locus is positive-dimensional");
    }
}

QuotientFiberGroup quotient_fiber_group(const StarTriangulation& t, size_t simplex,
                                        const RationalCone& k) {
    check_cone_assumptions(t, k);
    IntMat verts = vertex_matrix(t, simplex);
    const ConeFace& face = k.minimal_face(barycenter(t, simplex));
    const IntMat& basis = face.span_lattice_basis;

    QuotientFiberGroup out;
    out.simplex = simplex;
    out.cone_face = face.id;
    out.face_basis = basis;
    IntMat w(verts.rows(), basis.rows());
    for (size_t i = 0; i < verts.rows(); ++i) {
        IntVec x;
        bool ok = integer_row_solve(basis, verts.row(i), x);
        require_internal(ok, "simplex vertex is not in the span lattice of its cone face");
        w.set_row(i, x);
    }
    out.group = fiber_group_core(simplex, basis.rows(), w);
    return out;
}

FiberTable::FiberTable(const StarTriangulation& t) : t_(&t) {
    for (size_t id : t.boundary_part()) groups_.emplace(id, fiber_group(t, id));
}

const FiberGroup& FiberTable::at(size_t simplex) const {
    auto it = groups_.find(simplex);
    if (it == groups_.end())
        fail(ErrorCode::SimplexContainsOrigin, "no fiber group over that simplex");
    return it->second;
}

RestrictionMap FiberTable::restriction(size_t larger, size_t smaller) const {
    const auto& sv = t_->simplices()[smaller].vertex_ids;
    const auto& lv = t_->simplices()[larger].vertex_ids;
    if (!std::includes(lv.begin(), lv.end(), sv.begin(), sv.end()))
        fail(ErrorCode::NotAFace, "restriction target is not a face of the source");
    return restriction_map(at(larger), at(smaller));
}

}  // namespace skelet
