#include "skelet/skeleton.hpp"

#include <algorithm>

#include "skelet/parallel.hpp"

namespace skelet {

namespace {

int parity(size_t d) { return d % 2 == 0 ? 1 : -1; }

std::vector<size_t> by_dim(const StarTriangulation& t) {
    std::vector<size_t> order = t.boundary_part();
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return t.simplices()[a].dim < t.simplices()[b].dim;
    });
    return order;
}

std::vector<size_t> boundary_vertex_ids(const StarTriangulation& t) {
    std::set<size_t> ids;
    for (size_t s : t.boundary_part())
        for (size_t v : t.simplices()[s].vertex_ids) ids.insert(v);
    return {ids.begin(), ids.end()};
}

std::vector<IntVec> vertex_conditions(const StarTriangulation& t, size_t s) {
    std::vector<IntVec> conds;
    for (size_t vid : t.simplices()[s].vertex_ids) conds.push_back(t.vertices()[vid]);
    return conds;
}

// product chart of a simplex and a fiber cell in the doubled ambient space;
// the fiber block is zero-padded so every model shares one ambient rank
std::vector<RatVec> product_chart(const StarTriangulation& t, size_t s,
                                  const std::vector<RatVec>& fiber) {
    size_t rank = t.polytope().ambient_rank();
    std::vector<RatVec> chart;
    for (size_t vid : t.simplices()[s].vertex_ids)
        for (const RatVec& th : fiber) {
            RatVec p(2 * rank);
            for (size_t j = 0; j < rank; ++j) p[j] = Rat(t.vertices()[vid][j]);
            for (size_t j = 0; j < th.size(); ++j) p[rank + j] = th[j];
            chart.push_back(std::move(p));
        }
    return chart;
}

// populates complex, cell_keys, and census over an already chosen arrangement
void skeleton_cells(const StarTriangulation& t, SkeletonModel& out) {
    size_t rank = t.polytope().ambient_rank();
    auto order = by_dim(t);
    std::vector<std::vector<size_t>> fcells(order.size());
    parallel_for(order.size(), [&](size_t i) {
        fcells[i] = subgroup_cells(out.arrangement, vertex_conditions(t, order[i]), RatVec(rank));
    });
    out.complex = RationalCellComplex();
    out.cell_keys.clear();
    out.census.clear();
    std::map<std::pair<size_t, size_t>, size_t> made;
    for (size_t i = 0; i < order.size(); ++i) {
        size_t s = order[i];
        const TriSimplex& simp = t.simplices()[s];
        out.census[s] = fcells[i].size();
        auto below = t.boundary_facets(s);
        for (size_t c : fcells[i]) {
            const CWCell& fc = out.arrangement.complex.cell(c);
            CWCell cell;
            cell.dim = simp.dim + fc.dim;
            cell.base = s;
            cell.fiber = c;
            cell.chart = product_chart(t, s, fc.chart);
            std::vector<std::pair<size_t, int>> facets;
            for (const auto& [f, sgn] : below) facets.push_back({made.at({f, c}), sgn});
            for (const auto& [d, sgn] : out.arrangement.complex.facets_of(c))
                facets.push_back({made.at({s, d}), parity(simp.dim) * sgn});
            made[{s, c}] = out.complex.add_cell(std::move(cell), std::move(facets));
            out.cell_keys.push_back({s, c});
        }
    }
    out.complex.validate();
    require_internal(out.complex.euler() == euler_census(t, SkeletonKind::skeleton),
                     "skeleton census does not match the built complex");
}

}  // namespace

HattedComplex build_hatted(const StarTriangulation& t) {
    FiberTable table(t);
    size_t rank = t.polytope().ambient_rank();
    HattedComplex out;
    std::map<std::pair<size_t, size_t>, size_t> made;
    for (size_t s : by_dim(t)) {
        const TriSimplex& simp = t.simplices()[s];
        const FiberGroup& g = table.at(s);
        out.census[s] = g.component_count();
        auto below = t.boundary_facets(s);
        std::vector<RestrictionMap> maps;
        for (const auto& [f, sgn] : below) maps.push_back(table.restriction(s, f));
        for (size_t d = 0; d < g.component_count(); ++d) {
            CWCell cell;
            cell.dim = simp.dim;
            cell.base = s;
            cell.fiber = d;
            cell.chart = product_chart(t, s, {g.coset_reps[d]});
            std::vector<std::pair<size_t, int>> facets;
            for (size_t i = 0; i < below.size(); ++i)
                facets.push_back({made.at({below[i].first, maps[i].image[d]}), below[i].second});
            made[{s, d}] = out.complex.add_cell(std::move(cell), std::move(facets));
            out.cell_keys.push_back({s, d});
        }
    }
    out.complex.validate();
    require_internal(out.complex.euler() == euler_census(t, SkeletonKind::hatted),
                     "component census does not match the built complex");
    return out;
}

SkeletonModel build_skeleton(const StarTriangulation& t, size_t rank_cap) {
    size_t rank = t.polytope().ambient_rank();
    std::vector<std::pair<IntVec, Rat>> raw;
    for (size_t vid : boundary_vertex_ids(t)) raw.push_back({t.vertices()[vid], Rat(0)});
    SkeletonModel out;
    out.arrangement = torus_arrangement(rank, raw, rank_cap);
    skeleton_cells(t, out);
    return out;
}

Int euler_census(const StarTriangulation& t, SkeletonKind which) {
    Int total = 0;
    for (size_t s : t.boundary_part()) {
        FiberGroup g = fiber_group(t, s);
        if (which == SkeletonKind::skeleton && g.torus_rank != 0) continue;
        total += Int(parity(t.simplices()[s].dim)) * Int(g.component_count());
    }
    return total;
}

namespace {

struct FaceData {
    IntMat basis{0, 0};                      // rows: Hermite basis of the face span lattice
    std::set<HyperplaneClass> classes;
    TorusArrangement arr;
    std::vector<std::pair<size_t, int>> gm;  // image cell and degree per ambient cell
};

RatVec barycenter(const StarTriangulation& t, size_t s) {
    const auto& ids = t.simplices()[s].vertex_ids;
    RatVec b(t.polytope().ambient_rank());
    for (size_t vid : ids)
        for (size_t j = 0; j < b.size(); ++j) b[j] += Rat(t.vertices()[vid][j], Int(ids.size()));
    return b;
}

IntVec pull_normal(const IntVec& u, const IntMat& rows) {
    IntVec out(rows.cols());
    for (size_t j = 0; j < rows.cols(); ++j) {
        Int acc = 0;
        for (size_t i = 0; i < rows.rows(); ++i) acc += u[i] * rows(i, j);
        out[j] = acc;
    }
    return out;
}

// image cell and orientation degree for every cell of a stabilized cellular
// projection src -> tgt given by theta -> rows * theta
std::vector<std::pair<size_t, int>> cell_map(const RationalCellComplex& src,
                                             const RationalCellComplex& tgt, const IntMat& rows) {
    std::vector<std::pair<size_t, int>> out(src.size());
    parallel_for(src.size(), [&](size_t i) {
        auto img = image_chart(rows, src.cell(i).chart);
        auto found = tgt.find(affine_rank(img), canonical_shift(img));
        require_internal(found.has_value(), "stable image misses the face complex");
        out[i] = {*found, map_degree(rows, src.cell(i).chart, img)};
    });
    return out;
}

}  // namespace

QuotientSkeletonModel build_quotient_skeleton(const StarTriangulation& t, const RationalCone& k,
                                              size_t rank_cap, size_t rounds_cap) {
    check_cone_assumptions(t, k);
    size_t rank = t.polytope().ambient_rank();
    auto order = by_dim(t);

    QuotientSkeletonModel out;
    std::map<size_t, FaceData> faces;
    for (size_t s : order) {
        const ConeFace& f = k.minimal_face(barycenter(t, s));
        out.carrier[s] = f.id;
        if (!faces.count(f.id)) {
            FaceData fd;
            fd.basis = f.span_lattice_basis;
            require_internal(fd.basis.rows() > 0, "carrier face has no span");
            faces.emplace(f.id, std::move(fd));
        }
    }

    // every face torus is seeded with the face coordinates of the boundary
    // vertices its strata can use, so the subgroup walls are present
    auto bverts = boundary_vertex_ids(t);
    for (auto& [fid, fd] : faces)
        for (size_t vid : bverts) {
            IntVec a;
            if (integer_row_solve(fd.basis, t.vertices()[vid], a))
                for (const auto& c : split_class(a, Rat(0))) fd.classes.insert(c);
        }

    // coordinate changes across stratum facets whose carrier face drops
    std::map<std::pair<size_t, size_t>, IntMat> change;
    for (size_t s : order)
        for (const auto& [f, sgn] : t.boundary_facets(s)) {
            size_t big = out.carrier[s], small = out.carrier[f];
            if (big == small || change.count({big, small})) continue;
            const IntMat& hb = faces[big].basis;
            const IntMat& hs = faces[small].basis;
            IntMat c(hs.rows(), hb.rows());
            for (size_t i = 0; i < hs.rows(); ++i) {
                IntVec x;
                require_internal(integer_row_solve(hb, hs.row(i), x),
                                 "face span lattices are not nested");
                c.set_row(i, x);
            }
            change.emplace(std::pair<size_t, size_t>{big, small}, std::move(c));
        }

    std::set<HyperplaneClass> global;
    for (size_t vid : bverts)
        for (const auto& c : split_class(t.vertices()[vid], Rat(0))) global.insert(c);

    auto rebuild = [&](const std::set<HyperplaneClass>& cls, size_t r) {
        return torus_arrangement(r, as_raw(cls), rank_cap);
    };
    TorusArrangement ga = rebuild(global, rank);
    for (const auto& c : ga.classes) global.insert(c);
    for (auto& [fid, fd] : faces) {
        fd.arr = rebuild(fd.classes, fd.basis.rows());
        for (const auto& c : fd.arr.classes) fd.classes.insert(c);
    }

    // joint refinement: push the walls of every image polytope forward along
    // each projection, pull every target wall back, rebuild what grew
    bool stable = false;
    while (out.rounds < rounds_cap && !stable) {
        ++out.rounds;
        bool grew = false;
        for (auto& [fid, fd] : faces) {
            for (size_t i = 0; i < ga.complex.size(); ++i)
                grew |= insert_hull_classes(image_points(fd.basis, ga.complex.cell(i).chart),
                                            fd.classes);
            for (const auto& cls : fd.classes)
                for (const auto& c : split_class(pull_normal(cls.normal, fd.basis), cls.offset))
                    grew |= global.insert(c).second;
        }
        for (const auto& [pr, cm] : change) {
            FaceData& src = faces[pr.first];
            FaceData& tgt = faces[pr.second];
            for (size_t i = 0; i < src.arr.complex.size(); ++i)
                grew |= insert_hull_classes(image_points(cm, src.arr.complex.cell(i).chart),
                                            tgt.classes);
            for (const auto& cls : tgt.classes)
                for (const auto& c : split_class(pull_normal(cls.normal, cm), cls.offset))
                    grew |= src.classes.insert(c).second;
        }
        if (!grew) {
            stable = true;
        } else {
            ga = rebuild(global, rank);
            for (const auto& c : ga.classes) global.insert(c);
            for (auto& [fid, fd] : faces) {
                fd.arr = rebuild(fd.classes, fd.basis.rows());
                for (const auto& c : fd.arr.classes) fd.classes.insert(c);
            }
        }
    }
    if (!stable)
        fail(ErrorCode::CellularizationDidNotStabilize,
             "face projections did not become cellular within the round cap");

    for (auto& [fid, fd] : faces) fd.gm = cell_map(ga.complex, fd.arr.complex, fd.basis);
    std::map<std::pair<size_t, size_t>, std::vector<std::pair<size_t, int>>> fm;
    for (const auto& [pr, cm] : change)
        fm.emplace(pr, cell_map(faces[pr.first].arr.complex, faces[pr.second].arr.complex, cm));

    // per stratum: the pushed fiber must coincide with the subgroup complex
    // cut out by the face coordinates of its vertices, and the identification
    // must be a quotient by connected fibers
    std::vector<std::set<size_t>> images(order.size());
    for (size_t i = 0; i < order.size(); ++i) {
        size_t s = order[i];
        FaceData& fd = faces[out.carrier[s]];
        auto strat = subgroup_cells(ga, vertex_conditions(t, s), RatVec(rank));
        for (size_t c : strat) images[i].insert(fd.gm[c].first);

        std::vector<IntVec> fconds;
        for (size_t vid : t.simplices()[s].vertex_ids) {
            IntVec a;
            require_internal(integer_row_solve(fd.basis, t.vertices()[vid], a),
                             "stratum vertex escapes its carrier lattice");
            fconds.push_back(a);
        }
        auto expect = subgroup_cells(fd.arr, fconds, RatVec(fd.basis.rows()));
        require_internal(images[i] == std::set<size_t>(expect.begin(), expect.end()),
                         "pushed stratum misses its subgroup complex");

        CellularMap m;
        m.source = subcomplex(ga.complex, strat);
        m.target = fd.arr.complex;
        for (size_t c : strat) {
            m.assignment.push_back(fd.gm[c].first);
            m.degree.push_back(fd.gm[c].second);
        }
        m.build_chain();
        quotient_by_cellular_map(m);
    }

    // assembly; base facets whose fiber projection drops dimension leave the
    // boundary chain, which the final chain-map validation re-checks
    std::map<std::pair<size_t, size_t>, size_t> made;
    for (size_t i = 0; i < order.size(); ++i) {
        size_t s = order[i];
        const TriSimplex& simp = t.simplices()[s];
        FaceData& fd = faces[out.carrier[s]];
        out.census[s] = images[i].size();
        auto below = t.boundary_facets(s);
        for (size_t c : images[i]) {
            const CWCell& fc = fd.arr.complex.cell(c);
            CWCell cell;
            cell.dim = simp.dim + fc.dim;
            cell.base = s;
            cell.fiber = c;
            cell.chart = product_chart(t, s, fc.chart);
            std::vector<std::pair<size_t, int>> facets;
            for (const auto& [d, sgn] : fd.arr.complex.facets_of(c))
                facets.push_back({made.at({s, d}), parity(simp.dim) * sgn});
            for (const auto& [f, sgn] : below) {
                size_t img = c;
                int deg = 1;
                if (out.carrier[f] != out.carrier[s]) {
                    const auto& tbl = fm.at({out.carrier[s], out.carrier[f]});
                    img = tbl[c].first;
                    deg = tbl[c].second;
                }
                if (deg == 0) continue;
                facets.push_back({made.at({f, img}), sgn * deg});
            }
            made[{s, c}] = out.complex.add_cell(std::move(cell), std::move(facets));
            out.cell_keys.push_back({s, c});
        }
    }
    out.complex.validate();

    out.refined.arrangement = ga;
    skeleton_cells(t, out.refined);

    CellularMap m;
    m.source = out.refined.complex;
    m.target = out.complex;
    for (size_t i = 0; i < out.refined.complex.size(); ++i) {
        auto [s, c] = out.refined.cell_keys[i];
        FaceData& fd = faces[out.carrier[s]];
        size_t img = fd.gm[c].first;
        m.assignment.push_back(made.at({s, img}));
        IntMat b(2 * rank, 2 * rank);
        for (size_t j = 0; j < rank; ++j) b(j, j) = 1;
        for (size_t r = 0; r < fd.basis.rows(); ++r)
            for (size_t j = 0; j < rank; ++j) b(rank + r, rank + j) = fd.basis(r, j);
        m.degree.push_back(
            map_degree(b, m.source.cell(i).chart, m.target.cell(made.at({s, img})).chart));
    }
    m.build_chain();
    m.validate();
    out.quotient = std::move(m);
    return out;
}

}  // namespace skelet
