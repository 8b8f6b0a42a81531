#include "skelet/triangulation.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace skelet {

namespace {

RatVec to_rational(const IntVec& v) {
    RatVec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
    return r;
}

// Affine coordinates of x with respect to the given affinely independent
// points: x = sum lambda_i p_i with sum lambda_i = 1. Unique when it exists.
bool affine_coords(const std::vector<IntVec>& pts, const RatVec& x, RatVec& lambda) {
    size_t n = x.size();
    RatMat a(n + 1, pts.size());
    RatVec b(n + 1);
    for (size_t j = 0; j < pts.size(); ++j) {
        for (size_t i = 0; i < n; ++i) a(i, j) = Rat(pts[j][i]);
        a(n, j) = 1;
    }
    for (size_t i = 0; i < n; ++i) b[i] = x[i];
    b[n] = 1;
    return rat_solve(a, b, lambda);
}

bool barycentric_inside(const std::vector<IntVec>& pts, const RatVec& x) {
    RatVec lambda;
    if (!affine_coords(pts, x, lambda)) return false;
    for (const auto& l : lambda)
        if (l < 0) return false;
    return true;
}

Int simplex_volume(const std::vector<IntVec>& pts) {
    size_t n = pts[0].size();
    require_internal(pts.size() == n + 1, "volume of a non-full simplex");
    IntMat m(n, n);
    for (size_t i = 1; i < pts.size(); ++i)
        for (size_t j = 0; j < n; ++j) m(i - 1, j) = pts[i][j] - pts[0][j];
    Int d = int_det(m);
    return d < 0 ? Int(-d) : d;
}

std::vector<IntVec> coords_of(const std::vector<IntVec>& verts, const std::vector<size_t>& ids) {
    std::vector<IntVec> out;
    out.reserve(ids.size());
    for (size_t id : ids) out.push_back(verts[id]);
    return out;
}

// stacked facet systems of two full-dimensional cells, as A x <= b
void stack_hrep(const HRep& h, RatMat& a, RatVec& b, size_t& row) {
    for (const auto& hs : h.ineq) {
        for (size_t j = 0; j < hs.normal.size(); ++j) a(row, j) = Rat(hs.normal[j]);
        b[row] = Rat(hs.offset);
        ++row;
    }
}

}  // namespace

StarTriangulation StarTriangulation::from_simplices(LatticePolytope poly,
                                                    std::vector<IntVec> verts,
                                                    const std::vector<std::vector<size_t>>& maximal) {
    StarTriangulation t;
    t.poly_ = std::move(poly);
    t.verts_ = std::move(verts);

    size_t n = t.poly_.ambient_rank();
    IntVec zero(n, 0);
    t.origin_ = t.verts_.size();
    std::set<IntVec> seen;
    for (size_t i = 0; i < t.verts_.size(); ++i) {
        const auto& v = t.verts_[i];
        if (v.size() != n) fail(ErrorCode::AssumptionViolation, "vertex rank mismatch");
        if (!seen.insert(v).second) fail(ErrorCode::AssumptionViolation, "duplicate triangulation vertex");
        if (!t.poly_.contains(to_rational(v)))
            fail(ErrorCode::AssumptionViolation, "triangulation vertex outside the polytope");
        if (v == zero) t.origin_ = i;
    }
    if (t.origin_ == t.verts_.size()) fail(ErrorCode::OriginMissing, "0 is not a triangulation vertex");

    std::map<std::vector<size_t>, size_t> pos;
    std::vector<std::vector<size_t>> cells;
    for (auto ids : maximal) {
        std::sort(ids.begin(), ids.end());
        if (std::adjacent_find(ids.begin(), ids.end()) != ids.end() || ids.empty())
            fail(ErrorCode::NotSimplicial, "maximal cell repeats a vertex");
        for (size_t id : ids)
            if (id >= t.verts_.size()) fail(ErrorCode::AssumptionViolation, "vertex id out of range");
        if (affine_rank(coords_of(t.verts_, ids)) + 1 != ids.size())
            fail(ErrorCode::NotSimplicial, "maximal cell is affinely dependent");
        cells.push_back(ids);
        require_internal(ids.size() <= 8 * sizeof(unsigned) - 1, "cell too large");
        for (unsigned mask = 1; mask < (1u << ids.size()); ++mask) {
            std::vector<size_t> sub;
            for (size_t i = 0; i < ids.size(); ++i)
                if (mask & (1u << i)) sub.push_back(ids[i]);
            pos.emplace(sub, 0);
        }
    }

    for (const auto& [ids, unused] : pos) {
        TriSimplex s;
        s.vertex_ids = ids;
        s.dim = ids.size() - 1;
        s.contains_origin = std::binary_search(ids.begin(), ids.end(), t.origin_);
        t.faces_.push_back(std::move(s));
    }
    std::sort(t.faces_.begin(), t.faces_.end(), [](const TriSimplex& a, const TriSimplex& b) {
        return std::tie(a.dim, a.vertex_ids) < std::tie(b.dim, b.vertex_ids);
    });
    for (size_t i = 0; i < t.faces_.size(); ++i) {
        t.index_[t.faces_[i].vertex_ids] = i;
        if (!t.faces_[i].contains_origin) t.boundary_.push_back(i);
    }
    std::set<size_t> tops;
    for (const auto& ids : cells) {
        t.maximal_.push_back(t.index_.at(ids));
        std::vector<size_t> opp;
        for (size_t id : ids)
            if (id != t.origin_) opp.push_back(id);
        if (opp.size() < ids.size()) tops.insert(t.index_.at(opp));
    }
    std::sort(t.maximal_.begin(), t.maximal_.end());
    t.maximal_.erase(std::unique(t.maximal_.begin(), t.maximal_.end()), t.maximal_.end());
    if (t.maximal_.size() != cells.size())
        fail(ErrorCode::AssumptionViolation, "duplicate maximal cell");
    t.boundary_top_.assign(tops.begin(), tops.end());
    return t;
}

size_t StarTriangulation::simplex_id(const std::vector<size_t>& vertex_ids) const {
    auto it = index_.find(vertex_ids);
    require_internal(it != index_.end(), "unknown simplex");
    return it->second;
}

std::vector<std::pair<size_t, int>> StarTriangulation::boundary_facets(size_t s) const {
    const auto& ids = faces_[s].vertex_ids;
    std::vector<std::pair<size_t, int>> out;
    if (ids.size() == 1) return out;
    int sign = 1;
    for (size_t i = 0; i < ids.size(); ++i, sign = -sign) {
        std::vector<size_t> sub;
        for (size_t j = 0; j < ids.size(); ++j)
            if (j != i) sub.push_back(ids[j]);
        out.emplace_back(index_.at(sub), sign);
    }
    return out;
}

TriangulationReport StarTriangulation::validate() const {
    size_t n = poly_.ambient_rank();
    if (poly_.dim() != n) fail(ErrorCode::NotFullDimensional, "polytope is not full-dimensional");
    if (maximal_.empty()) fail(ErrorCode::GapOrOverlap, "no maximal cells");

    // star shape: each cell is the cone at 0 over a simplex inscribed in a
    // facet of the polytope
    for (size_t m : maximal_) {
        const auto& ids = faces_[m].vertex_ids;
        if (ids.size() != n + 1)
            fail(ErrorCode::NotSimplicial, "maximal cell is not full-dimensional");
        if (!faces_[m].contains_origin)
            fail(ErrorCode::NotStarShaped, "maximal cell misses the origin");
        bool inscribed = false;
        for (const auto& hs : poly_.hrep().ineq) {
            bool tight = true;
            for (size_t id : ids) {
                if (id == origin_) continue;
                Int v = 0;
                for (size_t j = 0; j < n; ++j) v += hs.normal[j] * verts_[id][j];
                if (v != hs.offset) { tight = false; break; }
            }
            if (tight) { inscribed = true; break; }
        }
        if (!inscribed)
            fail(ErrorCode::NotStarShaped, "cell base does not lie in a boundary facet");
    }

    std::vector<LatticePolytope> cell_polys;
    cell_polys.reserve(maximal_.size());
    for (size_t m : maximal_)
        cell_polys.push_back(LatticePolytope::from_points(n, coords_of(verts_, faces_[m].vertex_ids)));

    // cells meet in the face spanned by their common vertices
    for (size_t i = 0; i < maximal_.size(); ++i) {
        for (size_t j = i + 1; j < maximal_.size(); ++j) {
            const auto& ai = faces_[maximal_[i]].vertex_ids;
            const auto& aj = faces_[maximal_[j]].vertex_ids;
            std::vector<size_t> common;
            std::set_intersection(ai.begin(), ai.end(), aj.begin(), aj.end(),
                                  std::back_inserter(common));
            size_t rows = cell_polys[i].hrep().ineq.size() + cell_polys[j].hrep().ineq.size();
            RatMat a(rows, n);
            RatVec b(rows);
            size_t row = 0;
            stack_hrep(cell_polys[i].hrep(), a, b, row);
            stack_hrep(cell_polys[j].hrep(), a, b, row);
            auto meet = polytope_vertices(a, b);
            if (common.empty()) {
                if (!meet.empty())
                    fail(ErrorCode::GapOrOverlap, "disjoint-by-vertices cells intersect");
                continue;
            }
            auto face_pts = coords_of(verts_, common);
            for (const auto& v : meet)
                if (!barycentric_inside(face_pts, v))
                    fail(ErrorCode::GapOrOverlap, "cells intersect outside their common face");
        }
    }

    TriangulationReport rep;
    rep.maximal_cells = maximal_.size();
    rep.boundary_simplices = boundary_.size();
    for (size_t i = 0; i < maximal_.size(); ++i)
        rep.covered_volume += simplex_volume(coords_of(verts_, faces_[maximal_[i]].vertex_ids));
    if (rep.covered_volume != poly_.normalized_volume())
        fail(ErrorCode::GapOrOverlap, "cells cover " + to_string(rep.covered_volume) + " of " +
                                          to_string(poly_.normalized_volume()));
    rep.origin_interior = true;
    for (const auto& hs : poly_.hrep().ineq)
        if (hs.offset == 0) rep.origin_interior = false;
    return rep;
}

size_t StarTriangulation::carrier_simplex(const RatVec& x) const {
    for (size_t s : boundary_)
        if (barycentric_inside(coords_of(verts_, faces_[s].vertex_ids), x)) return s;
    fail(ErrorCode::PointOutsideSupport, "point misses the boundary part");
}

size_t StarTriangulation::carrier_cell(const RatVec& x) const {
    for (size_t s = 0; s < faces_.size(); ++s)
        if (barycentric_inside(coords_of(verts_, faces_[s].vertex_ids), x)) return s;
    fail(ErrorCode::PointOutsideSupport, "point misses the triangulation");
}

namespace {

Rat height_at(const StarTriangulation& t, const std::vector<Int>& values, const RatVec& x) {
    size_t s = t.carrier_cell(x);
    const auto& ids = t.simplices()[s].vertex_ids;
    std::vector<IntVec> pts;
    for (size_t id : ids) pts.push_back(t.vertices()[id]);
    RatVec lambda;
    bool ok = affine_coords(pts, x, lambda);
    require_internal(ok, "carrier simplex lost its point");
    Rat h = 0;
    for (size_t i = 0; i < ids.size(); ++i) h += lambda[i] * Rat(values[ids[i]]);
    return h;
}

// exact minimum of h(v) - (affine extension of h over cell)(v) over maximal
// cells and vertices outside them; 1 when there is no such pair
Rat min_slack(const StarTriangulation& t, const std::vector<Int>& values) {
    std::optional<Rat> margin;
    for (size_t m : t.maximal_cells()) {
        const auto& ids = t.simplices()[m].vertex_ids;
        auto pts = coords_of(t.vertices(), ids);
        for (size_t v = 0; v < t.vertices().size(); ++v) {
            if (std::binary_search(ids.begin(), ids.end(), v)) continue;
            RatVec lambda;
            bool ok = affine_coords(pts, to_rational(t.vertices()[v]), lambda);
            require_internal(ok, "maximal cell is not full-dimensional");
            Rat ext = 0;
            for (size_t i = 0; i < ids.size(); ++i) ext += lambda[i] * Rat(values[ids[i]]);
            Rat slack = Rat(values[v]) - ext;
            if (!margin || slack < *margin) margin = slack;
        }
    }
    return margin ? *margin : Rat(1);
}

}  // namespace

RegularityResult check_regularity(const StarTriangulation& t) {
    t.validate();
    RegularityResult out;

    std::vector<size_t> columns;
    std::vector<size_t> col_of(t.vertices().size(), size_t(-1));
    for (size_t v = 0; v < t.vertices().size(); ++v) {
        if (v == t.origin_id()) continue;
        col_of[v] = columns.size();
        columns.push_back(v);
    }

    // interior walls: codimension-1 faces shared by exactly two cells
    std::map<std::vector<size_t>, std::vector<std::pair<size_t, size_t>>> walls;
    for (size_t m : t.maximal_cells()) {
        const auto& ids = t.simplices()[m].vertex_ids;
        for (size_t i = 0; i < ids.size(); ++i) {
            std::vector<size_t> wall;
            for (size_t j = 0; j < ids.size(); ++j)
                if (j != i) wall.push_back(ids[j]);
            walls[wall].emplace_back(m, ids[i]);
        }
    }

    std::vector<RatVec> rows;
    RatVec rhs_list;
    for (const auto& [wall, sides] : walls) {
        require_internal(sides.size() <= 2, "wall shared by more than two cells");
        if (sides.size() != 2) continue;
        std::vector<size_t> pts = wall;
        pts.push_back(sides[0].second);
        pts.push_back(sides[1].second);
        size_t n = t.polytope().ambient_rank();
        IntMat mh(n + 1, pts.size());
        for (size_t j = 0; j < pts.size(); ++j) {
            for (size_t i = 0; i < n; ++i) mh(i, j) = t.vertices()[pts[j]][i];
            mh(n, j) = 1;
        }
        IntMat ker = integer_kernel(mh);
        require_internal(ker.rows() == 1, "wall dependence is not one-dimensional");
        IntVec alpha = ker.row(0);
        Int& a1 = alpha[pts.size() - 2];
        Int& a2 = alpha[pts.size() - 1];
        require_internal(a1 != 0 && a2 != 0 && sign(a1) == sign(a2),
                         "wall dependence has the wrong support");
        if (a1 < 0)
            for (auto& x : alpha) x = -x;
        // alpha . h >= 1, written as -alpha . h <= -1; the origin column is
        // pinned to h(0) = 0 and simply dropped
        RatVec row(columns.size(), Rat(0));
        for (size_t j = 0; j < pts.size(); ++j)
            if (pts[j] != t.origin_id()) row[col_of[pts[j]]] -= Rat(alpha[j]);
        rows.push_back(std::move(row));
        rhs_list.push_back(Rat(-1));
    }
    for (size_t j = 0; j < columns.size(); ++j) {
        RatVec row(columns.size(), Rat(0));
        row[j] = Rat(-1);
        rows.push_back(std::move(row));
        rhs_list.push_back(Rat(0));
    }

    out.system.columns = columns;
    out.system.lhs = RatMat(rows.size(), columns.size());
    out.system.rhs = rhs_list;
    for (size_t i = 0; i < rows.size(); ++i) out.system.lhs.set_row(i, rows[i]);

    auto lp = lp_feasible(out.system.lhs, out.system.rhs);
    if (!lp.feasible) {
        require_internal(farkas_valid(out.system.lhs, out.system.rhs, lp.farkas),
                         "infeasibility witness failed its recheck");
        out.farkas = lp.farkas;
        return out;
    }

    Int scale = 1;
    for (const auto& q : lp.point) scale = lcm(scale, den(q));
    std::vector<Int> values(t.vertices().size(), Int(0));
    for (size_t j = 0; j < columns.size(); ++j) values[columns[j]] = num(lp.point[j] * Rat(scale));

    // h must be integral at every lattice point, not only at vertices
    Int scale2 = 1;
    auto lattice = t.polytope().lattice_points();
    for (const auto& p : lattice) scale2 = lcm(scale2, den(height_at(t, values, to_rational(p))));
    if (scale2 != 1)
        for (auto& v : values) v *= scale2;

    HeightCertificate cert;
    cert.values = std::move(values);
    cert.margin = min_slack(t, cert.values);
    require_internal(cert.margin > 0, "certificate produced a non-positive margin");
    out.certificate = std::move(cert);
    return out;
}

bool verify_certificate(const StarTriangulation& t, const HeightCertificate& cert) {
    t.validate();
    if (cert.values.size() != t.vertices().size()) return false;
    if (cert.margin <= 0) return false;
    if (cert.values[t.origin_id()] != 0) return false;
    for (const auto& v : cert.values)
        if (v < 0) return false;
    for (const auto& p : t.polytope().lattice_points())
        if (!is_integer(height_at(t, cert.values, to_rational(p)))) return false;
    return min_slack(t, cert.values) >= cert.margin;
}

StarTriangulation generate_star_triangulation(const LatticePolytope& poly,
                                              const std::vector<std::pair<IntVec, Rat>>& heights,
                                              bool allow_ties) {
    size_t n = poly.ambient_rank();
    if (poly.dim() != n) fail(ErrorCode::NotFullDimensional, "polytope is not full-dimensional");
    IntVec zero(n, 0);
    if (!poly.contains(to_rational(zero))) fail(ErrorCode::OriginMissing, "0 is not in the polytope");

    std::map<IntVec, Rat> height;
    for (const auto& [p, h] : heights) {
        if (!poly.contains(to_rational(p)))
            fail(ErrorCode::AssumptionViolation, "requested point outside the polytope");
        if (!height.emplace(p, h).second)
            fail(ErrorCode::AssumptionViolation, "requested point repeated");
    }
    auto it = height.find(zero);
    if (it == height.end()) fail(ErrorCode::OriginMissing, "0 is not among the requested points");
    if (it->second != 0) fail(ErrorCode::AssumptionViolation, "the origin's height must be 0");
    for (const auto& v : poly.vertices())
        if (v != zero && !height.count(v))
            fail(ErrorCode::AssumptionViolation, "polytope vertex missing from the requested points");

    std::vector<std::pair<IntVec, std::string>> dropped;
    std::set<IntVec> usable;
    for (const auto& [p, h] : height) {
        if (p == zero) continue;
        bool boundary = false;
        for (const auto& hs : poly.hrep().ineq) {
            if (hs.offset == 0) continue;  // facet through the origin
            Int v = 0;
            for (size_t j = 0; j < n; ++j) v += hs.normal[j] * p[j];
            if (v == hs.offset) { boundary = true; break; }
        }
        if (boundary)
            usable.insert(p);
        else
            dropped.emplace_back(p, "not on a boundary facet avoiding the origin");
    }

    std::set<IntVec> used, touched;
    std::vector<std::vector<IntVec>> cells_pts;
    for (const auto& hs : poly.hrep().ineq) {
        if (hs.offset == 0) continue;
        std::vector<IntVec> q;
        for (const auto& p : usable) {
            Int v = 0;
            for (size_t j = 0; j < n; ++j) v += hs.normal[j] * p[j];
            if (v == hs.offset) q.push_back(p);
        }
        Int d = 1;
        for (const auto& p : q) d = lcm(d, den(height.at(p)));
        std::vector<IntVec> lifted;
        for (const auto& p : q) {
            IntVec l = p;
            l.push_back(num(height.at(p) * Rat(d)));
            lifted.push_back(std::move(l));
        }
        HRep hr = polytope_hrep(lifted);
        bool affine = false;
        for (size_t i = 0; i < hr.eq.rows(); ++i)
            if (hr.eq(i, n) != 0) affine = true;

        std::vector<std::vector<IntVec>> lower;
        if (affine) {
            lower.push_back(q);
        } else {
            for (const auto& face : hr.ineq) {
                if (face.normal[n] >= 0) continue;
                std::vector<IntVec> c;
                for (size_t i = 0; i < q.size(); ++i) {
                    Int v = 0;
                    for (size_t j = 0; j <= n; ++j) v += face.normal[j] * lifted[i][j];
                    if (v == face.offset) c.push_back(q[i]);
                }
                lower.push_back(std::move(c));
            }
        }

        for (const auto& c : lower) {
            for (const auto& p : c) touched.insert(p);
            auto cell = LatticePolytope::from_points(n, c);
            require_internal(cell.dim() == n - 1, "lower hull cell has the wrong dimension");
            if (!allow_ties && cell.vertices().size() != n)
                fail(ErrorCode::DegenerateHeights, "tied heights need the pulling refinement");
            size_t top = cell.face_lattice().size() - 1;
            for (const auto& simplex : cell.pulling_triangulation(top)) {
                std::vector<IntVec> pts;
                for (size_t id : simplex) pts.push_back(cell.vertices()[id]);
                for (const auto& p : pts) used.insert(p);
                cells_pts.push_back(std::move(pts));
            }
        }
    }

    for (const auto& p : usable) {
        if (used.count(p)) continue;
        dropped.emplace_back(p, touched.count(p) ? "absorbed into a lower hull cell"
                                                 : "lifted strictly above the lower hull");
    }

    std::vector<IntVec> verts(used.begin(), used.end());
    verts.push_back(zero);
    std::sort(verts.begin(), verts.end());
    std::map<IntVec, size_t> id_of;
    for (size_t i = 0; i < verts.size(); ++i) id_of[verts[i]] = i;
    std::vector<std::vector<size_t>> maximal;
    for (const auto& pts : cells_pts) {
        std::vector<size_t> ids = {id_of.at(zero)};
        for (const auto& p : pts) ids.push_back(id_of.at(p));
        maximal.push_back(std::move(ids));
    }

    auto t = StarTriangulation::from_simplices(poly, std::move(verts), maximal);
    t.dropped_ = std::move(dropped);
    t.validate();
    return t;
}

StarTriangulation generate_star_triangulation(const LatticePolytope& poly,
                                              const std::vector<IntVec>& points,
                                              const std::string& rule,
                                              unsigned long seed) {
    std::vector<std::pair<IntVec, Rat>> heights;
    if (rule == "squared-norm") {
        for (const auto& p : points) {
            Int s = 0;
            for (const auto& x : p) s += x * x;
            heights.emplace_back(p, Rat(s));
        }
    } else if (rule == "random") {
        std::mt19937_64 rng(seed);
        Int bound = Int(8 * points.size() * points.size()) + 1;
        for (const auto& p : points) {
            bool zero = std::all_of(p.begin(), p.end(), [](const Int& x) { return x == 0; });
            heights.emplace_back(p, zero ? Rat(0) : Rat(Int(rng()) % bound));
        }
    } else {
        fail(ErrorCode::AssumptionViolation, "unknown height rule: " + rule);
    }
    return generate_star_triangulation(poly, heights);
}

}  // namespace skelet
