#include "skelet/arrangement.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "skelet/errors.hpp"
#include "skelet/geometry.hpp"
#include "skelet/polytope.hpp"

namespace skelet {

std::vector<HyperplaneClass> split_class(const IntVec& v, const Rat& q) {
    Int content = 0;
    for (const auto& x : v) content = gcd(content, x);
    if (content == 0) fail(ErrorCode::AssumptionViolation, "hyperplane class with zero normal");

    IntVec u = primitive(v);
    bool flip = false;
    for (const auto& x : u) {
        if (x == 0) continue;
        flip = x < 0;
        break;
    }
    if (flip)
        for (auto& x : u) x = -x;

    std::vector<HyperplaneClass> out;
    for (Int j = 0; j < content; ++j) {
        Rat o = mod1((q + Rat(j)) / Rat(content));
        out.push_back({u, flip ? mod1(-o) : o});
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<HyperplaneClass> normalize_classes(size_t rank,
                                               const std::vector<std::pair<IntVec, Rat>>& raw) {
    std::set<HyperplaneClass> classes;
    for (size_t i = 0; i < rank; ++i) {
        IntVec e(rank, Int(0));
        e[i] = 1;
        classes.insert({e, Rat(0)});
    }
    for (const auto& [v, q] : raw) {
        require_internal(v.size() == rank, "hyperplane normal of the wrong rank");
        for (auto& c : split_class(v, q)) classes.insert(c);
    }
    return {classes.begin(), classes.end()};
}

bool TorusArrangement::has_class(const HyperplaneClass& c) const {
    return std::binary_search(classes.begin(), classes.end(), c);
}

std::vector<RatVec> canonical_shift(const std::vector<RatVec>& verts) {
    require_internal(!verts.empty(), "canonical shift of an empty chart");
    size_t n = verts[0].size();
    RatVec shift(n);
    for (size_t j = 0; j < n; ++j) {
        Rat m = verts[0][j];
        for (const auto& v : verts) m = std::min(m, v[j]);
        shift[j] = Rat(floor_rat(m));
    }
    std::vector<RatVec> out;
    for (const auto& v : verts) {
        RatVec w(n);
        for (size_t j = 0; j < n; ++j) w[j] = v[j] - shift[j];
        out.push_back(std::move(w));
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

struct Translate {
    IntVec normal;
    Rat level;
};

// affine hyperplane translates of the classes meeting the fundamental cube
std::vector<Translate> cube_translates(size_t rank, const std::vector<HyperplaneClass>& classes) {
    std::vector<Translate> out;
    for (const auto& c : classes) {
        Rat lo = 0, hi = 0;
        for (const auto& x : c.normal) {
            if (x < 0) lo += Rat(x);
            if (x > 0) hi += Rat(x);
        }
        for (Int z = ceil_rat(lo - c.offset); z <= floor_rat(hi - c.offset); ++z)
            out.push_back({c.normal, c.offset + Rat(z)});
    }
    return out;
}

struct Region {
    RatMat lhs{0, 0};
    RatVec rhs;
    std::vector<RatVec> verts;
};

Region with_halfspace(const Region& r, const RatVec& normal, const Rat& bound) {
    Region out;
    out.lhs = RatMat(r.lhs.rows() + 1, r.lhs.cols());
    for (size_t i = 0; i < r.lhs.rows(); ++i) out.lhs.set_row(i, r.lhs.row(i));
    out.lhs.set_row(r.lhs.rows(), normal);
    out.rhs = r.rhs;
    out.rhs.push_back(bound);
    out.verts = polytope_vertices(out.lhs, out.rhs);
    return out;
}

std::vector<Region> top_regions(size_t rank, const std::vector<Translate>& translates) {
    Region cube;
    cube.lhs = RatMat(2 * rank, rank);
    cube.rhs = RatVec(2 * rank);
    for (size_t i = 0; i < rank; ++i) {
        cube.lhs(2 * i, i) = 1;
        cube.rhs[2 * i] = 1;
        cube.lhs(2 * i + 1, i) = -1;
        cube.rhs[2 * i + 1] = 0;
    }
    cube.verts = polytope_vertices(cube.lhs, cube.rhs);

    std::vector<Region> regions = {cube};
    for (const auto& t : translates) {
        RatVec normal(t.normal.size());
        for (size_t j = 0; j < t.normal.size(); ++j) normal[j] = Rat(t.normal[j]);
        RatVec negated(normal.size());
        for (size_t j = 0; j < normal.size(); ++j) negated[j] = -normal[j];

        std::vector<Region> next;
        for (auto& r : regions) {
            bool below = false, above = false;
            for (const auto& v : r.verts) {
                Rat val = 0;
                for (size_t j = 0; j < v.size(); ++j) val += normal[j] * v[j];
                if (val < t.level) below = true;
                if (val > t.level) above = true;
            }
            if (below && above) {
                next.push_back(with_halfspace(r, normal, t.level));
                next.push_back(with_halfspace(r, negated, -t.level));
            } else {
                next.push_back(std::move(r));
            }
        }
        regions = std::move(next);
    }
    return regions;
}

using Chart = std::vector<RatVec>;

// faces of a rational polytope via the lattice machinery on a scaled copy
std::vector<std::pair<size_t, Chart>> polytope_faces(const Chart& verts) {
    size_t n = verts[0].size();
    Int scale = 1;
    for (const auto& v : verts)
        for (const auto& x : v) scale = lcm(scale, den(x));
    std::vector<IntVec> pts;
    for (const auto& v : verts) {
        IntVec p(n);
        for (size_t j = 0; j < n; ++j) p[j] = num(v[j] * Rat(scale));
        pts.push_back(std::move(p));
    }
    auto poly = LatticePolytope::from_points(n, pts);
    require_internal(poly.discarded_points().empty(), "chart vertices must be extreme");

    std::vector<std::pair<size_t, Chart>> faces;
    for (const auto& f : poly.face_lattice()) {
        Chart chart;
        for (size_t vid : f.vertex_ids) {
            RatVec v(n);
            for (size_t j = 0; j < n; ++j) v[j] = Rat(poly.vertices()[vid][j]) / Rat(scale);
            chart.push_back(std::move(v));
        }
        std::sort(chart.begin(), chart.end());
        faces.push_back({f.dim, std::move(chart)});
    }
    return faces;
}

}  // namespace

TorusArrangement torus_arrangement(size_t rank, const std::vector<std::pair<IntVec, Rat>>& raw,
                                   size_t rank_cap) {
    if (rank == 0) fail(ErrorCode::AssumptionViolation, "torus of rank zero");
    if (rank > rank_cap)
        fail(ErrorCode::RankCapExceeded, "torus rank " + std::to_string(rank) +
                                             " exceeds the cap " + std::to_string(rank_cap));

    TorusArrangement a;
    a.rank = rank;
    a.classes = normalize_classes(rank, raw);

    auto regions = top_regions(rank, cube_translates(rank, a.classes));

    // breadth-first closure over canonical charts, keyed by (dim, chart)
    std::map<std::pair<size_t, Chart>, std::vector<std::pair<std::pair<size_t, Chart>, int>>>
        boundary;
    std::vector<std::pair<size_t, Chart>> queue;
    for (const auto& r : regions) {
        Chart chart = r.verts;
        std::sort(chart.begin(), chart.end());
        require_internal(canonical_shift(chart) == chart, "top region is not canonical");
        if (boundary.try_emplace({rank, chart}).second) queue.push_back({rank, chart});
    }
    while (!queue.empty()) {
        auto [dim, chart] = queue.back();
        queue.pop_back();
        if (dim == 0) continue;
        auto& entries = boundary.at({dim, chart});
        for (auto& [fdim, fchart] : polytope_faces(chart)) {
            if (fdim + 1 != dim) continue;
            int sign = incidence_sign(chart, fchart);
            auto key = std::pair{fdim, canonical_shift(fchart)};
            if (boundary.try_emplace(key).second) queue.push_back(key);
            entries.push_back({std::move(key), sign});
        }
    }

    std::map<std::pair<size_t, Chart>, size_t> ids;
    for (const auto& [key, entries] : boundary) {
        CWCell cell;
        cell.dim = key.first;
        cell.chart = key.second;
        std::vector<std::pair<size_t, int>> facets;
        for (const auto& [fkey, sign] : entries) facets.push_back({ids.at(fkey), sign});
        ids[key] = a.complex.add_cell(std::move(cell), std::move(facets));
    }
    a.complex.validate();
    return a;
}

std::vector<size_t> subgroup_cells(const TorusArrangement& a,
                                   const std::vector<IntVec>& conditions, const RatVec& theta0) {
    require_internal(theta0.size() == a.rank, "coset representative of the wrong rank");
    std::vector<Rat> targets;
    for (const auto& v : conditions) {
        require_internal(v.size() == a.rank, "condition vector of the wrong rank");
        Rat q = 0;
        for (size_t j = 0; j < a.rank; ++j) q += Rat(v[j]) * theta0[j];
        for (const auto& c : split_class(v, q))
            if (!a.has_class(c))
                fail(ErrorCode::MissingHyperplane,
                     "arrangement lacks the wall classes of a subgroup condition");
        targets.push_back(mod1(q));
    }

    std::vector<size_t> out;
    for (size_t id = 0; id < a.complex.size(); ++id) {
        const auto& chart = a.complex.cell(id).chart;
        bool inside = true;
        for (size_t ci = 0; ci < conditions.size() && inside; ++ci) {
            const auto& v = conditions[ci];
            Rat first = 0;
            for (size_t j = 0; j < a.rank; ++j) first += Rat(v[j]) * chart[0][j];
            if (mod1(first) != targets[ci]) {
                inside = false;
                break;
            }
            for (const auto& x : chart) {
                Rat val = 0;
                for (size_t j = 0; j < a.rank; ++j) val += Rat(v[j]) * x[j];
                if (val != first) {
                    inside = false;
                    break;
                }
            }
        }
        if (inside) out.push_back(id);
    }
    return out;
}

RationalCellComplex subgroup_subcomplex(const TorusArrangement& a,
                                        const std::vector<IntVec>& conditions,
                                        const RatVec& theta0) {
    return subcomplex(a.complex, subgroup_cells(a, conditions, theta0));
}

}  // namespace skelet
