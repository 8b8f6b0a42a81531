#include "skelet/complex.hpp"

#include <algorithm>
#include <set>

#include "skelet/errors.hpp"
#include "skelet/geometry.hpp"

namespace skelet {

namespace {

std::vector<RatVec> normalized_chart(std::vector<RatVec> chart) {
    std::sort(chart.begin(), chart.end());
    chart.erase(std::unique(chart.begin(), chart.end()), chart.end());
    return chart;
}

}  // namespace

size_t RationalCellComplex::add_cell(CWCell cell, std::vector<std::pair<size_t, int>> facets) {
    require_internal(!cell.chart.empty(), "cell with an empty chart");
    cell.chart = normalized_chart(std::move(cell.chart));
    for (const auto& [f, s] : facets) {
        require_internal(f < cells_.size(), "facet added after its cell");
        require_internal(cells_[f].dim + 1 == cell.dim, "facet dimension mismatch");
        require_internal(s == 1 || s == -1, "incidence signs are +1 or -1");
    }
    size_t id = cells_.size();
    auto [it, fresh] = index_.insert({{cell.dim, cell.chart}, id});
    require_internal(fresh, "duplicate canonical cell key");
    cells_.push_back(std::move(cell));
    facets_.push_back(std::move(facets));
    return id;
}

size_t RationalCellComplex::dimension() const {
    size_t d = 0;
    for (const auto& c : cells_) d = std::max(d, c.dim);
    return d;
}

const CWCell& RationalCellComplex::cell(size_t id) const {
    require_internal(id < cells_.size(), "cell id out of range");
    return cells_[id];
}

const std::vector<std::pair<size_t, int>>& RationalCellComplex::facets_of(size_t id) const {
    require_internal(id < facets_.size(), "cell id out of range");
    return facets_[id];
}

std::optional<size_t> RationalCellComplex::find(size_t dim,
                                                const std::vector<RatVec>& chart) const {
    auto it = index_.find({dim, normalized_chart(chart)});
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::vector<std::vector<size_t>> RationalCellComplex::cells_by_dim() const {
    std::vector<std::vector<size_t>> by_dim(cells_.empty() ? 1 : dimension() + 1);
    for (size_t i = 0; i < cells_.size(); ++i) by_dim[cells_[i].dim].push_back(i);
    return by_dim;
}

std::vector<size_t> RationalCellComplex::f_vector() const {
    std::vector<size_t> f;
    for (const auto& ids : cells_by_dim()) f.push_back(ids.size());
    return f;
}

Int RationalCellComplex::euler() const {
    Int e = 0;
    for (const auto& c : cells_) e += c.dim % 2 == 0 ? 1 : -1;
    return e;
}

bool RationalCellComplex::is_regular() const {
    for (const auto& fs : facets_) {
        std::set<size_t> seen;
        for (const auto& [f, s] : fs)
            if (!seen.insert(f).second) return false;
    }
    return true;
}

ChainComplex RationalCellComplex::chain() const {
    auto by_dim = cells_by_dim();
    std::vector<size_t> pos(cells_.size());
    for (const auto& ids : by_dim)
        for (size_t i = 0; i < ids.size(); ++i) pos[ids[i]] = i;

    ChainComplex c;
    for (const auto& ids : by_dim) c.sizes.push_back(ids.size());
    c.d.push_back(SparseIntMat::zero(0, c.sizes[0]));
    for (size_t k = 1; k < c.sizes.size(); ++k) {
        SparseIntMat m = SparseIntMat::zero(c.sizes[k - 1], c.sizes[k]);
        for (size_t col = 0; col < by_dim[k].size(); ++col) {
            std::map<size_t, Int> acc;
            for (const auto& [f, s] : facets_[by_dim[k][col]]) acc[pos[f]] += s;
            for (const auto& [r, v] : acc)
                if (v != 0) m.col[col].push_back({r, v});
        }
        c.d.push_back(std::move(m));
    }
    return c;
}

void RationalCellComplex::validate() const {
    if (cells_.empty()) return;
    size_t ambient = cells_[0].chart[0].size();
    for (const auto& c : cells_) {
        for (const auto& v : c.chart)
            require_internal(v.size() == ambient, "charts live in mixed ambient spaces");
        require_internal(affine_rank(c.chart) == c.dim, "chart dimension mismatch");
    }
    auto ch = chain();
    for (size_t k = 2; k < ch.d.size(); ++k)
        if (!sparse_is_zero(sparse_product(ch.d[k - 1], ch.d[k])))
            fail(ErrorCode::NotAComplex,
                 "boundary of boundary is nonzero in degree " + std::to_string(k));
}

RationalCellComplex subcomplex(const RationalCellComplex& c, const std::vector<size_t>& ids) {
    std::vector<size_t> sorted = ids;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::map<size_t, size_t> remap;
    RationalCellComplex out;
    for (size_t id : sorted) {
        std::vector<std::pair<size_t, int>> facets;
        for (const auto& [f, s] : c.facets_of(id)) {
            auto it = remap.find(f);
            require_internal(it != remap.end(), "selection is not closed under facets");
            facets.push_back({it->second, s});
        }
        remap[id] = out.add_cell(c.cell(id), std::move(facets));
    }
    return out;
}

RationalCellComplex product_with_simplex(const StarTriangulation& t, size_t simplex,
                                         const RationalCellComplex& fiber) {
    require_internal(simplex < t.simplices().size(), "simplex id out of range");

    std::set<size_t> closure;
    std::vector<size_t> queue = {simplex};
    while (!queue.empty()) {
        size_t s = queue.back();
        queue.pop_back();
        if (!closure.insert(s).second) continue;
        for (const auto& [f, sign] : t.boundary_facets(s)) queue.push_back(f);
    }
    std::vector<size_t> base(closure.begin(), closure.end());
    std::stable_sort(base.begin(), base.end(), [&](size_t a, size_t b) {
        return t.simplices()[a].dim < t.simplices()[b].dim;
    });

    size_t rank = t.polytope().ambient_rank();
    RationalCellComplex out;
    std::map<std::pair<size_t, size_t>, size_t> made;
    for (size_t a : base) {
        const auto& av = t.simplices()[a].vertex_ids;
        size_t adim = t.simplices()[a].dim;
        int fiber_sign = adim % 2 == 0 ? 1 : -1;
        for (size_t b = 0; b < fiber.size(); ++b) {
            CWCell cell;
            cell.dim = adim + fiber.cell(b).dim;
            cell.base = a;
            cell.fiber = b;
            for (size_t vid : av)
                for (const auto& theta : fiber.cell(b).chart) {
                    RatVec point(rank + theta.size());
                    for (size_t j = 0; j < rank; ++j) point[j] = Rat(t.vertices()[vid][j]);
                    for (size_t j = 0; j < theta.size(); ++j) point[rank + j] = theta[j];
                    cell.chart.push_back(std::move(point));
                }
            std::vector<std::pair<size_t, int>> facets;
            for (const auto& [af, s] : t.boundary_facets(a))
                facets.push_back({made.at({af, b}), s});
            for (const auto& [bf, s] : fiber.facets_of(b))
                facets.push_back({made.at({a, bf}), fiber_sign * s});
            made[{a, b}] = out.add_cell(std::move(cell), std::move(facets));
        }
    }
    out.validate();
    return out;
}

HomologyResult homology(const RationalCellComplex& c) { return homology(c.chain()); }

HomologyResult homology_reference(const RationalCellComplex& c) {
    return homology_reference(c.chain());
}

std::vector<RatVec> orientation_frame(const std::vector<RatVec>& chart) {
    std::vector<RatVec> sorted = normalized_chart(chart);
    std::vector<RatVec> frame;
    if (sorted.empty()) return frame;
    const RatVec& v0 = sorted[0];
    for (size_t i = 1; i < sorted.size(); ++i) {
        RatVec diff(v0.size());
        for (size_t j = 0; j < v0.size(); ++j) diff[j] = sorted[i][j] - v0[j];
        RatMat next(frame.size() + 1, v0.size());
        for (size_t r = 0; r < frame.size(); ++r) next.set_row(r, frame[r]);
        next.set_row(frame.size(), diff);
        if (rat_rank(next) == frame.size() + 1) frame.push_back(std::move(diff));
    }
    return frame;
}

int incidence_sign(const std::vector<RatVec>& cell, const std::vector<RatVec>& facet) {
    auto cf = orientation_frame(cell);
    auto ff = orientation_frame(facet);
    require_internal(cf.size() == ff.size() + 1, "incidence is not one dimension down");
    size_t k = cf.size();
    size_t ambient = cell[0].size();

    auto barycenter = [&](const std::vector<RatVec>& pts) {
        RatVec b(ambient, Rat(0));
        for (const auto& p : pts)
            for (size_t j = 0; j < ambient; ++j) b[j] += p[j];
        for (size_t j = 0; j < ambient; ++j) b[j] /= Rat(Int(pts.size()));
        return b;
    };
    RatVec bc = barycenter(cell), bf = barycenter(facet);
    RatVec w(ambient);
    for (size_t j = 0; j < ambient; ++j) w[j] = bf[j] - bc[j];

    RatMat basis(ambient, k);
    for (size_t c = 0; c < k; ++c)
        for (size_t r = 0; r < ambient; ++r) basis(r, c) = cf[c][r];

    RatMat a(k, k);
    auto put = [&](size_t c, const RatVec& target) {
        RatVec x;
        bool ok = rat_solve(basis, target, x);
        require_internal(ok, "facet direction outside the cell's span");
        for (size_t r = 0; r < k; ++r) a(r, c) = x[r];
    };
    put(0, w);
    for (size_t c = 0; c < ff.size(); ++c) put(c + 1, ff[c]);

    Rat det = rat_det(a);
    require_internal(det != 0, "degenerate incidence frame");
    return sign(det);
}

}  // namespace skelet
