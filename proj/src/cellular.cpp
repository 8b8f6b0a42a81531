#include "skelet/cellular.hpp"

#include <algorithm>
#include <set>

#include "skelet/polytope.hpp"

namespace skelet {

namespace {

bool sparse_equal(const SparseIntMat& a, const SparseIntMat& b) {
    return a.rows == b.rows && a.cols == b.cols && a.col == b.col;
}

Int common_denominator(const std::vector<RatVec>& pts) {
    Int l = 1;
    for (const auto& p : pts)
        for (const auto& x : p) l = lcm(l, den(x));
    return l;
}

std::vector<IntVec> scale_to_lattice(const std::vector<RatVec>& pts, const Int& l) {
    std::vector<IntVec> out;
    for (const auto& p : pts) {
        IntVec w(p.size());
        for (size_t j = 0; j < p.size(); ++j) w[j] = num(p[j] * l);
        out.push_back(std::move(w));
    }
    return out;
}

}  // namespace

std::vector<RatVec> image_points(const IntMat& b, const std::vector<RatVec>& chart) {
    std::vector<RatVec> out;
    for (const auto& x : chart) {
        RatVec y(b.rows());
        for (size_t i = 0; i < b.rows(); ++i) {
            Rat acc = 0;
            for (size_t j = 0; j < b.cols(); ++j) acc += Rat(b(i, j)) * x[j];
            y[i] = acc;
        }
        out.push_back(std::move(y));
    }
    return out;
}

bool insert_hull_classes(const std::vector<RatVec>& pts, std::set<HyperplaneClass>& into) {
    Int l = common_denominator(pts);
    auto h = polytope_hrep(scale_to_lattice(pts, l));
    bool grew = false;
    for (size_t i = 0; i < h.eq.rows(); ++i)
        for (const auto& c : split_class(h.eq.row(i), Rat(h.eq_rhs[i], l)))
            grew |= into.insert(c).second;
    for (const auto& hs : h.ineq)
        for (const auto& c : split_class(hs.normal, Rat(hs.offset, l)))
            grew |= into.insert(c).second;
    return grew;
}

// extreme points of the image polytope, exact
std::vector<RatVec> image_chart(const IntMat& b, const std::vector<RatVec>& chart) {
    auto pts = image_points(b, chart);
    Int l = common_denominator(pts);
    auto poly = LatticePolytope::from_points(b.rows(), scale_to_lattice(pts, l));
    std::vector<RatVec> out;
    for (const auto& v : poly.vertices()) {
        RatVec w(v.size());
        for (size_t j = 0; j < v.size(); ++j) w[j] = Rat(v[j], l);
        out.push_back(std::move(w));
    }
    return out;
}

std::vector<std::pair<IntVec, Rat>> as_raw(const std::set<HyperplaneClass>& classes) {
    std::vector<std::pair<IntVec, Rat>> raw;
    for (const auto& c : classes) raw.push_back({c.normal, c.offset});
    return raw;
}

void CellularMap::build_chain() {
    require_internal(assignment.size() == source.size() && degree.size() == source.size(),
                     "cellular map tables do not match the source");
    auto spos = [&] {
        std::vector<size_t> pos(source.size());
        std::vector<size_t> seen(source.dimension() + 1, 0);
        for (size_t i = 0; i < source.size(); ++i) pos[i] = seen[source.cell(i).dim]++;
        return pos;
    }();
    auto tpos = [&] {
        std::vector<size_t> pos(target.size());
        std::vector<size_t> seen(target.dimension() + 1, 0);
        for (size_t i = 0; i < target.size(); ++i) pos[i] = seen[target.cell(i).dim]++;
        return pos;
    }();
    auto sf = source.f_vector(), tf = target.f_vector();
    chain.clear();
    for (size_t k = 0; k < sf.size(); ++k)
        chain.push_back(SparseIntMat::zero(k < tf.size() ? tf[k] : 0, sf[k]));
    for (size_t i = 0; i < source.size(); ++i) {
        size_t t = assignment[i];
        require_internal(t < target.size(), "cellular image out of range");
        require_internal(target.cell(t).dim <= source.cell(i).dim,
                         "cellular map raises dimension");
        require_internal(degree[i] >= -1 && degree[i] <= 1, "cellular degree is not a unit");
        if (degree[i] == 0) continue;
        size_t k = source.cell(i).dim;
        require_internal(target.cell(t).dim == k, "nonzero degree across a dimension drop");
        chain[k].set(tpos[t], spos[i], degree[i]);
    }
}

void CellularMap::validate() const {
    require_internal(chain.size() == source.dimension() + 1, "chain map has the wrong shape");
    auto ds = source.chain(), dt = target.chain();
    for (size_t k = 1; k < chain.size(); ++k) {
        SparseIntMat lhs = k < dt.d.size()
                               ? sparse_product(dt.d[k], chain[k])
                               : SparseIntMat::zero(chain[k - 1].rows, chain[k].cols);
        SparseIntMat rhs = sparse_product(chain[k - 1], ds.d[k]);
        require_internal(sparse_equal(lhs, rhs), "chain map does not commute with the boundary");
    }
}

int map_degree(const IntMat& b, const std::vector<RatVec>& source_chart,
               const std::vector<RatVec>& target_chart) {
    size_t sdim = affine_rank(source_chart), tdim = affine_rank(target_chart);
    if (tdim < sdim) return 0;
    require_internal(tdim == sdim, "cellular image of higher dimension");
    auto sframe = orientation_frame(source_chart);
    auto tframe = orientation_frame(target_chart);
    size_t k = sframe.size();
    if (k == 0) return 1;
    RatMat basis(b.rows(), k);
    for (size_t c = 0; c < k; ++c)
        for (size_t r = 0; r < b.rows(); ++r) basis(r, c) = tframe[c][r];
    RatMat a(k, k);
    for (size_t c = 0; c < k; ++c) {
        RatVec rhs(b.rows());
        for (size_t r = 0; r < b.rows(); ++r) {
            Rat acc = 0;
            for (size_t j = 0; j < b.cols(); ++j) acc += Rat(b(r, j)) * sframe[c][j];
            rhs[r] = acc;
        }
        RatVec x;
        require_internal(rat_solve(basis, rhs, x), "image frame outside the target span");
        for (size_t r = 0; r < k; ++r) a(r, c) = x[r];
    }
    int s = sign(rat_det(a));
    require_internal(s != 0, "degenerate cellular image frame");
    return s;
}

CellularizedMap cellularize_map(const TorusArrangement& source, const TorusArrangement& target,
                                const IntMat& b, size_t rounds_cap) {
    if (b.rows() != target.rank || b.cols() != source.rank)
        fail(ErrorCode::AssumptionViolation, "projection matrix does not match the tori");

    std::set<HyperplaneClass> sc(source.classes.begin(), source.classes.end());
    std::set<HyperplaneClass> tc(target.classes.begin(), target.classes.end());
    CellularizedMap out;
    out.source = source;
    out.target = target;

    bool stable = false;
    while (out.rounds < rounds_cap && !stable) {
        ++out.rounds;
        bool grew = false;
        for (size_t i = 0; i < out.source.complex.size(); ++i)
            grew |= insert_hull_classes(image_points(b, out.source.complex.cell(i).chart), tc);
        for (const auto& c : tc) {
            IntVec pulled(b.cols());
            bool zero = true;
            for (size_t j = 0; j < b.cols(); ++j) {
                Int acc = 0;
                for (size_t i = 0; i < b.rows(); ++i) acc += c.normal[i] * b(i, j);
                pulled[j] = acc;
                if (acc != 0) zero = false;
            }
            if (zero) continue;
            for (const auto& sp : split_class(pulled, c.offset)) grew |= sc.insert(sp).second;
        }
        if (grew) {
            out.source = torus_arrangement(source.rank, as_raw(sc), source.rank);
            out.target = torus_arrangement(target.rank, as_raw(tc), target.rank);
        } else {
            stable = true;
        }
    }
    if (!stable)
        fail(ErrorCode::CellularizationDidNotStabilize,
             "wall refinement did not stabilize within the round cap");

    CellularMap m;
    m.source = out.source.complex;
    m.target = out.target.complex;
    for (size_t i = 0; i < m.source.size(); ++i) {
        auto img = image_chart(b, m.source.cell(i).chart);
        auto found = m.target.find(affine_rank(img), canonical_shift(img));
        require_internal(found.has_value(), "stable image misses the target complex");
        m.assignment.push_back(*found);
        m.degree.push_back(map_degree(b, m.source.cell(i).chart, img));
    }
    m.build_chain();
    m.validate();
    out.map = std::move(m);
    return out;
}

RationalCellComplex quotient_by_cellular_map(const CellularMap& m) {
    m.validate();
    std::set<size_t> image(m.assignment.begin(), m.assignment.end());
    for (size_t t : image)
        for (const auto& [f, s] : m.target.facets_of(t))
            if (!image.count(f))
                fail(ErrorCode::NonCellularIdentification,
                     "image of the identification is not closed under facets");

    std::vector<size_t> parent(m.source.size());
    for (size_t i = 0; i < parent.size(); ++i) parent[i] = i;
    auto root = [&](size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (size_t c = 0; c < m.source.size(); ++c)
        for (const auto& [d, s] : m.source.facets_of(c))
            if (m.assignment[d] == m.assignment[c]) parent[root(d)] = root(c);

    std::map<size_t, std::set<size_t>> fibers;
    for (size_t c = 0; c < m.source.size(); ++c) fibers[m.assignment[c]].insert(root(c));
    for (const auto& [t, roots] : fibers)
        if (roots.size() > 1)
            fail(ErrorCode::NonCellularIdentification,
                 "a cell fiber of the identification is disconnected");

    return subcomplex(m.target, std::vector<size_t>(image.begin(), image.end()));
}

}  // namespace skelet
