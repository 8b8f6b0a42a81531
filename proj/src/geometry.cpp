#include "skelet/geometry.hpp"

#include <algorithm>
#include <set>

#include "skelet/lp.hpp"

namespace skelet {

IntVec primitive(IntVec v) {
    Int g = 0;
    for (const auto& x : v) g = boost::multiprecision::gcd(g, x);
    if (g > 1)
        for (auto& x : v) x /= g;
    return v;
}

namespace {

struct Ray {
    IntVec v;
    std::set<size_t> zero;  // indices of processed constraints vanishing on v
};

Int dot_row(const IntMat& m, size_t i, const IntVec& x) {
    Int acc = 0;
    for (size_t j = 0; j < m.cols(); ++j) acc += m(i, j) * x[j];
    return acc;
}

}  // namespace

std::vector<IntVec> dd_extreme_rays(const IntMat& ineqs) {
    size_t n = ineqs.cols(), m = ineqs.rows();
    require_internal(int_rank(ineqs) == n, "inequality cone is not pointed");

    // simplicial start: n independent rows; their adjugate columns are the rays
    std::vector<size_t> base;
    {
        RatMat acc(0, n);
        std::vector<RatVec> rows;
        for (size_t i = 0; i < m && base.size() < n; ++i) {
            RatMat trial(base.size() + 1, n);
            for (size_t k = 0; k < base.size(); ++k)
                for (size_t j = 0; j < n; ++j) trial(k, j) = Rat(ineqs(base[k], j));
            for (size_t j = 0; j < n; ++j) trial(base.size(), j) = Rat(ineqs(i, j));
            if (rat_rank(trial) == base.size() + 1) base.push_back(i);
        }
    }
    IntMat a0(n, n);
    for (size_t k = 0; k < n; ++k)
        for (size_t j = 0; j < n; ++j) a0(k, j) = ineqs(base[k], j);
    Int det = int_det(a0);
    std::vector<Ray> rays;
    for (size_t j = 0; j < n; ++j) {
        // column j of adj(a0), oriented so a0 * ray = |det| e_j
        IntVec col(n);
        for (size_t i = 0; i < n; ++i) {
            IntMat sub(n - 1, n - 1);
            for (size_t r = 0, rr = 0; r < n; ++r) {
                if (r == j) continue;
                for (size_t c = 0, cc = 0; c < n; ++c) {
                    if (c == i) continue;
                    sub(rr, cc++) = a0(r, c);
                }
                ++rr;
            }
            Int cof = int_det(sub);
            if ((i + j) % 2 == 1) cof = -cof;
            col[i] = det < 0 ? Int(-cof) : cof;
        }
        Ray r;
        r.v = primitive(col);
        for (size_t k = 0; k < n; ++k)
            if (k != j) r.zero.insert(base[k]);
        rays.push_back(r);
    }

    std::set<size_t> done(base.begin(), base.end());
    for (size_t c = 0; c < m; ++c) {
        if (done.count(c)) continue;
        std::vector<Int> val(rays.size());
        for (size_t i = 0; i < rays.size(); ++i) val[i] = dot_row(ineqs, c, rays[i].v);
        std::vector<Ray> next;
        for (size_t i = 0; i < rays.size(); ++i) {
            if (val[i] > 0) next.push_back(rays[i]);
            else if (val[i] == 0) {
                next.push_back(rays[i]);
                next.back().zero.insert(c);
            }
        }
        for (size_t p = 0; p < rays.size(); ++p) {
            if (val[p] <= 0) continue;
            for (size_t q = 0; q < rays.size(); ++q) {
                if (val[q] >= 0) continue;
                std::set<size_t> common;
                std::set_intersection(rays[p].zero.begin(), rays[p].zero.end(),
                                      rays[q].zero.begin(), rays[q].zero.end(),
                                      std::inserter(common, common.end()));
                bool adjacent = true;
                for (size_t t = 0; t < rays.size() && adjacent; ++t) {
                    if (t == p || t == q) continue;
                    if (std::includes(rays[t].zero.begin(), rays[t].zero.end(),
                                      common.begin(), common.end()))
                        adjacent = false;
                }
                if (!adjacent) continue;
                Ray nr;
                nr.v.assign(n, Int(0));
                for (size_t j = 0; j < n; ++j)
                    nr.v[j] = val[p] * rays[q].v[j] - val[q] * rays[p].v[j];
                nr.v = primitive(nr.v);
                nr.zero = common;
                nr.zero.insert(c);
                next.push_back(nr);
            }
        }
        rays = next;
        done.insert(c);
    }

    std::vector<IntVec> out;
    for (const auto& r : rays) out.push_back(r.v);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<IntVec> cone_facet_normals(const std::vector<IntVec>& gens) {
    require_internal(!gens.empty(), "facet normals of an empty generator set");
    size_t n = gens[0].size();
    IntMat m(gens.size(), n);
    for (size_t i = 0; i < gens.size(); ++i)
        for (size_t j = 0; j < n; ++j) m(i, j) = gens[i][j];
    require_internal(int_rank(m) == n, "cone is not full-dimensional");
    return dd_extreme_rays(m);
}

IntMat cone_lineality(const std::vector<IntVec>& gens) {
    require_internal(!gens.empty(), "lineality of an empty generator set");
    size_t n = gens[0].size();
    // a generator lies on a line exactly when its negative is in the cone;
    // such generators span the whole lineality space
    RatMat sys(2 * n + gens.size(), gens.size());
    for (size_t j = 0; j < n; ++j)
        for (size_t i = 0; i < gens.size(); ++i) {
            sys(j, i) = Rat(gens[i][j]);
            sys(n + j, i) = Rat(-gens[i][j]);
        }
    for (size_t i = 0; i < gens.size(); ++i) sys(2 * n + i, i) = -1;
    std::vector<IntVec> in_line;
    for (size_t g = 0; g < gens.size(); ++g) {
        RatVec b(2 * n + gens.size(), Rat(0));
        for (size_t j = 0; j < n; ++j) {
            b[j] = Rat(-gens[g][j]);
            b[n + j] = Rat(gens[g][j]);
        }
        if (lp_feasible(sys, b).feasible) in_line.push_back(gens[g]);
    }
    if (in_line.empty()) return IntMat(0, n);
    IntMat rows(in_line.size(), n);
    for (size_t i = 0; i < in_line.size(); ++i)
        for (size_t j = 0; j < n; ++j) rows(i, j) = in_line[i][j];
    return saturate(n, rows);
}

HRep polytope_hrep(const std::vector<IntVec>& pts) {
    require_internal(!pts.empty(), "hull of an empty point set");
    size_t n = pts[0].size();
    HRep out;
    std::vector<IntVec> diffs;
    for (size_t i = 1; i < pts.size(); ++i) {
        IntVec d(n);
        for (size_t j = 0; j < n; ++j) d[j] = pts[i][j] - pts[0][j];
        diffs.push_back(d);
    }
    IntMat dm(diffs.size(), n);
    for (size_t i = 0; i < diffs.size(); ++i)
        for (size_t j = 0; j < n; ++j) dm(i, j) = diffs[i][j];

    // affine hull: kernel vectors of the difference lattice
    IntMat ker = integer_kernel(dm);
    out.eq = ker;
    out.eq_rhs.assign(ker.rows(), Int(0));
    for (size_t i = 0; i < ker.rows(); ++i)
        for (size_t j = 0; j < n; ++j) out.eq_rhs[i] += ker(i, j) * pts[0][j];

    IntMat basis = saturate(n, dm);
    size_t d = basis.rows();
    if (d == 0) return out;  // a single point, no facets within the hull

    // coordinates of the points in the hull basis
    std::vector<IntVec> coords;
    coords.push_back(IntVec(d, Int(0)));
    for (const auto& df : diffs) {
        IntVec c;
        bool ok = integer_row_solve(basis, df, c);
        require_internal(ok, "hull basis does not span the differences");
        coords.push_back(c);
    }

    IntMat lifted(coords.size(), d + 1);
    for (size_t i = 0; i < coords.size(); ++i) {
        for (size_t j = 0; j < d; ++j) lifted(i, j) = coords[i][j];
        lifted(i, d) = 1;
    }
    for (const auto& ray : dd_extreme_rays(lifted)) {
        bool at_infinity = true;
        for (size_t k = 0; k < d; ++k)
            if (ray[k] != 0) at_infinity = false;
        if (at_infinity) continue;
        // ray (u, s) means u . q + s >= 0 in hull coordinates; pull the
        // functional back to the ambient space: find w with w . basis_k = -u_k
        RatMat bt(d, n);
        for (size_t k = 0; k < d; ++k)
            for (size_t j = 0; j < n; ++j) bt(k, j) = Rat(basis(k, j));
        RatVec rhs(d), w;
        for (size_t k = 0; k < d; ++k) rhs[k] = Rat(-ray[k]);
        bool ok = rat_solve(bt, rhs, w);
        require_internal(ok, "facet functional has no ambient representative");
        Int l = 1;
        for (const auto& x : w) l = lcm(l, den(x));
        IntVec normal(n);
        for (size_t j = 0; j < n; ++j) normal[j] = num(w[j]) * (l / den(w[j]));
        normal = primitive(normal);
        Int offset = 0;
        for (size_t j = 0; j < n; ++j) offset += normal[j] * pts[0][j];
        for (const auto& p : pts) {
            Int v = 0;
            for (size_t j = 0; j < n; ++j) v += normal[j] * p[j];
            if (v > offset) offset = v;
        }
        out.ineq.push_back(HalfSpace{normal, offset});
    }
    std::sort(out.ineq.begin(), out.ineq.end(), [](const HalfSpace& a, const HalfSpace& b) {
        return a.normal != b.normal ? a.normal < b.normal : a.offset < b.offset;
    });
    return out;
}

std::vector<RatVec> polytope_vertices(const RatMat& a, const RatVec& b) {
    size_t m = a.rows(), n = a.cols();
    IntMat hom(m + 1, n + 1);
    for (size_t i = 0; i < m; ++i) {
        Int l = 1;
        for (size_t j = 0; j < n; ++j) l = lcm(l, den(a(i, j)));
        l = lcm(l, den(b[i]));
        for (size_t j = 0; j < n; ++j) hom(i, j) = -num(a(i, j)) * (l / den(a(i, j)));
        hom(i, n) = num(b[i]) * (l / den(b[i]));
    }
    hom(m, n) = 1;
    std::vector<RatVec> out;
    for (const auto& ray : dd_extreme_rays(hom)) {
        require_internal(ray[n] > 0, "unbounded feasible set in vertex enumeration");
        RatVec v(n);
        for (size_t j = 0; j < n; ++j) v[j] = Rat(ray[j]) / Rat(ray[n]);
        out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    return out;
}

size_t affine_rank(const std::vector<IntVec>& pts) {
    require_internal(!pts.empty(), "affine rank of an empty set");
    size_t n = pts[0].size();
    IntMat dm(pts.size() - 1, n);
    for (size_t i = 1; i < pts.size(); ++i)
        for (size_t j = 0; j < n; ++j) dm(i - 1, j) = pts[i][j] - pts[0][j];
    if (pts.size() == 1) return 0;
    return int_rank(dm);
}

size_t affine_rank(const std::vector<RatVec>& pts) {
    require_internal(!pts.empty(), "affine rank of an empty set");
    size_t n = pts[0].size();
    RatMat dm(pts.size() - 1, n);
    for (size_t i = 1; i < pts.size(); ++i)
        for (size_t j = 0; j < n; ++j) dm(i - 1, j) = pts[i][j] - pts[0][j];
    if (pts.size() == 1) return 0;
    return rat_rank(dm);
}

}  // namespace skelet
