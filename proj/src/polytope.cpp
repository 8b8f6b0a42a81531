#include "skelet/polytope.hpp"

#include <algorithm>
#include <map>

#include "skelet/lp.hpp"

namespace skelet {

namespace {

// p in conv(others)?
bool in_hull(const IntVec& p, const std::vector<IntVec>& others) {
    if (others.empty()) return false;
    size_t n = p.size(), k = others.size();
    // lambda >= 0, sum lambda = 1, sum lambda q_i = p
    RatMat sys(2 * n + 2 + k, k);
    RatVec b(2 * n + 2 + k, Rat(0));
    for (size_t j = 0; j < n; ++j) {
        for (size_t i = 0; i < k; ++i) {
            sys(j, i) = Rat(others[i][j]);
            sys(n + j, i) = Rat(-others[i][j]);
        }
        b[j] = Rat(p[j]);
        b[n + j] = Rat(-p[j]);
    }
    for (size_t i = 0; i < k; ++i) {
        sys(2 * n, i) = 1;
        sys(2 * n + 1, i) = -1;
        sys(2 * n + 2 + i, i) = -1;
    }
    b[2 * n] = 1;
    b[2 * n + 1] = -1;
    return lp_feasible(sys, b).feasible;
}

}  // namespace

LatticePolytope LatticePolytope::from_points(size_t ambient_rank, const std::vector<IntVec>& pts) {
    require_internal(!pts.empty(), "polytope needs at least one point");
    for (const auto& p : pts)
        require_internal(p.size() == ambient_rank, "point dimension mismatch");
    std::vector<IntVec> uniq = pts;
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());

    LatticePolytope out;
    out.ambient_rank_ = ambient_rank;
    for (size_t i = 0; i < uniq.size(); ++i) {
        std::vector<IntVec> others;
        for (size_t j = 0; j < uniq.size(); ++j)
            if (j != i) others.push_back(uniq[j]);
        if (in_hull(uniq[i], others)) out.discarded_.push_back(uniq[i]);
        else out.vertices_.push_back(uniq[i]);
    }
    out.hrep_ = polytope_hrep(out.vertices_);
    return out;
}

bool LatticePolytope::contains(const RatVec& p) const {
    require_internal(p.size() == ambient_rank_, "point dimension mismatch");
    for (size_t i = 0; i < hrep_.eq.rows(); ++i) {
        Rat acc = 0;
        for (size_t j = 0; j < ambient_rank_; ++j) acc += Rat(hrep_.eq(i, j)) * p[j];
        if (acc != Rat(hrep_.eq_rhs[i])) return false;
    }
    for (const auto& hs : hrep_.ineq) {
        Rat acc = 0;
        for (size_t j = 0; j < ambient_rank_; ++j) acc += Rat(hs.normal[j]) * p[j];
        if (acc > Rat(hs.offset)) return false;
    }
    return true;
}

std::vector<IntVec> LatticePolytope::lattice_points() const {
    std::vector<Int> lo(ambient_rank_), hi(ambient_rank_);
    for (size_t j = 0; j < ambient_rank_; ++j) {
        lo[j] = hi[j] = vertices_[0][j];
        for (const auto& v : vertices_) {
            lo[j] = std::min(lo[j], v[j]);
            hi[j] = std::max(hi[j], v[j]);
        }
    }
    std::vector<IntVec> out;
    IntVec cur = lo;
    for (;;) {
        RatVec p(ambient_rank_);
        for (size_t j = 0; j < ambient_rank_; ++j) p[j] = Rat(cur[j]);
        if (contains(p)) out.push_back(cur);
        size_t pos = 0;
        for (; pos < ambient_rank_; ++pos) {
            if (++cur[pos] <= hi[pos]) break;
            cur[pos] = lo[pos];
        }
        if (pos == ambient_rank_) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

const std::vector<PolytopeFace>& LatticePolytope::face_lattice(size_t cap) const {
    if (ambient_rank_ > cap)
        fail(ErrorCode::DimensionCapExceeded,
             "face lattice at rank " + std::to_string(ambient_rank_) + " exceeds cap " +
                 std::to_string(cap));
    std::call_once(lazy_->once, [&] {
        auto tight_of = [&](const std::vector<size_t>& vs) {
            std::vector<size_t> t;
            for (size_t f = 0; f < hrep_.ineq.size(); ++f) {
                bool all = true;
                for (size_t v : vs) {
                    Int acc = 0;
                    for (size_t j = 0; j < ambient_rank_; ++j)
                        acc += hrep_.ineq[f].normal[j] * vertices_[v][j];
                    if (acc != hrep_.ineq[f].offset) {
                        all = false;
                        break;
                    }
                }
                if (all) t.push_back(f);
            }
            return t;
        };
        auto verts_on = [&](const std::vector<size_t>& facets) {
            std::vector<size_t> vs;
            for (size_t v = 0; v < vertices_.size(); ++v) {
                bool all = true;
                for (size_t f : facets) {
                    Int acc = 0;
                    for (size_t j = 0; j < ambient_rank_; ++j)
                        acc += hrep_.ineq[f].normal[j] * vertices_[v][j];
                    if (acc != hrep_.ineq[f].offset) {
                        all = false;
                        break;
                    }
                }
                if (all) vs.push_back(v);
            }
            return vs;
        };

        std::map<std::vector<size_t>, std::vector<size_t>> seen;  // verts -> tight
        std::vector<size_t> all_verts(vertices_.size());
        for (size_t i = 0; i < vertices_.size(); ++i) all_verts[i] = i;
        seen[all_verts] = tight_of(all_verts);
        std::vector<std::vector<size_t>> queue{all_verts};
        while (!queue.empty()) {
            auto vs = queue.back();
            queue.pop_back();
            auto tight = seen[vs];
            for (size_t f = 0; f < hrep_.ineq.size(); ++f) {
                if (std::count(tight.begin(), tight.end(), f)) continue;
                auto t2 = tight;
                t2.push_back(f);
                auto vs2 = verts_on(t2);
                if (vs2.empty() || seen.count(vs2)) continue;
                seen[vs2] = tight_of(vs2);
                queue.push_back(vs2);
            }
        }
        std::vector<PolytopeFace> faces;
        for (const auto& [vs, tight] : seen) {
            PolytopeFace f;
            f.vertex_ids = vs;
            f.tight_facets = tight;
            std::vector<IntVec> coords;
            for (size_t v : vs) coords.push_back(vertices_[v]);
            f.dim = affine_rank(coords);
            faces.push_back(f);
        }
        std::sort(faces.begin(), faces.end(), [](const PolytopeFace& a, const PolytopeFace& b) {
            return a.dim != b.dim ? a.dim < b.dim : a.vertex_ids < b.vertex_ids;
        });
        lazy_->faces = std::move(faces);
    });
    return lazy_->faces;
}

const PolytopeFace& LatticePolytope::minimal_face(const RatVec& p) const {
    if (!contains(p)) fail(ErrorCode::PointOutsideSupport, "point is not in the polytope");
    std::vector<size_t> tight;
    for (size_t f = 0; f < hrep_.ineq.size(); ++f) {
        Rat acc = 0;
        for (size_t j = 0; j < ambient_rank_; ++j) acc += Rat(hrep_.ineq[f].normal[j]) * p[j];
        if (acc == Rat(hrep_.ineq[f].offset)) tight.push_back(f);
    }
    const auto& faces = face_lattice();
    // smallest face whose tight set contains ours
    for (const auto& f : faces) {
        if (!std::includes(f.tight_facets.begin(), f.tight_facets.end(), tight.begin(),
                           tight.end()))
            continue;
        // the face cut out by exactly the facets through p
        bool match = std::includes(tight.begin(), tight.end(), f.tight_facets.begin(),
                                   f.tight_facets.end());
        if (match) return f;
    }
    require_internal(false, "no face matches the tight facet set");
    return faces.front();
}

Int LatticePolytope::normalized_volume() const {
    if (dim() != ambient_rank_)
        fail(ErrorCode::NotFullDimensional, "normalized volume of a lower-dimensional polytope");
    const auto& faces = face_lattice();
    size_t top = faces.size() - 1;
    require_internal(faces[top].dim == ambient_rank_, "face lattice misses the polytope");
    Int vol = 0;
    for (const auto& simplex : pulling_triangulation(top)) {
        IntMat m(ambient_rank_, ambient_rank_);
        for (size_t i = 1; i < simplex.size(); ++i)
            for (size_t j = 0; j < ambient_rank_; ++j)
                m(i - 1, j) = vertices_[simplex[i]][j] - vertices_[simplex[0]][j];
        vol += boost::multiprecision::abs(int_det(m));
    }
    return vol;
}

std::vector<std::vector<size_t>> LatticePolytope::pulling_triangulation(size_t face_index) const {
    const auto& faces = face_lattice();
    require_internal(face_index < faces.size(), "face index out of range");
    std::map<size_t, std::vector<std::vector<size_t>>> memo;
    std::function<const std::vector<std::vector<size_t>>&(size_t)> tri =
        [&](size_t fi) -> const std::vector<std::vector<size_t>>& {
        auto it = memo.find(fi);
        if (it != memo.end()) return it->second;
        const auto& f = faces[fi];
        std::vector<std::vector<size_t>> out;
        if (f.vertex_ids.size() == f.dim + 1) {
            out.push_back(f.vertex_ids);
        } else {
            size_t v0 = f.vertex_ids.front();  // lex-least vertex: ids sort by coordinates
            for (size_t gi = 0; gi < faces.size(); ++gi) {
                const auto& g = faces[gi];
                if (g.dim + 1 != f.dim) continue;
                if (!std::includes(f.vertex_ids.begin(), f.vertex_ids.end(),
                                   g.vertex_ids.begin(), g.vertex_ids.end()))
                    continue;
                if (std::count(g.vertex_ids.begin(), g.vertex_ids.end(), v0)) continue;
                for (auto s : tri(gi)) {
                    s.push_back(v0);
                    std::sort(s.begin(), s.end());
                    out.push_back(s);
                }
            }
            std::sort(out.begin(), out.end());
        }
        return memo[fi] = std::move(out);
    };
    return tri(face_index);
}

RationalCone RationalCone::from_generators(size_t ambient_rank, const std::vector<IntVec>& gens) {
    RationalCone out;
    out.ambient_rank_ = ambient_rank;
    for (const auto& g : gens) {
        require_internal(g.size() == ambient_rank, "generator dimension mismatch");
        if (std::all_of(g.begin(), g.end(), [](const Int& x) { return x == 0; })) continue;
        out.generators_.push_back(primitive(g));
    }
    std::sort(out.generators_.begin(), out.generators_.end());
    out.generators_.erase(std::unique(out.generators_.begin(), out.generators_.end()),
                          out.generators_.end());
    require_internal(!out.generators_.empty(), "cone needs a nonzero generator");
    IntMat gm(out.generators_.size(), ambient_rank);
    for (size_t i = 0; i < out.generators_.size(); ++i)
        for (size_t j = 0; j < ambient_rank; ++j) gm(i, j) = out.generators_[i][j];
    require_internal(int_rank(gm) == ambient_rank, "cone is not full-dimensional");
    out.normals_ = dd_extreme_rays(gm);
    out.lineality_ = cone_lineality(out.generators_);
    return out;
}

bool RationalCone::contains(const RatVec& x) const {
    require_internal(x.size() == ambient_rank_, "point dimension mismatch");
    for (const auto& u : normals_) {
        Rat acc = 0;
        for (size_t j = 0; j < ambient_rank_; ++j) acc += Rat(u[j]) * x[j];
        if (acc < 0) return false;
    }
    return true;
}

const std::vector<ConeFace>& RationalCone::face_lattice(size_t cap) const {
    if (ambient_rank_ > cap)
        fail(ErrorCode::DimensionCapExceeded,
             "face lattice at rank " + std::to_string(ambient_rank_) + " exceeds cap " +
                 std::to_string(cap));
    std::call_once(lazy_->once, [&] {
        auto dot = [&](const IntVec& u, const IntVec& g) {
            Int acc = 0;
            for (size_t j = 0; j < ambient_rank_; ++j) acc += u[j] * g[j];
            return acc;
        };
        auto gens_on = [&](const std::vector<size_t>& tight) {
            std::vector<size_t> gs;
            for (size_t g = 0; g < generators_.size(); ++g) {
                bool all = true;
                for (size_t t : tight)
                    if (dot(normals_[t], generators_[g]) != 0) {
                        all = false;
                        break;
                    }
                if (all) gs.push_back(g);
            }
            return gs;
        };
        auto tight_of = [&](const std::vector<size_t>& gs) {
            std::vector<size_t> t;
            for (size_t u = 0; u < normals_.size(); ++u) {
                bool all = true;
                for (size_t g : gs)
                    if (dot(normals_[u], generators_[g]) != 0) {
                        all = false;
                        break;
                    }
                if (all) t.push_back(u);
            }
            return t;
        };

        std::map<std::vector<size_t>, std::vector<size_t>> seen;
        std::vector<size_t> all_gens(generators_.size());
        for (size_t i = 0; i < generators_.size(); ++i) all_gens[i] = i;
        seen[all_gens] = tight_of(all_gens);
        std::vector<std::vector<size_t>> queue{all_gens};
        while (!queue.empty()) {
            auto gs = queue.back();
            queue.pop_back();
            auto tight = seen[gs];
            for (size_t u = 0; u < normals_.size(); ++u) {
                if (std::count(tight.begin(), tight.end(), u)) continue;
                auto t2 = tight;
                t2.push_back(u);
                auto gs2 = gens_on(t2);
                if (seen.count(gs2)) continue;
                seen[gs2] = tight_of(gs2);
                queue.push_back(gs2);
            }
        }
        std::vector<ConeFace> faces;
        for (const auto& [gs, tight] : seen) {
            ConeFace f;
            f.generator_ids = gs;
            f.tight_normals = tight;
            IntMat span(gs.size(), ambient_rank_);
            for (size_t i = 0; i < gs.size(); ++i)
                for (size_t j = 0; j < ambient_rank_; ++j) span(i, j) = generators_[gs[i]][j];
            f.span_lattice_basis = saturate(ambient_rank_, span);
            f.dim = f.span_lattice_basis.rows();
            faces.push_back(f);
        }
        std::sort(faces.begin(), faces.end(), [](const ConeFace& a, const ConeFace& b) {
            return a.dim != b.dim ? a.dim < b.dim : a.generator_ids < b.generator_ids;
        });
        for (size_t i = 0; i < faces.size(); ++i) faces[i].id = i;
        lazy_->faces = std::move(faces);
    });
    return lazy_->faces;
}

const ConeFace& RationalCone::minimal_face(const RatVec& x) const {
    if (!contains(x)) fail(ErrorCode::PointOutsideCone, "point is not in the cone");
    std::vector<size_t> tight;
    for (size_t u = 0; u < normals_.size(); ++u) {
        Rat acc = 0;
        for (size_t j = 0; j < ambient_rank_; ++j) acc += Rat(normals_[u][j]) * x[j];
        if (acc == 0) tight.push_back(u);
    }
    for (const auto& f : face_lattice())
        if (f.tight_normals == tight) return f;
    require_internal(false, "no face matches the tight normal set");
    return face_lattice().front();
}

}  // namespace skelet
