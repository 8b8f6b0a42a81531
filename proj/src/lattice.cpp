#include "skelet/lattice.hpp"

#include <algorithm>
#include <functional>

namespace skelet {

const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::NotSimplicial: return "NotSimplicial";
        case ErrorCode::GapOrOverlap: return "GapOrOverlap";
        case ErrorCode::NotStarShaped: return "NotStarShaped";
        case ErrorCode::OriginMissing: return "OriginMissing";
        case ErrorCode::DegenerateHeights: return "DegenerateHeights";
        case ErrorCode::PointOutsideSupport: return "PointOutsideSupport";
        case ErrorCode::SimplexContainsOrigin: return "SimplexContainsOrigin";
        case ErrorCode::NotAFace: return "NotAFace";
        case ErrorCode::PointOutsideCone: return "PointOutsideCone";
        case ErrorCode::NotFullDimensional: return "NotFullDimensional";
        case ErrorCode::CertificateMismatch: return "CertificateMismatch";
        case ErrorCode::SignConditionViolated: return "SignConditionViolated";
        case ErrorCode::SupportMismatch: return "SupportMismatch";
        case ErrorCode::MissingHyperplane: return "MissingHyperplane";
        case ErrorCode::DimensionTooHigh: return "DimensionTooHigh";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::AssumptionViolation: return "AssumptionViolation";
        case ErrorCode::RankCapExceeded: return "RankCapExceeded";
        case ErrorCode::DimensionCapExceeded: return "DimensionCapExceeded";
        case ErrorCode::CellularizationDidNotStabilize: return "CellularizationDidNotStabilize";
        case ErrorCode::NotAComplex: return "NotAComplex";
        case ErrorCode::NonCellularIdentification: return "NonCellularIdentification";
        case ErrorCode::InternalInvariant: return "InternalInvariant";
    }
    return "UnknownError";
}

int error_exit_code(ErrorCode c) {
    switch (c) {
        case ErrorCode::AssumptionViolation: return 3;
        case ErrorCode::RankCapExceeded:
        case ErrorCode::DimensionCapExceeded:
        case ErrorCode::CellularizationDidNotStabilize: return 4;
        case ErrorCode::NotAComplex:
        case ErrorCode::NonCellularIdentification:
        case ErrorCode::InternalInvariant: return 5;
        default: return 2;
    }
}

size_t rat_rank(RatMat m) {
    size_t r = 0;
    for (size_t j = 0; j < m.cols() && r < m.rows(); ++j) {
        size_t p = r;
        while (p < m.rows() && m(p, j) == 0) ++p;
        if (p == m.rows()) continue;
        m.swap_rows(r, p);
        for (size_t i = r + 1; i < m.rows(); ++i) {
            if (m(i, j) == 0) continue;
            Rat f = m(i, j) / m(r, j);
            for (size_t k = j; k < m.cols(); ++k) m(i, k) -= f * m(r, k);
        }
        ++r;
    }
    return r;
}

size_t int_rank(const IntMat& m) { return rat_rank(to_rational(m)); }

Rat rat_det(RatMat m) {
    require_internal(m.rows() == m.cols(), "det of non-square matrix");
    Rat det = 1;
    for (size_t j = 0; j < m.cols(); ++j) {
        size_t p = j;
        while (p < m.rows() && m(p, j) == 0) ++p;
        if (p == m.rows()) return Rat(0);
        if (p != j) {
            m.swap_rows(j, p);
            det = -det;
        }
        det *= m(j, j);
        for (size_t i = j + 1; i < m.rows(); ++i) {
            if (m(i, j) == 0) continue;
            Rat f = m(i, j) / m(j, j);
            for (size_t k = j; k < m.cols(); ++k) m(i, k) -= f * m(j, k);
        }
    }
    return det;
}

Int int_det(const IntMat& m) {
    Rat d = rat_det(to_rational(m));
    require_internal(is_integer(d), "integer determinant not integral");
    return num(d);
}

bool rat_solve(RatMat a, RatVec b, RatVec& x) {
    size_t m = a.rows(), n = a.cols();
    std::vector<size_t> pivot_col;
    size_t r = 0;
    for (size_t j = 0; j < n && r < m; ++j) {
        size_t p = r;
        while (p < m && a(p, j) == 0) ++p;
        if (p == m) continue;
        a.swap_rows(r, p);
        std::swap(b[r], b[p]);
        Rat piv = a(r, j);
        for (size_t k = j; k < n; ++k) a(r, k) /= piv;
        b[r] /= piv;
        for (size_t i = 0; i < m; ++i) {
            if (i == r || a(i, j) == 0) continue;
            Rat f = a(i, j);
            for (size_t k = j; k < n; ++k) a(i, k) -= f * a(r, k);
            b[i] -= f * b[r];
        }
        pivot_col.push_back(j);
        ++r;
    }
    for (size_t i = r; i < m; ++i)
        if (b[i] != 0) return false;
    x.assign(n, Rat(0));
    for (size_t i = 0; i < r; ++i) x[pivot_col[i]] = b[i];
    return true;
}

std::vector<RatVec> rat_nullspace(RatMat a) {
    size_t m = a.rows(), n = a.cols();
    std::vector<size_t> pivot_col;
    size_t r = 0;
    for (size_t j = 0; j < n && r < m; ++j) {
        size_t p = r;
        while (p < m && a(p, j) == 0) ++p;
        if (p == m) continue;
        a.swap_rows(r, p);
        Rat piv = a(r, j);
        for (size_t k = j; k < n; ++k) a(r, k) /= piv;
        for (size_t i = 0; i < m; ++i) {
            if (i == r || a(i, j) == 0) continue;
            Rat f = a(i, j);
            for (size_t k = j; k < n; ++k) a(i, k) -= f * a(r, k);
        }
        pivot_col.push_back(j);
        ++r;
    }
    std::vector<bool> is_pivot(n, false);
    for (size_t j : pivot_col) is_pivot[j] = true;
    std::vector<RatVec> basis;
    for (size_t j = 0; j < n; ++j) {
        if (is_pivot[j]) continue;
        RatVec v(n, Rat(0));
        v[j] = 1;
        for (size_t i = 0; i < r; ++i) v[pivot_col[i]] = -a(i, j);
        basis.push_back(v);
    }
    return basis;
}

namespace {

// nearest-integer quotient, |a - q b| <= |b|/2
Int nearest_div(const Int& a, const Int& b) {
    Int bb = boost::multiprecision::abs(b);
    Int q = floor_div(2 * a + bb, 2 * bb);
    return b < 0 ? Int(-q) : q;
}

struct SNFWork {
    IntMat b, u, v;
    void row_sub(size_t i, size_t t, const Int& q) {  // row_i -= q row_t
        if (q == 0) return;
        for (size_t k = 0; k < b.cols(); ++k) b(i, k) -= q * b(t, k);
        for (size_t k = 0; k < u.cols(); ++k) u(i, k) -= q * u(t, k);
    }
    void col_sub(size_t j, size_t t, const Int& q) {  // col_j -= q col_t
        if (q == 0) return;
        for (size_t k = 0; k < b.rows(); ++k) b(k, j) -= q * b(k, t);
        for (size_t k = 0; k < v.rows(); ++k) v(k, j) -= q * v(k, t);
    }
    void col_add(size_t j, size_t t) {  // col_j += col_t
        for (size_t k = 0; k < b.rows(); ++k) b(k, j) += b(k, t);
        for (size_t k = 0; k < v.rows(); ++k) v(k, j) += v(k, t);
    }
    void negate_row(size_t i) {
        for (size_t k = 0; k < b.cols(); ++k) b(i, k) = -b(i, k);
        for (size_t k = 0; k < u.cols(); ++k) u(i, k) = -u(i, k);
    }

    // move a minimal-abs nonzero entry of the trailing block to (t,t);
    // returns false when the block is zero
    bool place_pivot(size_t t) {
        size_t bi = 0, bj = 0;
        bool found = false;
        for (size_t i = t; i < b.rows(); ++i)
            for (size_t j = t; j < b.cols(); ++j) {
                if (b(i, j) == 0) continue;
                if (!found || boost::multiprecision::abs(b(i, j)) <
                                  boost::multiprecision::abs(b(bi, bj))) {
                    bi = i;
                    bj = j;
                    found = true;
                }
            }
        if (!found) return false;
        if (bi != t) {
            b.swap_rows(t, bi);
            u.swap_rows(t, bi);
        }
        if (bj != t) {
            b.swap_cols(t, bj);
            v.swap_cols(t, bj);
        }
        return true;
    }

    // 2x2 smith step on the diagonal block {i, i+1}; entries outside the
    // block are untouched because the matrix is diagonal elsewhere
    void fix_pair(size_t i) {
        size_t j = i + 1;
        col_add(i, j);
        for (;;) {
            Int best = 0;
            size_t br = i, bc = i;
            for (size_t r : {i, j})
                for (size_t c : {i, j}) {
                    if (b(r, c) == 0) continue;
                    if (best == 0 || boost::multiprecision::abs(b(r, c)) < best) {
                        best = boost::multiprecision::abs(b(r, c));
                        br = r;
                        bc = c;
                    }
                }
            if (br != i) {
                b.swap_rows(i, j);
                u.swap_rows(i, j);
            }
            if (bc != i) {
                b.swap_cols(i, j);
                v.swap_cols(i, j);
            }
            if (b(j, i) != 0) row_sub(j, i, nearest_div(b(j, i), b(i, i)));
            if (b(i, j) != 0) col_sub(j, i, nearest_div(b(i, j), b(i, i)));
            if (b(j, i) == 0 && b(i, j) == 0) break;
        }
        if (b(i, i) < 0) negate_row(i);
        if (b(j, j) < 0) negate_row(j);
    }

    // clear row t and column t beyond the pivot
    void clear_pivot(size_t t) {
        for (;;) {
            bool dirty = false;
            for (size_t i = t + 1; i < b.rows(); ++i) {
                if (b(i, t) == 0) continue;
                row_sub(i, t, nearest_div(b(i, t), b(t, t)));
                dirty = true;
            }
            for (size_t j = t + 1; j < b.cols(); ++j) {
                if (b(t, j) == 0) continue;
                col_sub(j, t, nearest_div(b(t, j), b(t, t)));
                dirty = true;
            }
            bool clean = true;
            for (size_t i = t + 1; i < b.rows() && clean; ++i)
                if (b(i, t) != 0) clean = false;
            for (size_t j = t + 1; j < b.cols() && clean; ++j)
                if (b(t, j) != 0) clean = false;
            if (clean) return;
            // remainders are strictly smaller than the old pivot
            if (dirty) place_pivot(t);
        }
    }
};

}  // namespace

SNFDecomposition smith_normal_form(const IntMat& a) {
    SNFWork w{a, IntMat::identity(a.rows()), IntMat::identity(a.cols())};
    size_t n = std::min(a.rows(), a.cols());
    for (size_t t = 0; t < n; ++t) {
        if (!w.place_pivot(t)) break;
        w.clear_pivot(t);
        if (w.b(t, t) < 0) w.negate_row(t);
    }
    // enforce the divisibility chain; each fix replaces (d_i, d_j) with
    // (gcd, lcm), so the diagonal decreases lexicographically
    for (bool stable = false; !stable;) {
        stable = true;
        for (size_t i = 0; i + 1 < n; ++i) {
            const Int &di = w.b(i, i), &dj = w.b(i + 1, i + 1);
            if (di == 0 && dj != 0) {
                w.b.swap_rows(i, i + 1);
                w.u.swap_rows(i, i + 1);
                w.b.swap_cols(i, i + 1);
                w.v.swap_cols(i, i + 1);
                stable = false;
            } else if (di != 0 && dj % di != 0) {
                w.fix_pair(i);
                stable = false;
            }
        }
    }
    require_internal(w.u * a * w.v == w.b, "SNF transform identity broken");
    return SNFDecomposition{w.b, w.u, w.v};
}

HNFDecomposition hermite_normal_form(const IntMat& a) {
    IntMat h = a, u = IntMat::identity(a.rows());
    size_t r = 0;
    for (size_t j = 0; j < h.cols() && r < h.rows(); ++j) {
        // euclidean reduction within column j, rows >= r
        for (;;) {
            size_t p = h.rows();
            for (size_t i = r; i < h.rows(); ++i) {
                if (h(i, j) == 0) continue;
                if (p == h.rows() || boost::multiprecision::abs(h(i, j)) <
                                         boost::multiprecision::abs(h(p, j)))
                    p = i;
            }
            if (p == h.rows()) break;  // column clear below r
            if (p != r) {
                h.swap_rows(r, p);
                u.swap_rows(r, p);
            }
            bool clean = true;
            for (size_t i = r + 1; i < h.rows(); ++i) {
                if (h(i, j) == 0) continue;
                Int q = nearest_div(h(i, j), h(r, j));
                for (size_t k = 0; k < h.cols(); ++k) h(i, k) -= q * h(r, k);
                for (size_t k = 0; k < u.cols(); ++k) u(i, k) -= q * u(r, k);
                if (h(i, j) != 0) clean = false;
            }
            if (clean) break;
        }
        if (h(r, j) == 0) continue;
        if (h(r, j) < 0) {
            for (size_t k = 0; k < h.cols(); ++k) h(r, k) = -h(r, k);
            for (size_t k = 0; k < u.cols(); ++k) u(r, k) = -u(r, k);
        }
        for (size_t i = 0; i < r; ++i) {
            Int q = floor_div(h(i, j), h(r, j));
            if (q == 0) continue;
            for (size_t k = 0; k < h.cols(); ++k) h(i, k) -= q * h(r, k);
            for (size_t k = 0; k < u.cols(); ++k) u(i, k) -= q * u(r, k);
        }
        ++r;
    }
    require_internal(u * a == h, "HNF transform identity broken");
    return HNFDecomposition{h, u};
}

namespace {

IntMat unimodular_inverse(const IntMat& v) {
    size_t n = v.rows();
    require_internal(n == v.cols(), "inverse of non-square matrix");
    RatMat vr = to_rational(v);
    IntMat inv(n, n);
    for (size_t j = 0; j < n; ++j) {
        RatVec e(n, Rat(0)), x;
        e[j] = 1;
        bool ok = rat_solve(vr, e, x);
        require_internal(ok, "unimodular matrix not invertible");
        for (size_t i = 0; i < n; ++i) {
            require_internal(is_integer(x[i]), "unimodular inverse not integral");
            inv(i, j) = num(x[i]);
        }
    }
    return inv;
}

IntMat rows_to_hnf_basis(const std::vector<IntVec>& rows, size_t cols) {
    IntMat m = IntMat::from_rows(std::vector<std::vector<Int>>(rows.begin(), rows.end()));
    if (rows.empty()) return IntMat(0, cols);
    HNFDecomposition h = hermite_normal_form(m);
    size_t r = 0;
    for (size_t i = 0; i < h.h.rows(); ++i) {
        bool zero = true;
        for (size_t j = 0; j < cols; ++j)
            if (h.h(i, j) != 0) zero = false;
        if (!zero) r = i + 1;
    }
    IntMat out(r, cols);
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < cols; ++j) out(i, j) = h.h(i, j);
    return out;
}

}  // namespace

IntMat saturate(size_t ambient_rank, const IntMat& sub) {
    require_internal(sub.cols() == ambient_rank || sub.rows() == 0,
                     "saturate: column count mismatch");
    if (sub.rows() == 0) return IntMat(0, ambient_rank);
    SNFDecomposition s = smith_normal_form(sub);
    size_t rk = s.rank();
    IntMat vinv = unimodular_inverse(s.right);
    std::vector<IntVec> rows;
    for (size_t i = 0; i < rk; ++i) rows.push_back(vinv.row(i));
    return rows_to_hnf_basis(rows, ambient_rank);
}

IntMat integer_kernel(const IntMat& a) {
    SNFDecomposition s = smith_normal_form(a);
    size_t rk = s.rank(), n = a.cols();
    std::vector<IntVec> rows;
    for (size_t j = rk; j < n; ++j) rows.push_back(s.right.col(j));
    return rows_to_hnf_basis(rows, n);
}

bool integer_row_solve(const IntMat& a, const IntVec& b, IntVec& x) {
    // x A = b  <=>  y D = b V with y = x U^{-1}
    require_internal(b.size() == a.cols(), "integer_row_solve shape mismatch");
    SNFDecomposition s = smith_normal_form(a);
    size_t rk = s.rank();
    IntVec bv(a.cols(), Int(0));
    for (size_t j = 0; j < a.cols(); ++j)
        for (size_t k = 0; k < a.cols(); ++k) bv[j] += b[k] * s.right(k, j);
    IntVec y(a.rows(), Int(0));
    for (size_t i = 0; i < a.cols(); ++i) {
        if (i < rk) {
            if (bv[i] % s.d(i, i) != 0) return false;
            if (i < a.rows()) y[i] = bv[i] / s.d(i, i);
        } else if (bv[i] != 0) {
            return false;
        }
    }
    x.assign(a.rows(), Int(0));
    for (size_t j = 0; j < a.rows(); ++j)
        for (size_t k = 0; k < a.rows(); ++k) x[j] += y[k] * s.left(k, j);
    return true;
}

RatVec lex_min(const std::vector<RatVec>& vs) {
    require_internal(!vs.empty(), "lex_min of empty set");
    return *std::min_element(vs.begin(), vs.end());
}

namespace {

// Lexicographically least theta in [0,1)^n with B theta = psi (mod Z^s).
// The solution set is one connected component of a closed subgroup coset; its
// slice over each integer shift k is the polytope {B theta = psi + k} in the
// cube, and a lex minimum is attained at a vertex of one of the slices.
RatVec component_lex_min(const IntMat& bmat, const RatVec& psi) {
    size_t s = bmat.rows(), n = bmat.cols();
    if (s == 0) return RatVec(n, Rat(0));
    // shift box: <b_i, theta> over the unit cube spans [sum min(b,0), sum max(b,0)]
    std::vector<Int> klo(s), khi(s);
    for (size_t i = 0; i < s; ++i) {
        Int lo = 0, hi = 0;
        for (size_t j = 0; j < n; ++j) {
            if (bmat(i, j) > 0) hi += bmat(i, j);
            else lo += bmat(i, j);
        }
        klo[i] = ceil_rat(Rat(lo) - psi[i]);
        khi[i] = floor_rat(Rat(hi) - psi[i]);
    }
    std::vector<RatVec> candidates;
    std::vector<Int> k(s);
    std::vector<size_t> free_idx;

    // enumerate vertices of {B theta = psi + k} ∩ [0,1]^n: fix n-s coordinates
    // at 0/1 and solve; keep solutions in [0,1)^n that satisfy the system
    auto vertices_for_shift = [&]() {
        RatVec rhs(s);
        for (size_t i = 0; i < s; ++i) rhs[i] = psi[i] + Rat(k[i]);
        std::vector<size_t> idx(n);
        for (size_t i = 0; i < n; ++i) idx[i] = i;
        size_t fix = n >= s ? n - s : 0;
        std::vector<size_t> comb(fix);
        auto try_combo = [&](const std::vector<size_t>& fixed) {
            for (unsigned long long mask = 0; mask < (1ull << fixed.size()); ++mask) {
                RatMat sys(s + fixed.size(), n);
                RatVec b(s + fixed.size());
                for (size_t i = 0; i < s; ++i) {
                    for (size_t j = 0; j < n; ++j) sys(i, j) = Rat(bmat(i, j));
                    b[i] = rhs[i];
                }
                for (size_t t = 0; t < fixed.size(); ++t) {
                    sys(s + t, fixed[t]) = 1;
                    b[s + t] = (mask >> t) & 1 ? Rat(1) : Rat(0);
                }
                if (rat_rank(sys) != n) continue;
                RatVec x;
                if (!rat_solve(sys, b, x)) continue;
                bool in_cube = true;
                for (size_t j = 0; j < n && in_cube; ++j)
                    if (x[j] < 0 || x[j] >= 1) in_cube = false;
                if (in_cube) candidates.push_back(x);
            }
        };
        std::function<void(size_t, size_t)> rec = [&](size_t start, size_t depth) {
            if (depth == fix) {
                try_combo(comb);
                return;
            }
            for (size_t i = start; i < n; ++i) {
                comb[depth] = i;
                rec(i + 1, depth + 1);
            }
        };
        rec(0, 0);
    };

    std::function<void(size_t)> rec_k = [&](size_t i) {
        if (i == s) {
            vertices_for_shift();
            return;
        }
        for (Int kk = klo[i]; kk <= khi[i]; ++kk) {
            k[i] = kk;
            rec_k(i + 1);
        }
    };
    rec_k(0);
    require_internal(!candidates.empty(), "empty character component");
    return lex_min(candidates);
}

}  // namespace

LatticeQuotient lattice_quotient(size_t ambient_rank, const IntMat& sub) {
    require_internal(sub.cols() == ambient_rank || sub.rows() == 0,
                     "lattice_quotient: column count mismatch");
    LatticeQuotient q;
    q.ambient_rank = ambient_rank;
    q.sub_generators = sub;
    IntMat work = sub.rows() == 0 ? IntMat(0, ambient_rank) : sub;
    SNFDecomposition s = smith_normal_form(work);
    size_t rk = s.rank();
    q.free_rank = ambient_rank - rk;
    for (const auto& f : s.invariant_factors())
        if (f > 1) q.torsion.invariant_factors.push_back(f);

    IntMat sat = saturate(ambient_rank, work);

    // component characters theta = V (c_1/d_1, ..., c_rk/d_rk, 0, ...) mod 1
    std::vector<Int> d;
    for (size_t i = 0; i < rk; ++i) d.push_back(s.d(i, i));
    std::vector<RatVec> reps;
    std::vector<Int> c(rk, Int(0));
    for (;;) {
        RatVec coeff(ambient_rank, Rat(0));
        for (size_t i = 0; i < rk; ++i) coeff[i] = Rat(c[i]) / Rat(d[i]);
        RatVec theta(ambient_rank, Rat(0));
        for (size_t i = 0; i < ambient_rank; ++i) {
            for (size_t j = 0; j < ambient_rank; ++j)
                theta[i] += Rat(s.right(i, j)) * coeff[j];
            theta[i] = mod1(theta[i]);
        }
        RatVec label(sat.rows());
        for (size_t i = 0; i < sat.rows(); ++i) {
            Rat acc = 0;
            for (size_t j = 0; j < ambient_rank; ++j) acc += Rat(sat(i, j)) * theta[j];
            label[i] = mod1(acc);
        }
        reps.push_back(component_lex_min(sat, label));
        // odometer over the torsion box
        size_t pos = 0;
        for (; pos < rk; ++pos) {
            if (++c[pos] < d[pos]) break;
            c[pos] = 0;
        }
        if (pos == rk) break;
        if (rk == 0) break;
    }
    std::sort(reps.begin(), reps.end());
    reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
    require_internal(Int(reps.size()) == q.torsion.order(),
                     "component count does not match torsion order");
    q.coset_reps = reps;
    return q;
}

}  // namespace skelet
