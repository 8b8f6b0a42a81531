#include "skelet/lp.hpp"

#include <algorithm>

namespace skelet {

namespace {

// Dense rational simplex on min c^T z, D z = d, z >= 0, d >= 0.
// Bland's rule throughout, so no cycling. The tableau carries the objective
// row last; basis[i] is the variable occupying row i.
struct Tableau {
    size_t rows, cols;           // constraint rows, structural columns
    std::vector<RatVec> t;       // rows x (cols + 1), rhs last
    RatVec obj;                  // cols + 1, negated objective value last
    std::vector<size_t> basis;

    Tableau(const std::vector<RatVec>& d_rows, const RatVec& rhs, size_t ncols)
        : rows(d_rows.size()), cols(ncols), t(d_rows), obj(ncols + 1, Rat(0)), basis(rows) {
        for (size_t i = 0; i < rows; ++i) t[i].push_back(rhs[i]);
    }

    void pivot(size_t r, size_t c) {
        Rat p = t[r][c];
        for (auto& v : t[r]) v /= p;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || t[i][c] == 0) continue;
            Rat f = t[i][c];
            for (size_t j = 0; j <= cols; ++j) t[i][j] -= f * t[r][j];
        }
        if (obj[c] != 0) {
            Rat f = obj[c];
            for (size_t j = 0; j <= cols; ++j) obj[j] -= f * t[r][j];
        }
        basis[r] = c;
    }

    // price out the basic columns of a fresh objective
    void install_objective(const RatVec& c) {
        obj.assign(cols + 1, Rat(0));
        for (size_t j = 0; j < cols; ++j) obj[j] = c[j];
        for (size_t i = 0; i < rows; ++i) {
            if (obj[basis[i]] == 0) continue;
            Rat f = obj[basis[i]];
            for (size_t j = 0; j <= cols; ++j) obj[j] -= f * t[i][j];
        }
    }

    // returns false on unboundedness
    bool optimize(size_t usable_cols) {
        for (;;) {
            size_t enter = usable_cols;
            for (size_t j = 0; j < usable_cols; ++j)
                if (obj[j] < 0) {
                    enter = j;
                    break;
                }
            if (enter == usable_cols) return true;
            size_t leave = rows;
            Rat best;
            for (size_t i = 0; i < rows; ++i) {
                if (t[i][enter] <= 0) continue;
                Rat ratio = t[i][cols] / t[i][enter];
                if (leave == rows || ratio < best ||
                    (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == rows) return false;
            pivot(leave, enter);
        }
    }
};

}  // namespace

LPFeasibility lp_feasible(const RatMat& a, const RatVec& b) {
    LPOptimum o = lp_maximize(a, b, RatVec(a.cols(), Rat(0)));
    LPFeasibility f;
    f.feasible = o.feasible;
    if (o.feasible) f.point = o.point;
    else f.farkas = o.farkas;
    return f;
}

bool farkas_valid(const RatMat& a, const RatVec& b, const RatVec& y) {
    if (y.size() != a.rows()) return false;
    for (const auto& v : y)
        if (v < 0) return false;
    for (size_t j = 0; j < a.cols(); ++j) {
        Rat acc = 0;
        for (size_t i = 0; i < a.rows(); ++i) acc += y[i] * a(i, j);
        if (acc != 0) return false;
    }
    Rat rhs = 0;
    for (size_t i = 0; i < a.rows(); ++i) rhs += y[i] * b[i];
    return rhs < 0;
}

LPOptimum lp_maximize(const RatMat& a, const RatVec& b, const RatVec& c) {
    size_t m = a.rows(), n = a.cols();
    require_internal(b.size() == m && c.size() == n, "lp shape mismatch");
    LPOptimum out;

    // columns: x+ (n), x- (n), slack (m), artificial (m)
    size_t ncols = 2 * n + 2 * m;
    std::vector<RatVec> rows(m, RatVec(ncols, Rat(0)));
    RatVec rhs(m);
    RatVec sigma(m, Rat(1));
    for (size_t i = 0; i < m; ++i) {
        if (b[i] < 0) sigma[i] = -1;
        for (size_t j = 0; j < n; ++j) {
            rows[i][j] = sigma[i] * a(i, j);
            rows[i][n + j] = -sigma[i] * a(i, j);
        }
        rows[i][2 * n + i] = sigma[i];
        rows[i][2 * n + m + i] = 1;
        rhs[i] = sigma[i] * b[i];
    }
    Tableau tab(rows, rhs, ncols);
    for (size_t i = 0; i < m; ++i) tab.basis[i] = 2 * n + m + i;

    RatVec phase1(ncols, Rat(0));
    for (size_t i = 0; i < m; ++i) phase1[2 * n + m + i] = 1;
    tab.install_objective(phase1);
    bool ok = tab.optimize(ncols);
    require_internal(ok, "phase-1 objective is bounded by construction");

    if (tab.obj[ncols] != 0) {  // -objective value; nonzero means infeasible
        // multipliers y_i = c_B^T B^{-1} e_i recovered from the priced-out
        // artificial columns: obj[art_i] = 1 - y_i
        out.feasible = false;
        out.farkas.assign(m, Rat(0));
        for (size_t i = 0; i < m; ++i) {
            Rat y = Rat(1) - tab.obj[2 * n + m + i];
            out.farkas[i] = -sigma[i] * y;
        }
        require_internal(farkas_valid(a, b, out.farkas), "invalid infeasibility certificate");
        return out;
    }

    // drive leftover artificials out of the basis; an all-zero row is redundant
    for (size_t i = 0; i < tab.rows; ++i) {
        if (tab.basis[i] < 2 * n + m) continue;
        size_t c2 = 2 * n + m;
        for (size_t j = 0; j < 2 * n + m; ++j)
            if (tab.t[i][j] != 0) {
                c2 = j;
                break;
            }
        if (c2 < 2 * n + m) tab.pivot(i, c2);
    }

    out.feasible = true;
    RatVec phase2(ncols, Rat(0));
    for (size_t j = 0; j < n; ++j) {
        phase2[j] = -c[j];
        phase2[n + j] = c[j];
    }
    tab.install_objective(phase2);
    // artificial columns stay out: usable prefix only
    out.bounded = tab.optimize(2 * n + m);
    out.point.assign(n, Rat(0));
    for (size_t i = 0; i < tab.rows; ++i) {
        if (tab.basis[i] >= 2 * n + m) continue;  // degenerate artificial on a redundant row
        size_t v = tab.basis[i];
        if (v < n) out.point[v] += tab.t[i][tab.cols];
        else if (v < 2 * n) out.point[v - n] -= tab.t[i][tab.cols];
    }
    if (out.bounded) {
        out.value = tab.obj[ncols];  // obj row tracks -min(-c^T x) = max c^T x
        // the tableau's claim must match the recovered point
        Rat check = 0;
        for (size_t j = 0; j < n; ++j) check += c[j] * out.point[j];
        require_internal(check == out.value, "objective mismatch at optimum");
    }
    for (size_t i = 0; i < m; ++i) {
        Rat acc = 0;
        for (size_t j = 0; j < n; ++j) acc += a(i, j) * out.point[j];
        require_internal(acc <= b[i], "recovered point violates a constraint");
    }
    return out;
}

}  // namespace skelet
