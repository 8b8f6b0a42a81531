#include "skelet/homology.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "skelet/errors.hpp"
#include "skelet/parallel.hpp"

namespace skelet {

void SparseIntMat::set(size_t i, size_t j, Int v) {
    require_internal(i < rows && j < cols, "sparse entry out of range");
    auto& c = col[j];
    auto it = std::lower_bound(c.begin(), c.end(), i,
                               [](const auto& e, size_t r) { return e.first < r; });
    if (it != c.end() && it->first == i) {
        if (v == 0)
            c.erase(it);
        else
            it->second = v;
    } else if (v != 0) {
        c.insert(it, {i, v});
    }
}

IntMat SparseIntMat::dense() const {
    IntMat m(rows, cols);
    for (size_t j = 0; j < cols; ++j)
        for (const auto& [i, v] : col[j]) m(i, j) = v;
    return m;
}

SparseIntMat sparse_product(const SparseIntMat& a, const SparseIntMat& b) {
    require_internal(a.cols == b.rows, "sparse product shape mismatch");
    SparseIntMat p = SparseIntMat::zero(a.rows, b.cols);
    for (size_t j = 0; j < b.cols; ++j) {
        std::map<size_t, Int> acc;
        for (const auto& [k, bv] : b.col[j])
            for (const auto& [i, av] : a.col[k]) acc[i] += av * bv;
        for (const auto& [i, v] : acc)
            if (v != 0) p.col[j].push_back({i, v});
    }
    return p;
}

bool sparse_is_zero(const SparseIntMat& a) {
    for (const auto& c : a.col)
        if (!c.empty()) return false;
    return true;
}

SmithSummary sparse_smith(const SparseIntMat& m) {
    SmithSummary out;
    if (m.rows == 0 || m.cols == 0) return out;

    std::vector<std::map<size_t, Int>> row(m.rows);
    std::vector<std::set<size_t>> colrows(m.cols);
    for (size_t j = 0; j < m.cols; ++j)
        for (const auto& [i, v] : m.col[j]) {
            row[i][j] = v;
            colrows[j].insert(i);
        }
    std::vector<char> row_live(m.rows, 1), col_live(m.cols, 1);

    size_t pivots = 0;
    while (true) {
        // unit entry with the least Markowitz fill estimate
        bool found = false;
        size_t pi = 0, pj = 0;
        size_t best = static_cast<size_t>(-1);
        for (size_t i = 0; i < m.rows && best > 0; ++i) {
            if (!row_live[i]) continue;
            for (const auto& [j, v] : row[i]) {
                if (v != 1 && v != -1) continue;
                size_t score = (row[i].size() - 1) * (colrows[j].size() - 1);
                if (score < best) {
                    best = score;
                    pi = i;
                    pj = j;
                    found = true;
                    if (best == 0) break;
                }
            }
        }
        if (!found) break;

        Int p = row[pi][pj];  // +-1, self-inverse
        auto victims = colrows[pj];
        for (size_t i2 : victims) {
            if (i2 == pi) continue;
            Int f = row[i2][pj] * p;
            for (const auto& [j2, v2] : row[pi]) {
                auto it = row[i2].find(j2);
                Int nv = (it != row[i2].end() ? it->second : Int(0)) - f * v2;
                if (nv == 0) {
                    if (it != row[i2].end()) {
                        row[i2].erase(it);
                        colrows[j2].erase(i2);
                    }
                } else {
                    if (it == row[i2].end()) colrows[j2].insert(i2);
                    row[i2][j2] = nv;
                }
            }
        }
        for (const auto& [j2, v2] : row[pi]) colrows[j2].erase(pi);
        row_live[pi] = 0;
        col_live[pj] = 0;
        ++pivots;
    }
    out.rank = pivots;

    // residual: live rows and columns that still hold entries
    std::vector<size_t> rs, cs;
    std::map<size_t, size_t> rix, cix;
    for (size_t i = 0; i < m.rows; ++i)
        if (row_live[i] && !row[i].empty()) {
            rix[i] = rs.size();
            rs.push_back(i);
        }
    for (size_t j = 0; j < m.cols; ++j)
        if (col_live[j] && !colrows[j].empty()) {
            cix[j] = cs.size();
            cs.push_back(j);
        }
    if (rs.empty() || cs.empty()) return out;

    IntMat res(rs.size(), cs.size());
    for (size_t i : rs)
        for (const auto& [j, v] : row[i])
            if (col_live[j]) res(rix[i], cix[j]) = v;
    auto snf = smith_normal_form(res);
    for (const auto& f : snf.invariant_factors()) {
        ++out.rank;
        if (f > 1) out.torsion.push_back(f);
    }
    return out;
}

namespace {

void check_complex(const ChainComplex& c) {
    size_t top = c.top_degree();
    require_internal(c.d.size() == c.sizes.size(), "boundary count does not match degrees");
    for (size_t k = 1; k <= top; ++k) {
        require_internal(c.d[k].rows == c.sizes[k - 1] && c.d[k].cols == c.sizes[k],
                         "boundary matrix shape mismatch");
        if (k >= 2 && !sparse_is_zero(sparse_product(c.d[k - 1], c.d[k])))
            fail(ErrorCode::NotAComplex, "boundary of boundary is nonzero in degree " +
                                             std::to_string(k));
    }
}

HomologyResult assemble(const ChainComplex& c, const std::vector<SmithSummary>& per_degree) {
    size_t top = c.top_degree();
    HomologyResult h;
    h.betti.resize(top + 1);
    h.torsion.resize(top + 1);
    for (size_t k = 0; k <= top; ++k) {
        size_t lower = k >= 1 ? per_degree[k].rank : 0;
        size_t upper = k + 1 <= top ? per_degree[k + 1].rank : 0;
        require_internal(c.sizes[k] >= lower + upper, "rank exceeds chain size");
        h.betti[k] = c.sizes[k] - lower - upper;
        if (k + 1 <= top) h.torsion[k].invariant_factors = per_degree[k + 1].torsion;
    }
    Int cells = 0;
    for (size_t k = 0; k <= top; ++k)
        cells += (k % 2 == 0 ? Int(c.sizes[k]) : -Int(c.sizes[k]));
    require_internal(h.euler() == cells, "homology does not balance the cell census");
    return h;
}

}  // namespace

HomologyResult homology(const ChainComplex& c) {
    check_complex(c);
    size_t top = c.top_degree();
    std::vector<SmithSummary> per_degree(top + 1);
    parallel_for(top, [&](size_t i) { per_degree[i + 1] = sparse_smith(c.d[i + 1]); });
    return assemble(c, per_degree);
}

HomologyResult homology_reference(const ChainComplex& c) {
    check_complex(c);
    size_t top = c.top_degree();
    std::vector<SmithSummary> per_degree(top + 1);
    for (size_t k = 1; k <= top; ++k) {
        auto snf = smith_normal_form(c.d[k].dense());
        for (const auto& f : snf.invariant_factors()) {
            ++per_degree[k].rank;
            if (f > 1) per_degree[k].torsion.push_back(f);
        }
    }
    return assemble(c, per_degree);
}

}  // namespace skelet
