#pragma once

// Chain complexes over Z and integral homology. The fast path eliminates
// unit pivots sparsely and hands the small residual to the dense Smith
// routine; homology_reference runs dense Smith on everything and exists to
// cross-check the fast path.

#include <vector>

#include "skelet/lattice.hpp"

namespace skelet {

struct SparseIntMat {
    size_t rows = 0, cols = 0;
    // per column: (row, value) with value != 0, sorted by row
    std::vector<std::vector<std::pair<size_t, Int>>> col;

    static SparseIntMat zero(size_t r, size_t c) {
        SparseIntMat m;
        m.rows = r;
        m.cols = c;
        m.col.resize(c);
        return m;
    }
    void set(size_t i, size_t j, Int v);
    IntMat dense() const;
};

SparseIntMat sparse_product(const SparseIntMat& a, const SparseIntMat& b);
bool sparse_is_zero(const SparseIntMat& a);

struct ChainComplex {
    std::vector<size_t> sizes;     // cells per degree, 0..D
    std::vector<SparseIntMat> d;   // d[k] = boundary degree k -> k-1; d[0] unused
    size_t top_degree() const { return sizes.empty() ? 0 : sizes.size() - 1; }
};

struct HomologyResult {
    std::vector<size_t> betti;                 // degrees 0..D
    std::vector<FiniteAbelianGroup> torsion;   // torsion subgroup of H_k
    Int euler() const {
        Int e = 0;
        for (size_t k = 0; k < betti.size(); ++k)
            e += (k % 2 == 0 ? Int(betti[k]) : -Int(betti[k]));
        return e;
    }
    bool torsion_free() const {
        for (const auto& t : torsion)
            if (!t.trivial()) return false;
        return true;
    }
};

// rank and invariant factors > 1, by unit-pivot elimination plus a dense
// Smith pass on the residual
struct SmithSummary {
    size_t rank = 0;
    std::vector<Int> torsion;
};
SmithSummary sparse_smith(const SparseIntMat& m);

// checks d.d = 0 (NotAComplex otherwise); per-degree reductions run in
// parallel
HomologyResult homology(const ChainComplex& c);

// dense Smith on every boundary matrix, serial; the testing oracle
HomologyResult homology_reference(const ChainComplex& c);

}  // namespace skelet
