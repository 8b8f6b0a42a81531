#pragma once

// Exact integer linear algebra over Z^n: Smith and Hermite normal forms,
// saturation, and quotient groups Z^n / <rows>. These carry all component
// group and homology torsion computations.

#include "skelet/matrix.hpp"

#include <vector>

namespace skelet {

struct SNFDecomposition {
    IntMat d;      // diagonal, invariant factors d_1 | d_2 | ... | d_r >= 1, then zeros
    IntMat left;   // unimodular U
    IntMat right;  // unimodular V, with U * A * V = D
    std::vector<Int> invariant_factors() const {  // nonzero diagonal entries
        std::vector<Int> f;
        size_t n = std::min(d.rows(), d.cols());
        for (size_t i = 0; i < n; ++i)
            if (d(i, i) != 0) f.push_back(d(i, i));
        return f;
    }
    size_t rank() const { return invariant_factors().size(); }
};

// U A V = D with the divisibility chain; deterministic (min-abs pivot, ties by
// position).
SNFDecomposition smith_normal_form(const IntMat& a);

struct HNFDecomposition {
    IntMat h;  // row-style Hermite normal form: pivots positive, entries above
               // pivots reduced into [0, pivot), zero rows last
    IntMat u;  // unimodular with U * A = H
};

HNFDecomposition hermite_normal_form(const IntMat& a);

struct FiniteAbelianGroup {
    std::vector<Int> invariant_factors;  // each >= 2, divisibility chain; empty = trivial
    Int order() const {
        Int o = 1;
        for (const auto& f : invariant_factors) o *= f;
        return o;
    }
    bool trivial() const { return invariant_factors.empty(); }
    bool operator==(const FiniteAbelianGroup& o) const {
        return invariant_factors == o.invariant_factors;
    }
};

// Z^ambient_rank / <rows of sub>.
//
// coset_reps describe the dual side: the finite set of characters theta in
// [0,1)^n with <g, theta> integral for all rows g, one lexicographically least
// representative per connected component of the solution group. These are the
// stable keys the fiber groups hand to cell identification.
struct LatticeQuotient {
    size_t ambient_rank = 0;
    IntMat sub_generators;
    FiniteAbelianGroup torsion;
    size_t free_rank = 0;
    std::vector<RatVec> coset_reps;  // sorted lexicographically
};

LatticeQuotient lattice_quotient(size_t ambient_rank, const IntMat& sub);

// basis of (R . rows) ∩ Z^ambient_rank, rows of the result, in Hermite normal
// form (canonical, saturated)
IntMat saturate(size_t ambient_rank, const IntMat& sub);

// basis of {x in Z^n : A x = 0}, rows of the result, Hermite-canonical
IntMat integer_kernel(const IntMat& a);

// Solve x * A = b in integers (x a row vector). Returns false when no integral
// solution exists.
bool integer_row_solve(const IntMat& a, const IntVec& b, IntVec& x);

RatVec lex_min(const std::vector<RatVec>& vs);

}  // namespace skelet
