#pragma once

#include "skelet/matrix.hpp"

namespace skelet {

// Feasibility of A x <= b over the rationals, x free. Infeasible systems come
// with a certificate y >= 0, y^T A = 0, y^T b < 0, re-checkable by farkas_valid.
struct LPFeasibility {
    bool feasible = false;
    RatVec point;
    RatVec farkas;
};

LPFeasibility lp_feasible(const RatMat& a, const RatVec& b);

bool farkas_valid(const RatMat& a, const RatVec& b, const RatVec& y);

// max c^T x subject to A x <= b
struct LPOptimum {
    bool feasible = false;
    bool bounded = false;
    Rat value;
    RatVec point;
    RatVec farkas;  // when infeasible
};

LPOptimum lp_maximize(const RatMat& a, const RatVec& b, const RatVec& c);

}  // namespace skelet
