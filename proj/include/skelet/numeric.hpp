#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

namespace skelet {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

inline Int num(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int den(const Rat& q) { return boost::multiprecision::denominator(q); }

inline Int floor_div(const Int& a, const Int& b) {
    // b > 0 assumed
    Int q = a / b, r = a % b;
    if (r != 0 && a < 0) --q;
    return q;
}

inline Int floor_rat(const Rat& q) { return floor_div(num(q), den(q)); }

inline Int ceil_rat(const Rat& q) {
    Int f = floor_rat(q);
    return f + (Rat(f) == q ? 0 : 1);
}

// fractional part in [0, 1)
inline Rat mod1(const Rat& q) { return q - Rat(floor_rat(q)); }

inline RatVec mod1(const RatVec& v) {
    RatVec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = mod1(v[i]);
    return r;
}

inline bool is_integer(const Rat& q) { return den(q) == 1; }

inline Int gcd(Int a, Int b) { return boost::multiprecision::gcd(a, b); }
inline Int lcm(Int a, Int b) { return boost::multiprecision::lcm(a, b); }

inline int sign(const Int& a) { return a == 0 ? 0 : (a < 0 ? -1 : 1); }
inline int sign(const Rat& a) { return a == 0 ? 0 : (a < 0 ? -1 : 1); }

inline std::string to_string(const Int& a) { return a.str(); }
inline std::string to_string(const Rat& q) {
    if (den(q) == 1) return num(q).str();
    return num(q).str() + "/" + den(q).str();
}

}  // namespace skelet
