#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace homforge {

// Arbitrary-precision integers everywhere in the lattice layer: Smith normal
// form intermediates can outgrow any fixed width even on small inputs.
using Int = boost::multiprecision::cpp_int;

inline Int int_gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }

inline Int int_abs(const Int& a) { return a < 0 ? Int(-a) : a; }

// g = gcd(a,b) together with x,y such that x*a + y*b = g. g >= 0.
inline void ext_gcd(const Int& a, const Int& b, Int& g, Int& x, Int& y) {
    Int old_r = a, r = b;
    Int old_x = 1, cur_x = 0;
    Int old_y = 0, cur_y = 1;
    while (r != 0) {
        Int q = old_r / r;
        Int t = old_r - q * r;
        old_r = r;
        r = t;
        t = old_x - q * cur_x;
        old_x = cur_x;
        cur_x = t;
        t = old_y - q * cur_y;
        old_y = cur_y;
        cur_y = t;
    }
    g = old_r;
    x = old_x;
    y = old_y;
    if (g < 0) {
        g = -g;
        x = -x;
        y = -y;
    }
}

// floor division (rounds toward negative infinity), for HNF reduction.
inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

}  // namespace homforge
