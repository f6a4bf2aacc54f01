#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace scharlau {

using BigInt = boost::multiprecision::cpp_int;

inline std::string to_string(const BigInt& x) { return x.str(); }

// Floor division for a positive divisor.
inline BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q = a / b;
    if (a < 0 && q * b != a) --q;
    return q;
}

inline BigInt abs_big(const BigInt& a) { return a < 0 ? BigInt(-a) : a; }

struct ExtendedGcd {
    BigInt g;  // non-negative
    BigInt s;
    BigInt t;  // s*a + t*b == g
};

inline ExtendedGcd extended_gcd(const BigInt& a, const BigInt& b) {
    BigInt old_r = a, r = b;
    BigInt old_s = 1, s = 0;
    BigInt old_t = 0, t = 1;
    while (r != 0) {
        BigInt q = old_r / r;
        BigInt tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    return {old_r, old_s, old_t};
}

}  // namespace scharlau
