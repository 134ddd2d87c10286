/**
 * Exact integer/rational scalar types and small helpers shared by the
 * geometry and combinatorics code.
 */
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace kap {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int int_gcd(Int a, Int b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        Int t = a % b;
        a = b;
        b = t;
    }
    return a;
}

/// Binomial coefficient as an exact big integer.
inline Int binomial(long n, long k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    Int r = 1;
    for (long i = 1; i <= k; ++i) {
        r *= (n - k + i);
        r /= i;
    }
    return r;
}

inline Int int_pow2(long e) {
    Int r = 1;
    return r << e;
}

/// Divide a vector by the gcd of its entries (no-op on the zero vector).
inline void make_primitive(std::vector<Int>& v) {
    Int g = 0;
    for (const auto& x : v) g = int_gcd(g, x);
    if (g > 1)
        for (auto& x : v) x /= g;
}

/// Scale a rational vector to the shortest parallel integer vector.
inline std::vector<Int> primitive_integer_direction(const std::vector<Rat>& v) {
    Int l = 1;
    for (const auto& x : v) {
        Int d = boost::multiprecision::denominator(x);
        l = l / int_gcd(l, d) * d;
    }
    std::vector<Int> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        Rat s = v[i] * Rat(l);
        out[i] = boost::multiprecision::numerator(s);
    }
    make_primitive(out);
    return out;
}

} // namespace kap
