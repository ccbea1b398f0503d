#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "error.hpp"

namespace boolopt {

// Distinct prime factors by trial division; fine for the 2^26 - 1 range.
inline std::vector<std::uint64_t> prime_factors(std::uint64_t x) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 2; p * p <= x; ++p) {
        if (x % p == 0) {
            out.push_back(p);
            while (x % p == 0) x /= p;
        }
    }
    if (x > 1) out.push_back(x);
    return out;
}

// Smallest t >= 1 with a^t = 1 (mod v), by direct iteration.
inline std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t v) {
    require(v >= 1, "multiplicative_order: modulus must be positive");
    require(std::gcd(a % v, v) == 1 || v == 1, "multiplicative_order: a and v must be coprime");
    if (v == 1) return 1;
    std::uint64_t x = a % v;
    std::uint64_t t = 1;
    while (x != 1) {
        x = (x * a) % v;
        ++t;
    }
    return t;
}

inline std::uint64_t ipow(std::uint64_t base, unsigned exp) {
    std::uint64_t r = 1;
    while (exp--) r *= base;
    return r;
}

// If v = 7^e with e >= 1, returns e; otherwise 0.
inline unsigned seven_adic_exponent(std::uint64_t v) {
    if (v < 7) return 0;
    unsigned e = 0;
    while (v % 7 == 0) {
        v /= 7;
        ++e;
    }
    return v == 1 ? e : 0;
}

}  // namespace boolopt
