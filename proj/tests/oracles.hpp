#pragma once

// Brute-force references used only by tests. Nothing here touches the log
// tables, the trace mask, the dual-basis re-indexing or the butterfly: field
// products go through the modulus directly and sums are evaluated term by term.

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include "boolopt/boolfun.hpp"
#include "boolopt/gf2n.hpp"

namespace oracle {

using boolopt::FieldContext;
using boolopt::FieldElement;

// Tr(y) = y + y^2 + ... + y^(2^(n-1)), evaluated in the field.
inline int trace(const FieldContext& ctx, FieldElement y) {
    FieldElement acc = 0;
    FieldElement t = y;
    for (int k = 0; k < ctx.degree(); ++k) {
        acc ^= t;
        t = ctx.mul_poly(t, t);
    }
    return static_cast<int>(acc);  // 0 or 1
}

inline int psi(const FieldContext& ctx, FieldElement y) { return oracle::trace(ctx, y) ? -1 : 1; }

inline FieldElement power(const FieldContext& ctx, FieldElement y, std::uint64_t e) {
    FieldElement r = 1;
    for (std::uint64_t i = 0; i < e; ++i) r = ctx.mul_poly(r, y);
    return r;
}

// dlog by walking generator powers.
inline std::vector<std::uint32_t> dlog_table(const FieldContext& ctx) {
    std::vector<std::uint32_t> out(ctx.size(), 0);
    FieldElement cur = 1;
    for (std::uint32_t k = 0; k < ctx.group_order(); ++k) {
        out[cur] = k;
        cur = ctx.mul_poly(cur, ctx.generator());
    }
    return out;
}

// coeffs(a) = sum_y f(y) psi(a y), O(4^n).
inline std::vector<std::int64_t> walsh_direct(const FieldContext& ctx, const boolopt::SignFunction& f) {
    std::vector<std::int64_t> out(ctx.size(), 0);
    for (FieldElement a = 0; a < ctx.size(); ++a) {
        std::int64_t acc = 0;
        for (FieldElement y = 0; y < ctx.size(); ++y) acc += f[y] * oracle::psi(ctx, ctx.mul_poly(a, y));
        out[a] = acc;
    }
    return out;
}

// min over the 2^(n+1) affine functions <w,y> + c of the Hamming distance.
inline std::uint32_t affine_distance_scan(const boolopt::BooleanFunction& F) {
    const std::uint32_t size = 1u << F.n;
    std::uint32_t best = size;
    for (std::uint32_t w = 0; w < size; ++w) {
        for (int c = 0; c < 2; ++c) {
            std::uint32_t d = 0;
            for (std::uint32_t y = 0; y < size; ++y) {
                const int g = (std::popcount(w & y) & 1) ^ c;
                d += F.bits[y] != g;
            }
            best = std::min(best, d);
        }
    }
    return best;
}

// Covering radius by scanning every table and every affine function.
inline int rho_scan(int n) {
    const std::uint32_t size = 1u << n;
    int best = 0;
    for (std::uint64_t t = 0; t < (std::uint64_t{1} << size); ++t) {
        boolopt::BooleanFunction F{n, std::vector<std::uint8_t>(size)};
        for (std::uint32_t y = 0; y < size; ++y) F.bits[y] = (t >> y) & 1;
        best = std::max(best, static_cast<int>(affine_distance_scan(F)));
    }
    return best;
}

// G(chi^j) for chi(g^k) = exp(2 pi i k / v), summed over all nonzero y.
inline std::complex<double> gauss_sum(const FieldContext& ctx, std::uint32_t v, std::uint32_t j) {
    const auto dl = dlog_table(ctx);
    std::complex<double> acc = 0;
    for (FieldElement y = 1; y < ctx.size(); ++y) {
        const double ang = 2.0 * std::numbers::pi * static_cast<double>((std::uint64_t{j} * dl[y]) % v) / v;
        acc += static_cast<double>(oracle::psi(ctx, y)) * std::polar(1.0, ang);
    }
    return acc;
}

}  // namespace oracle
