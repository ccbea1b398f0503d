#pragma once

// Sign functions on GF(2^n), their exact Walsh spectra, affine distance and
// the covering radius of the first-order Reed-Muller code for tiny n.

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"
#include "fwht.hpp"
#include "gf2n.hpp"
#include "parallel.hpp"

namespace boolopt {

enum class Alphabet {
    total,    // {-1, +1}
    partial,  // {-1, 0, +1}
};

// Length-2^n table of signs indexed by field-element encoding.
class SignFunction {
public:
    SignFunction() = default;

    SignFunction(int n, std::vector<std::int8_t> values, Alphabet alphabet = Alphabet::total)
        : n_(n), values_(std::move(values)), alphabet_(alphabet) {
        require(n >= 1 && n <= FieldContext::kMaxDegree, "sign function: n out of range");
        require(values_.size() == (std::size_t{1} << n),
                "sign function: expected 2^" + std::to_string(n) + " values, got " + std::to_string(values_.size()));
        for (std::int8_t s : values_) {
            require(s == 1 || s == -1 || (s == 0 && alphabet == Alphabet::partial),
                    "sign function: value outside the declared alphabet");
        }
    }

    static SignFunction constant(int n, std::int8_t value = 1) {
        return SignFunction(n, std::vector<std::int8_t>(std::size_t{1} << n, value));
    }

    static SignFunction zero(int n) {
        return SignFunction(n, std::vector<std::int8_t>(std::size_t{1} << n, 0), Alphabet::partial);
    }

    int n() const noexcept { return n_; }
    std::size_t size() const noexcept { return values_.size(); }
    Alphabet alphabet() const noexcept { return alphabet_; }
    std::span<const std::int8_t> values() const noexcept { return values_; }
    std::int8_t operator[](std::size_t i) const noexcept { return values_[i]; }

    bool is_total() const noexcept {
        return std::all_of(values_.begin(), values_.end(), [](std::int8_t s) { return s != 0; });
    }

    std::int64_t sum() const noexcept {
        std::int64_t s = 0;
        for (std::int8_t v : values_) s += v;
        return s;
    }

    friend bool operator==(const SignFunction& a, const SignFunction& b) noexcept {
        return a.n_ == b.n_ && a.values_ == b.values_;
    }

private:
    int n_ = 0;
    std::vector<std::int8_t> values_;
    Alphabet alphabet_ = Alphabet::total;
};

// Unnormalized coefficients coeffs[a] = sum_y f(y) chi_a(y); the normalized
// value is coeffs[a] / 2^(n/2).
struct WalshSpectrum {
    int n = 0;
    std::vector<std::int32_t> coeffs;

    std::int32_t max_abs() const noexcept {
        std::int32_t m = 0;
        for (std::int32_t c : coeffs) m = std::max(m, c < 0 ? -c : c);
        return m;
    }

    double scale() const noexcept { return std::pow(2.0, n / 2.0); }
    double normalized(std::size_t a) const noexcept { return coeffs[a] / scale(); }

    std::int64_t sum_of_squares() const noexcept {
        std::int64_t s = 0;
        for (std::int64_t c : coeffs) s += c * c;
        return s;
    }
};

// Spectrum against the dot-product characters (-1)^<w,y>.
inline WalshSpectrum walsh_dot(const SignFunction& f) {
    WalshSpectrum s{f.n(), std::vector<std::int32_t>(f.values().begin(), f.values().end())};
    fwht_inplace(std::span<std::int32_t>(s.coeffs));
    return s;
}

// Spectrum against the field characters psi(a*y) = (-1)^Tr(a*y). Since
// Tr(a*y) = <dual(a), y>, this is the dot-product spectrum re-indexed.
inline WalshSpectrum walsh_transform(const FieldContext& ctx, const SignFunction& f) {
    require(f.n() == ctx.degree(), "walsh_transform: function has " + std::to_string(f.n()) +
                                       " variables but the field has degree " + std::to_string(ctx.degree()));
    const WalshSpectrum dot = walsh_dot(f);
    WalshSpectrum out{f.n(), std::vector<std::int32_t>(dot.coeffs.size())};
    const auto dual = ctx.dual_table();
    for (std::size_t a = 0; a < out.coeffs.size(); ++a) out.coeffs[a] = dot.coeffs[dual[a]];
    return out;
}

// max_a |f^(a)|; at least 1 for every total sign function.
inline double mu_value(const WalshSpectrum& s) { return s.max_abs() / s.scale(); }

inline bool is_balanced(const SignFunction& f) {
    require(f.is_total(), "is_balanced: function must be total");
    return f.sum() == 0;
}

// 0/1 truth table; F corresponds to the sign function (-1)^F.
struct BooleanFunction {
    int n = 0;
    std::vector<std::uint8_t> bits;
};

inline SignFunction to_sign(const BooleanFunction& F) {
    require(F.bits.size() == (std::size_t{1} << F.n), "truth table length must be 2^n");
    std::vector<std::int8_t> v(F.bits.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        require(F.bits[i] <= 1, "truth table entries must be 0 or 1");
        v[i] = F.bits[i] ? -1 : 1;
    }
    return SignFunction(F.n, std::move(v));
}

inline BooleanFunction to_boolean(const SignFunction& f) {
    require(f.is_total(), "to_boolean: function must be total");
    BooleanFunction F{f.n(), std::vector<std::uint8_t>(f.size())};
    for (std::size_t i = 0; i < f.size(); ++i) F.bits[i] = f[i] < 0 ? 1 : 0;
    return F;
}

// Best affine approximation G(y) = Tr(a*y) + constant.
struct AffineApproximation {
    std::uint32_t distance = 0;
    FieldElement a = 0;
    int constant = 0;
};

inline AffineApproximation affine_distance_profile(const FieldContext& ctx, const BooleanFunction& F) {
    const WalshSpectrum s = walsh_transform(ctx, to_sign(F));
    std::size_t best = 0;
    for (std::size_t a = 1; a < s.coeffs.size(); ++a)
        if (std::abs(s.coeffs[a]) > std::abs(s.coeffs[best])) best = a;
    const std::int32_t c = s.coeffs[best];
    return {static_cast<std::uint32_t>((s.coeffs.size() >> 1) - std::abs(c) / 2), static_cast<FieldElement>(best),
            c < 0 ? 1 : 0};
}

// f'(y, u, w) = f(y) * (-1)^(u w) on n + 2 variables; index y | u << n | w << (n+1).
inline SignFunction lift_two(const SignFunction& f) {
    require(f.is_total(), "lift_two: function must be total");
    const std::size_t len = f.size();
    std::vector<std::int8_t> out(len * 4);
    for (std::size_t uw = 0; uw < 4; ++uw) {
        const std::int8_t sign = uw == 3 ? -1 : 1;
        for (std::size_t y = 0; y < len; ++y) out[y | (uw * len)] = static_cast<std::int8_t>(f[y] * sign);
    }
    return SignFunction(f.n() + 2, std::move(out));
}

namespace detail {

// Minimum over all tables with entry 0 fixed to +1 and the top entries fixed
// by `prefix` of max_w |W(w)|, visiting the free low entries in reflected
// Gray-code order so each step is one entry flip (every coefficient moves by
// +-2).
template <int N>
int min_max_walsh_block(std::uint64_t prefix, int low_bits) {
    constexpr int S = 1 << N;
    std::array<std::int8_t, S> f{};
    f[0] = 1;
    for (int p = 1; p < S; ++p) {
        const int bit = p - 1;
        const bool set = bit >= low_bits && ((prefix >> (bit - low_bits)) & 1);
        f[p] = set ? -1 : 1;
    }
    std::array<std::array<std::int16_t, S>, S> row{};
    for (int p = 0; p < S; ++p)
        for (int w = 0; w < S; ++w) row[p][w] = (std::popcount(static_cast<unsigned>(p & w)) & 1) ? -1 : 1;

    std::array<std::int16_t, S> coeff{};
    for (int w = 0; w < S; ++w) {
        int acc = 0;
        for (int p = 0; p < S; ++p) acc += f[p] * row[p][w];
        coeff[w] = static_cast<std::int16_t>(acc);
    }
    auto max_abs = [&] {
        std::int16_t m = 0;
        for (int w = 0; w < S; ++w) m = std::max<std::int16_t>(m, static_cast<std::int16_t>(std::abs(coeff[w])));
        return m;
    };
    int best = max_abs();
    const std::uint64_t steps = std::uint64_t{1} << low_bits;
    for (std::uint64_t i = 1; i < steps; ++i) {
        const int p = std::countr_zero(i) + 1;
        const std::int16_t delta = static_cast<std::int16_t>(-2 * f[p]);
        f[p] = static_cast<std::int8_t>(-f[p]);
        const auto& r = row[p];
        std::int16_t m = 0;
        for (int w = 0; w < S; ++w) {
            coeff[w] = static_cast<std::int16_t>(coeff[w] + delta * r[w]);
            m = std::max<std::int16_t>(m, static_cast<std::int16_t>(coeff[w] < 0 ? -coeff[w] : coeff[w]));
        }
        best = std::min<int>(best, m);
    }
    return best;
}

template <int N>
int min_max_walsh_exhaustive() {
    constexpr int free_bits = (1 << N) - 1;
    const int prefix_bits = free_bits >= 12 ? 6 : 0;
    const int low_bits = free_bits - prefix_bits;
    const std::size_t blocks = std::size_t{1} << prefix_bits;
    std::vector<int> best(blocks);
    parallel_for(blocks, [&](std::size_t b) { best[b] = min_max_walsh_block<N>(b, low_bits); });
    return *std::min_element(best.begin(), best.end());
}

}  // namespace detail

// Covering radius of the [2^n, n+1] Reed-Muller code by exhaustive scan of all
// 2^(2^n) tables (half of them, complementation preserves every |W|).
// n = 5 scans 2^31 tables and takes minutes.
inline int rho_exhaustive(int n) {
    require(n >= 1 && n <= 5, "rho_exhaustive supports 1 <= n <= 5 (cost guard), got n = " + std::to_string(n));
    int best = 0;
    switch (n) {
        case 1: best = detail::min_max_walsh_exhaustive<1>(); break;
        case 2: best = detail::min_max_walsh_exhaustive<2>(); break;
        case 3: best = detail::min_max_walsh_exhaustive<3>(); break;
        case 4: best = detail::min_max_walsh_exhaustive<4>(); break;
        default: best = detail::min_max_walsh_exhaustive<5>(); break;
    }
    return (1 << (n - 1)) - best / 2;
}

}  // namespace boolopt
