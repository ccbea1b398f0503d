#pragma once

// Multiplicative characters of order dividing v, Gauss sums, their closed
// forms over Q(sqrt(-7)), Davenport-Hasse lifting, and the search for odd
// lift degrees with small Gauss-sum angles.

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "gf2n.hpp"
#include "numtheory.hpp"
#include "quadint.hpp"

namespace boolopt {

// exp(2 pi i num / den), reduced before going to floating point.
inline std::complex<double> root_of_unity(std::uint64_t num, std::uint64_t den) {
    const long double angle = 2.0L * std::numbers::pi_v<long double> * static_cast<long double>(num % den) /
                              static_cast<long double>(den);
    return {static_cast<double>(std::cos(angle)), static_cast<double>(std::sin(angle))};
}

// chi^j(y) = zeta_v^(j * dlog(y)).
struct MultChar {
    std::uint32_t v = 1;
    std::uint32_t j = 0;

    std::uint32_t order() const noexcept { return v / std::gcd(j % v, v); }
    bool trivial() const noexcept { return j % v == 0; }

    std::complex<double> operator()(const FieldContext& ctx, FieldElement y) const {
        require(y != 0, "multiplicative characters are evaluated on nonzero elements only");
        return root_of_unity(std::uint64_t{j} * (ctx.dlog(y) % v), v);
    }
};

// c[i] = sum of psi(y) over nonzero y with label i; every Gauss sum of order
// dividing v is a Fourier combination of these integers.
struct CosetPsiVector {
    std::uint32_t v = 1;
    int n = 0;
    std::vector<std::int64_t> c;

    std::int64_t total() const noexcept { return std::accumulate(c.begin(), c.end(), std::int64_t{0}); }
};

inline CosetPsiVector coset_psi_vector(const FieldContext& ctx, std::uint32_t v) {
    require(v >= 1 && ctx.group_order() % v == 0,
            "v = " + std::to_string(v) + " does not divide 2^n - 1 = " + std::to_string(ctx.group_order()));
    CosetPsiVector out{v, ctx.degree(), std::vector<std::int64_t>(v, 0)};
    const auto dlog = ctx.dlog_table();
    for (FieldElement y = 1; y < ctx.size(); ++y) out.c[dlog[y] % v] += ctx.psi(y);
    return out;
}

// Same vector for the characters tau o N of the big field, tau of order
// dividing v on the subfield: elements are labelled by the small-field dlog
// of their norm.
inline CosetPsiVector lifted_coset_psi_vector(const SubfieldMap& map, std::uint32_t v) {
    const FieldContext& big = map.big();
    const FieldContext& small = map.small();
    require(v >= 1 && small.group_order() % v == 0,
            "v = " + std::to_string(v) + " does not divide 2^m - 1 = " + std::to_string(small.group_order()));
    CosetPsiVector out{v, big.degree(), std::vector<std::int64_t>(v, 0)};
    for (FieldElement y = 1; y < big.size(); ++y) out.c[small.dlog(map.norm(y)) % v] += big.psi(y);
    return out;
}

// G(chi^j) = sum_i c_i zeta_v^(i j); exactly -1 for j = 0.
inline std::complex<double> gauss_sum(const CosetPsiVector& cpv, std::uint32_t j) {
    require(j < cpv.v, "gauss_sum: exponent j must lie in [0, v)");
    if (j == 0) return {static_cast<double>(cpv.total()), 0.0};
    std::complex<long double> acc = 0;
    for (std::uint32_t i = 0; i < cpv.v; ++i) {
        const std::complex<double> z = root_of_unity(std::uint64_t{i} * j, cpv.v);
        acc += static_cast<long double>(cpv.c[i]) * std::complex<long double>(z.real(), z.imag());
    }
    return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

inline std::vector<std::complex<double>> gauss_sums(const CosetPsiVector& cpv) {
    std::vector<std::complex<double>> out(cpv.v);
    for (std::uint32_t j = 0; j < cpv.v; ++j) out[j] = gauss_sum(cpv, j);
    return out;
}

// ord_v(2) for v = 7^e, checked against 3 * 7^(e-1) (which is odd).
inline std::uint64_t ord_check(std::uint64_t v) {
    const unsigned e = seven_adic_exponent(v);
    require(e >= 1, "ord_check expects v = 7^e, got " + std::to_string(v));
    const std::uint64_t m = multiplicative_order(2, v);
    if (m != 3 * ipow(7, e - 1) || m % 2 == 0) {
        throw std::logic_error("ord_" + std::to_string(v) + "(2) = " + std::to_string(m) + " != 3*7^(e-1)");
    }
    return m;
}

// The Gauss sum of an order-7^d character over GF(2^(s m)), m = ord_{7^e}(2),
// divided by 2^(s m / 2):
//   -(-1)^s ((-1 +- sqrt(-7)) / 2^(3/2))^K,   K = 7^(e-d) s.
// Kept exact as w^K in Z[(1+sqrt(-7))/2] over the power of two 2^(3K/2).
// Uses class number h = 1 of Q(sqrt(-7)) and a = -1, b = +-1 in a^2 + 7 b^2 = 4 * 2^h.
struct ClosedFormGauss {
    unsigned e = 1;
    unsigned d = 1;
    std::uint64_t s = 1;
    int sign = 1;            // the +- in front of sqrt(-7)
    std::uint64_t exponent = 1;  // K
    int prefactor = 1;       // -(-1)^s
    QuadInt7<BigInt> power;  // (-1 +- sqrt(-7))^K

    std::complex<double> normalized() const {
        return static_cast<double>(prefactor) * power.to_complex(3 * static_cast<long long>(exponent));
    }

    // |w^K|^2 = 8^K exactly.
    bool unit_magnitude() const { return power.norm() == boost::multiprecision::pow(BigInt(8), static_cast<unsigned>(exponent)); }

    // Unnormalized G(chi) over GF(2^n).
    std::complex<double> value(int n) const { return normalized() * std::pow(2.0, n / 2.0); }
};

inline ClosedFormGauss closed_form_gauss(unsigned e, unsigned d, std::uint64_t s, int sign) {
    require(d >= 1 && d <= e, "closed_form_gauss: need 1 <= d <= e");
    require(s % 2 == 1, "closed_form_gauss: lift degree s must be odd");
    require(sign == 1 || sign == -1, "closed_form_gauss: sign must be +1 or -1");
    ClosedFormGauss out;
    out.e = e;
    out.d = d;
    out.s = s;
    out.sign = sign;
    out.exponent = ipow(7, e - d) * s;
    out.prefactor = 1;  // s odd
    out.power = QuadInt7<BigInt>(BigInt(-2), BigInt(2 * sign)).pow(out.exponent);
    return out;
}

// Per nontrivial character: which sign of the closed form matches the
// brute-force Gauss sum, and how closely.
struct CharacterSignMatch {
    std::uint32_t j = 0;
    unsigned d = 0;
    int sign = 0;  // 0 when neither sign matches within tolerance
    double relative_residual = 0.0;
};

// cpv must come from GF(2^n) with n = s * ord_{7^e}(2), s odd, v = 7^e.
inline std::vector<CharacterSignMatch> match_closed_forms(const CosetPsiVector& cpv, double tol = 1e-6) {
    const unsigned e = seven_adic_exponent(cpv.v);
    require(e >= 1, "match_closed_forms: v must be a power of 7");
    const std::uint64_t m = ord_check(cpv.v);
    require(cpv.n % static_cast<int>(m) == 0 && (cpv.n / m) % 2 == 1,
            "match_closed_forms: n must be an odd multiple of ord_v(2)");
    const std::uint64_t s = cpv.n / m;
    const double scale = std::pow(2.0, cpv.n / 2.0);
    std::vector<CharacterSignMatch> out;
    for (std::uint32_t j = 1; j < cpv.v; ++j) {
        const std::uint32_t order = cpv.v / std::gcd(j, cpv.v);
        const unsigned d = seven_adic_exponent(order);
        const std::complex<double> g = gauss_sum(cpv, j);
        CharacterSignMatch best{j, d, 0, std::numeric_limits<double>::infinity()};
        for (int sign : {1, -1}) {
            const double r = std::abs(g - closed_form_gauss(e, d, s, sign).value(cpv.n)) / scale;
            if (r < best.relative_residual) {
                best.relative_residual = r;
                best.sign = sign;
            }
        }
        if (best.relative_residual > tol) best.sign = 0;
        out.push_back(best);
    }
    return out;
}

struct DavenportHasseReport {
    int m = 0;
    std::uint64_t s = 0;
    std::uint32_t v = 0;
    std::vector<double> relative_residuals;  // index j - 1
    double max_residual = 0.0;
    bool passed = false;
};

// G over the big field of the lifted character tau^j o N against G(tau^j)^s
// over the small field, for every nontrivial j. For odd s the sign factor
// (-1)^(s-1) is 1.
inline DavenportHasseReport davenport_hasse_check(const FieldContext& small, const FieldContext& big, std::uint32_t v,
                                                  double tol = 1e-6) {
    require(big.degree() % small.degree() == 0, "davenport_hasse_check: subfield degree must divide field degree");
    const std::uint64_t s = big.degree() / small.degree();
    require(s % 2 == 1, "davenport_hasse_check: only odd lift degrees s are supported");
    require(v >= 2 && small.group_order() % v == 0, "davenport_hasse_check: v must divide 2^m - 1");
    const SubfieldMap map(big, small);
    const CosetPsiVector base = coset_psi_vector(small, v);
    const CosetPsiVector lifted = lifted_coset_psi_vector(map, v);
    DavenportHasseReport rep{small.degree(), s, v, {}, 0.0, false};
    for (std::uint32_t j = 1; j < v; ++j) {
        const std::complex<double> lhs = gauss_sum(lifted, j);
        const std::complex<double> rhs = std::pow(gauss_sum(base, j), static_cast<int>(s));
        const double r = std::abs(lhs - rhs) / std::abs(rhs);
        rep.relative_residuals.push_back(r);
        rep.max_residual = std::max(rep.max_residual, r);
    }
    rep.passed = rep.max_residual <= tol;
    return rep;
}

// Angle of (-1 + sqrt(-7)) / 2^(3/2) on the unit circle.
inline double base_gauss_angle() { return std::atan2(std::sqrt(7.0), -1.0); }

// Principal value of k * theta in (-pi, pi].
inline double wrapped_multiple(std::uint64_t k, double theta) {
    const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
    long double x = std::fmod(static_cast<long double>(k) * theta, two_pi);
    if (x > std::numbers::pi_v<long double>) x -= two_pi;
    if (x <= -std::numbers::pi_v<long double>) x += two_pi;
    return static_cast<double>(x);
}

// Largest |arg| of the closed-form value over d = 1..e and both signs.
inline double worst_gauss_angle(unsigned e, std::uint64_t s) {
    const double theta = base_gauss_angle();
    double worst = 0.0;
    for (unsigned d = 1; d <= e; ++d) {
        for (int sign : {1, -1}) {
            worst = std::max(worst, std::abs(wrapped_multiple(ipow(7, e - d) * s, sign * theta)));
        }
    }
    return worst;
}

struct SSearchResult {
    bool found = false;
    std::uint64_t s = 0;
    double worst_angle = 0.0;
};

// Sufficient condition: |arg(w^s)| <= epsilon / 7^(e-1) bounds
// every d, since the order-7^d angle is 7^(e-d) times the d = e angle.
inline bool sufficient_angle_condition(unsigned e, double epsilon, std::uint64_t s) {
    return std::abs(wrapped_multiple(s, base_gauss_angle())) <= epsilon / static_cast<double>(ipow(7, e - 1));
}

// Smallest odd s <= s_max with every closed-form Gauss-sum angle within
// epsilon (full sweep over d and sign). The d = e angle is one of the swept
// values, so s is rejected early when it alone exceeds epsilon.
inline SSearchResult find_good_s(unsigned e, double epsilon, std::uint64_t s_max) {
    require(e >= 1, "find_good_s: e must be positive");
    require(epsilon > 0, "find_good_s: epsilon must be positive");
    const double theta = base_gauss_angle();
    for (std::uint64_t s = 1; s <= s_max; s += 2) {
        if (std::abs(wrapped_multiple(s, theta)) > epsilon) continue;
        const double worst = worst_gauss_angle(e, s);
        if (worst <= epsilon) return {true, s, worst};
    }
    return {false, 0, 0.0};
}

}  // namespace boolopt
