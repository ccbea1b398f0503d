#pragma once

// Coset construction of sign functions on GF(2^n).
//
// H is the index-v subgroup of GF(2^n)*, with coset representatives
// T = (g^0, ..., g^(v-1)). Given signs h on H and a balanced g on T with
// g(g^0) = 0, the function is
//
//   f(0) = 1,   f(y) = h(y) on H,   f(y) = g(rep of y's coset) elsewhere,
//
// and splits as f = f1 + f2 away from 0 with f1 = 1_H h and f2 the coset part.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "boolfun.hpp"
#include "charsums.hpp"
#include "discrepancy.hpp"
#include "error.hpp"
#include "gf2n.hpp"

namespace boolopt {

class CosetSystem {
public:
    CosetSystem(FieldContext ctx, std::uint32_t v) : ctx_(std::move(ctx)), v_(v) {
        require(v >= 1 && ctx_.group_order() % v == 0,
                "index v = " + std::to_string(v) + " does not divide 2^n - 1 = " + std::to_string(ctx_.group_order()));
        reps_.reserve(v);
        for (std::uint32_t i = 0; i < v; ++i) reps_.push_back(ctx_.exp(i));
    }

    const FieldContext& field() const noexcept { return ctx_; }
    std::uint32_t index() const noexcept { return v_; }
    std::size_t subgroup_size() const noexcept { return ctx_.group_order() / v_; }
    std::span<const FieldElement> reps() const noexcept { return reps_; }

    std::uint32_t label(FieldElement y) const { return ctx_.coset_label(v_, y); }

    // k-th element of H in increasing dlog order, g^(k v).
    FieldElement subgroup_element(std::size_t k) const noexcept { return ctx_.exp(std::uint64_t{k} * v_); }

    // Position of y in that order; pre: y in H.
    std::size_t subgroup_position(FieldElement y) const noexcept { return ctx_.dlog(y) / v_; }

private:
    FieldContext ctx_;
    std::uint32_t v_;
    std::vector<FieldElement> reps_;
};

// g on the coset representatives: 0 at g^0, +-1 elsewhere, summing to zero.
class GAssignment {
public:
    explicit GAssignment(std::vector<std::int8_t> values) : values_(std::move(values)) {
        require(!values_.empty(), "g assignment must cover at least one representative");
        require(values_.size() % 2 == 1, "g assignment needs odd v so that v - 1 signs can balance");
        require(values_[0] == 0, "g must vanish on the representative of H");
        for (std::size_t i = 1; i < values_.size(); ++i)
            require(values_[i] == 1 || values_[i] == -1, "g must be +-1 off H");
        require(std::accumulate(values_.begin(), values_.end(), 0) == 0, "g must be balanced");
    }

    // +1 on reps 1..(v-1)/2, -1 on the rest.
    static GAssignment standard(std::uint32_t v) {
        std::vector<std::int8_t> vals(v, -1);
        vals[0] = 0;
        for (std::uint32_t i = 1; i <= (v - 1) / 2; ++i) vals[i] = 1;
        return GAssignment(std::move(vals));
    }

    // A seeded random balanced assignment.
    static GAssignment random(std::uint32_t v, std::uint64_t seed) {
        GAssignment g = standard(v);
        std::mt19937_64 rng(seed);
        std::shuffle(g.values_.begin() + 1, g.values_.end(), rng);
        return g;
    }

    std::uint32_t index() const noexcept { return static_cast<std::uint32_t>(values_.size()); }
    std::span<const std::int8_t> values() const noexcept { return values_; }
    std::int8_t operator[](std::size_t i) const noexcept { return values_[i]; }

private:
    std::vector<std::int8_t> values_;
};

// h, indexed by position in H (increasing dlog).
using SubgroupSigns = std::vector<std::int8_t>;

namespace detail {
inline void check_inputs(const CosetSystem& cs, std::span<const std::int8_t> h, const GAssignment& g) {
    require(h.size() == cs.subgroup_size(), "h must have (2^n - 1)/v = " + std::to_string(cs.subgroup_size()) +
                                                " entries, got " + std::to_string(h.size()));
    require(g.index() == cs.index(), "g must have v = " + std::to_string(cs.index()) + " entries");
    for (std::int8_t s : h) require(s == 1 || s == -1, "h must be +-1");
}
}  // namespace detail

inline SignFunction assemble(const CosetSystem& cs, std::span<const std::int8_t> h, const GAssignment& g) {
    detail::check_inputs(cs, h, g);
    const FieldContext& ctx = cs.field();
    const std::uint32_t v = cs.index();
    std::vector<std::int8_t> f(ctx.size());
    f[0] = 1;
    const auto dlog = ctx.dlog_table();
    for (FieldElement y = 1; y < ctx.size(); ++y) {
        const std::uint32_t k = dlog[y];
        const std::uint32_t lab = k % v;
        f[y] = lab == 0 ? h[k / v] : g[lab];
    }
    return SignFunction(ctx.degree(), std::move(f));
}

struct SplitFunctions {
    SignFunction f1;  // supported on H
    SignFunction f2;  // supported off H and off 0
};

inline SplitFunctions split(const CosetSystem& cs, std::span<const std::int8_t> h, const GAssignment& g) {
    detail::check_inputs(cs, h, g);
    const FieldContext& ctx = cs.field();
    const std::uint32_t v = cs.index();
    std::vector<std::int8_t> f1(ctx.size(), 0);
    std::vector<std::int8_t> f2(ctx.size(), 0);
    const auto dlog = ctx.dlog_table();
    for (FieldElement y = 1; y < ctx.size(); ++y) {
        const std::uint32_t k = dlog[y];
        if (k % v == 0) {
            f1[y] = h[k / v];
        } else {
            f2[y] = g[k % v];
        }
    }
    return {SignFunction(ctx.degree(), std::move(f1), Alphabet::partial),
            SignFunction(ctx.degree(), std::move(f2), Alphabet::partial)};
}

// (1/v) sum_j chi^j(y): 1 on H, 0 elsewhere up to rounding.
inline std::complex<double> indicator_expansion(const CosetSystem& cs, FieldElement y) {
    std::complex<double> acc = 0;
    for (std::uint32_t j = 0; j < cs.index(); ++j) acc += MultChar{cs.index(), j}(cs.field(), y);
    return acc / static_cast<double>(cs.index());
}

struct MEValue {
    double main = 0.0;                 // M(a) = g(b), a b in H
    double error = 0.0;                // E(a) = f2^(a) - M(a), from the true spectrum
    std::complex<double> error_series;  // E(a) from the gamma_j character expansion
    double bound = 0.0;                // epsilon * v
};

// Spectral decomposition of f2^ into the coset term M and the Gauss-sum
// error E, with G(chi^j) = 2^(n/2) (1 + gamma_j) and epsilon = max |gamma_j|.
class SpectralDecomposition {
public:
    SpectralDecomposition(const CosetSystem& cs, const GAssignment& g, const CosetPsiVector& cpv)
        : cs_(cs), g_(g) {
        require(cpv.v == cs.index() && cpv.n == cs.field().degree(),
                "Gauss-sum data must come from the same field and index");
        const FieldContext& ctx = cs.field();
        const std::uint32_t v = cs.index();
        scale_ = std::pow(2.0, ctx.degree() / 2.0);

        std::vector<std::int8_t> f2(ctx.size(), 0);
        const auto dlog = ctx.dlog_table();
        for (FieldElement y = 1; y < ctx.size(); ++y) f2[y] = g[dlog[y] % v];
        f2_ = walsh_transform(ctx, SignFunction(ctx.degree(), std::move(f2), Alphabet::partial));

        gamma_.assign(v, 0.0);
        epsilon_ = 0.0;
        std::vector<std::complex<double>> weighted(v, 0.0);  // gamma_j * sum_z g(z) conj(chi^j(z))
        for (std::uint32_t j = 1; j < v; ++j) {
            gamma_[j] = gauss_sum(cpv, j) / scale_ - 1.0;
            epsilon_ = std::max(epsilon_, std::abs(gamma_[j]));
            std::complex<double> sj = 0;
            for (std::uint32_t i = 0; i < v; ++i)
                sj += static_cast<double>(g[i]) * std::conj(root_of_unity(std::uint64_t{i} * j, v));
            weighted[j] = gamma_[j] * sj;
        }
        // E_series depends on a only through its coset label.
        series_by_label_.assign(v, 0.0);
        for (std::uint32_t lab = 0; lab < v; ++lab) {
            std::complex<double> acc = 0;
            for (std::uint32_t j = 1; j < v; ++j)
                acc += weighted[j] * std::conj(root_of_unity(std::uint64_t{j} * lab, v));
            series_by_label_[lab] = acc / static_cast<double>(v);
        }
    }

    double epsilon() const noexcept { return epsilon_; }
    std::span<const std::complex<double>> gammas() const noexcept { return gamma_; }
    const WalshSpectrum& f2_spectrum() const noexcept { return f2_; }

    MEValue at(FieldElement a) const {
        require(a != 0, "M/E decomposition is defined for nonzero a only");
        const std::uint32_t v = cs_.index();
        const std::uint32_t lab = cs_.label(a);
        MEValue out;
        out.main = g_[(v - lab) % v];
        out.error = f2_.coeffs[a] / scale_ - out.main;
        out.error_series = series_by_label_[lab];
        out.bound = epsilon_ * v;
        return out;
    }

private:
    CosetSystem cs_;
    GAssignment g_;
    double scale_ = 1.0;
    WalshSpectrum f2_;
    std::vector<std::complex<double>> gamma_;
    std::vector<std::complex<double>> series_by_label_;
    double epsilon_ = 0.0;
};

inline MEValue me_decomposition(const CosetSystem& cs, const GAssignment& g, FieldElement a,
                                const CosetPsiVector& cpv) {
    require(a != 0, "M/E decomposition is defined for nonzero a only");
    return SpectralDecomposition(cs, g, cpv).at(a);
}

struct DecompositionSweep {
    bool split_identity = true;   // coeffs_f = 1 + coeffs_f1 + coeffs_f2 for every a
    bool f2_zero_at_origin = true;
    bool error_bounded = true;    // |E(a)| <= epsilon v for every a != 0
    double max_error = 0.0;
    double max_series_mismatch = 0.0;  // |E(a) - E_series(a)|
    double epsilon = 0.0;
    double bound = 0.0;
};

inline DecompositionSweep decomposition_sweep(const CosetSystem& cs, std::span<const std::int8_t> h,
                                              const GAssignment& g, const CosetPsiVector& cpv) {
    const FieldContext& ctx = cs.field();
    const SignFunction f = assemble(cs, h, g);
    const SplitFunctions parts = split(cs, h, g);
    const WalshSpectrum wf = walsh_transform(ctx, f);
    const WalshSpectrum w1 = walsh_transform(ctx, parts.f1);
    const WalshSpectrum w2 = walsh_transform(ctx, parts.f2);
    const SpectralDecomposition dec(cs, g, cpv);

    DecompositionSweep out;
    out.epsilon = dec.epsilon();
    out.bound = dec.epsilon() * cs.index();
    out.f2_zero_at_origin = w2.coeffs[0] == 0;
    for (std::size_t a = 0; a < ctx.size(); ++a) {
        if (wf.coeffs[a] != 1 + w1.coeffs[a] + w2.coeffs[a]) out.split_identity = false;
        if (w2.coeffs[a] != dec.f2_spectrum().coeffs[a]) out.split_identity = false;
        if (a == 0) continue;
        const MEValue me = dec.at(static_cast<FieldElement>(a));
        out.max_error = std::max(out.max_error, std::abs(me.error));
        out.max_series_mismatch = std::max(out.max_series_mismatch, std::abs(me.error - me.error_series));
        if (std::abs(me.error) > me.bound + 1e-9) out.error_bounded = false;
    }
    return out;
}

struct BalanceResult {
    SubgroupSigns h;
    std::size_t flips = 0;
    std::vector<std::size_t> flipped_positions;
};

// Flip majority-sign entries of h, lowest position (= lowest dlog) first,
// until sum h = -1. The assembled f then sums to 1 + (-1) + |H| * sum g = 0.
inline BalanceResult balance_h(SubgroupSigns h) {
    require(h.size() % 2 == 1, "balance_h needs |H| odd");
    std::int64_t sum = 0;
    for (std::int8_t s : h) {
        require(s == 1 || s == -1, "h must be +-1");
        sum += s;
    }
    BalanceResult out;
    // |H| odd makes sum odd, so sum + 1 is even.
    if ((sum + 1) % 2 != 0) throw std::logic_error("balance_h: parity of sum(h) is inconsistent with odd |H|");
    const std::int8_t from = sum > -1 ? 1 : -1;
    std::size_t needed = static_cast<std::size_t>((sum > -1 ? sum + 1 : -1 - sum) / 2);
    for (std::size_t i = 0; i < h.size() && needed > 0; ++i) {
        if (h[i] == from) {
            h[i] = static_cast<std::int8_t>(-from);
            out.flipped_positions.push_back(i);
            --needed;
        }
    }
    out.flips = out.flipped_positions.size();
    out.h = std::move(h);
    return out;
}

struct ConstructionReport {
    int n = 0;
    std::uint32_t v = 0;
    std::int32_t max_f_coeff = 0;
    std::int32_t max_f1_coeff = 0;
    std::int32_t max_f2_coeff = 0;
    double max_f_hat = 0.0;
    double max_f1_hat = 0.0;
    double max_f2_hat = 0.0;
    double epsilon_measured = 0.0;
    double spencer_bound_raw = 0.0;  // 11 sqrt(N log(2M/N)), M = 2^n, N = |H|
    double spencer_bound = 0.0;      // the same over 2^(n/2), comparable to max_f1_hat
    double proposition_bound = 0.0;  // 1 + 12 sqrt(log(2v)/v); asymptotic, reported only
    bool triangle_ok = false;        // max|f^| <= 2^(-n/2) + max|f1^| + max|f2^|
    std::int64_t sum_f = 0;
    bool balanced = false;
};

inline ConstructionReport measure_construction(const CosetSystem& cs, std::span<const std::int8_t> h,
                                               const GAssignment& g) {
    const FieldContext& ctx = cs.field();
    const SignFunction f = assemble(cs, h, g);
    const SplitFunctions parts = split(cs, h, g);
    const WalshSpectrum wf = walsh_transform(ctx, f);
    const WalshSpectrum w1 = walsh_transform(ctx, parts.f1);
    const WalshSpectrum w2 = walsh_transform(ctx, parts.f2);
    const CosetPsiVector cpv = coset_psi_vector(ctx, cs.index());

    ConstructionReport r;
    r.n = ctx.degree();
    r.v = cs.index();
    r.max_f_coeff = wf.max_abs();
    r.max_f1_coeff = w1.max_abs();
    r.max_f2_coeff = w2.max_abs();
    const double scale = wf.scale();
    r.max_f_hat = r.max_f_coeff / scale;
    r.max_f1_hat = r.max_f1_coeff / scale;
    r.max_f2_hat = r.max_f2_coeff / scale;
    for (std::uint32_t j = 1; j < cs.index(); ++j)
        r.epsilon_measured = std::max(r.epsilon_measured, std::abs(gauss_sum(cpv, j) / scale - 1.0));
    r.spencer_bound_raw = spencer_bound(static_cast<double>(ctx.size()), static_cast<double>(cs.subgroup_size()));
    r.spencer_bound = r.spencer_bound_raw / scale;
    const double v = cs.index();
    r.proposition_bound = 1.0 + 12.0 * std::sqrt(std::log(2.0 * v) / v);
    // Integer form of the triangle inequality.
    r.triangle_ok = r.max_f_coeff <= 1 + r.max_f1_coeff + r.max_f2_coeff;
    r.sum_f = f.sum();
    r.balanced = r.sum_f == 0;
    return r;
}

}  // namespace boolopt
