#pragma once

// Arithmetic in GF(2^n), n <= 26, in the polynomial basis.
//
// An element is an n-bit integer whose bit i is the coefficient of x^i. The
// same integer is the truth-table index of the element, so spectra over the
// field and truth tables share one indexing.

#include <bit>
#include <cassert>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "numtheory.hpp"

namespace boolopt {

using FieldElement = std::uint32_t;

// Polynomials over GF(2) packed into 64-bit words (bit i = coefficient of x^i).
namespace poly {

constexpr int degree(std::uint64_t p) noexcept { return p == 0 ? -1 : 63 - std::countl_zero(p); }

constexpr std::uint64_t reduce(std::uint64_t a, std::uint64_t m) noexcept {
    const int dm = degree(m);
    for (int d = degree(a); d >= dm; d = degree(a)) a ^= m << (d - dm);
    return a;
}

// a, b must already be reduced modulo m.
constexpr std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept {
    const std::uint64_t top = std::uint64_t{1} << degree(m);
    std::uint64_t r = 0;
    while (b != 0) {
        if (b & 1) r ^= a;
        b >>= 1;
        a <<= 1;
        if (a & top) a ^= m;
    }
    return r;
}

constexpr std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) noexcept {
    std::uint64_t r = reduce(1, m);
    a = reduce(a, m);
    while (e != 0) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

constexpr std::uint64_t gcd(std::uint64_t a, std::uint64_t b) noexcept {
    while (b != 0) {
        a = reduce(a, b);
        std::swap(a, b);
    }
    return a;
}

struct IrreducibilityCheck {
    bool irreducible = false;
    int failing_divisor = 0;  // d for which the check failed, 0 if none
    std::string reason;
};

// Rabin's test: f of degree n is irreducible iff x^(2^n) = x (mod f) and
// gcd(x^(2^(n/p)) - x, f) = 1 for every prime p dividing n.
inline IrreducibilityCheck check_irreducible(std::uint64_t f) {
    const int n = degree(f);
    if (n < 1) return {false, 0, "polynomial has degree < 1"};
    const std::uint64_t x = reduce(2, f);
    auto frobenius = [&](int d) {
        std::uint64_t t = x;
        for (int i = 0; i < d; ++i) t = mulmod(t, t, f);
        return t;
    };
    if (frobenius(n) != x) {
        return {false, n, "x^(2^" + std::to_string(n) + ") != x mod f"};
    }
    for (std::uint64_t p : prime_factors(static_cast<std::uint64_t>(n))) {
        const int d = n / static_cast<int>(p);
        if (degree(gcd(f, frobenius(d) ^ x)) > 0) {
            return {false, d,
                    "gcd(x^(2^" + std::to_string(d) + ") - x, f) is nontrivial (factor of degree dividing " +
                        std::to_string(d) + ")"};
        }
    }
    return {true, 0, {}};
}

inline std::uint64_t smallest_irreducible(int n) {
    for (std::uint64_t f = std::uint64_t{1} << n; f < (std::uint64_t{2} << n); ++f) {
        if (check_irreducible(f).irreducible) return f;
    }
    throw ParameterError("no irreducible polynomial of degree " + std::to_string(n));  // unreachable
}

}  // namespace poly

// Immutable description of GF(2^n): modulus, generator, discrete-log and
// power tables, trace form. Copies share the tables.
class FieldContext {
public:
    static constexpr int kMaxDegree = 26;

    static FieldContext make(int n, std::optional<std::uint64_t> modulus = std::nullopt) {
        require(n >= 1 && n <= kMaxDegree,
                "field degree must lie in [1, " + std::to_string(kMaxDegree) + "], got " + std::to_string(n));
        std::uint64_t m = 0;
        if (modulus) {
            m = *modulus;
            require(poly::degree(m) == n, "modulus must have degree " + std::to_string(n) + ", got degree " +
                                              std::to_string(poly::degree(m)));
            const auto check = poly::check_irreducible(m);
            require(check.irreducible, "modulus is reducible: " + check.reason +
                                           " (failing divisor d = " + std::to_string(check.failing_divisor) + ")");
        } else {
            m = poly::smallest_irreducible(n);
        }
        return FieldContext(n, m);
    }

    int degree() const noexcept { return t_->n; }
    std::uint64_t modulus() const noexcept { return t_->modulus; }
    FieldElement generator() const noexcept { return t_->generator; }
    std::uint32_t size() const noexcept { return std::uint32_t{1} << t_->n; }
    std::uint32_t group_order() const noexcept { return size() - 1; }

    FieldElement mul(FieldElement a, FieldElement b) const noexcept {
        if (a == 0 || b == 0) return 0;
        const std::uint64_t k = std::uint64_t{t_->dlog[a]} + t_->dlog[b];
        return t_->exp[k >= group_order() ? k - group_order() : k];
    }

    FieldElement inverse(FieldElement a) const {
        require(a != 0, "zero has no multiplicative inverse");
        const std::uint32_t k = t_->dlog[a];
        return t_->exp[k == 0 ? 0 : group_order() - k];
    }

    FieldElement power(FieldElement a, std::uint64_t e) const noexcept {
        if (a == 0) return e == 0 ? 1 : 0;
        return t_->exp[(std::uint64_t{t_->dlog[a]} * (e % group_order())) % group_order()];
    }

    // generator^k
    FieldElement exp(std::uint64_t k) const noexcept { return t_->exp[k % group_order()]; }

    // Pre: y != 0.
    std::uint32_t dlog(FieldElement y) const noexcept {
        assert(y != 0 && y < size());
        return t_->dlog[y];
    }

    // Absolute trace as a bit; linear, so it is a parity against a fixed mask.
    int trace(FieldElement y) const noexcept { return std::popcount(y & t_->trace_mask) & 1; }

    // Canonical additive character (-1)^Tr(y).
    int psi(FieldElement y) const noexcept { return trace(y) ? -1 : 1; }

    // The element w with Tr(a*y) = <w, y> (dot product of bit vectors) for all y.
    FieldElement trace_dual(FieldElement a) const noexcept { return t_->dual[a]; }

    // (-1)^Tr(a*y) without a field multiplication.
    int psi_product(FieldElement a, FieldElement y) const noexcept {
        return (std::popcount(t_->dual[a] & y) & 1) ? -1 : 1;
    }

    // dlog(y) mod v: label 0 is the index-v subgroup H.
    std::uint32_t coset_label(std::uint32_t v, FieldElement y) const {
        require(v >= 1 && group_order() % v == 0,
                "index v = " + std::to_string(v) + " does not divide 2^n - 1 = " + std::to_string(group_order()));
        require(y != 0 && y < size(), "coset_label: element must be a nonzero field element");
        return t_->dlog[y] % v;
    }

    std::uint32_t trace_mask() const noexcept { return t_->trace_mask; }
    std::span<const std::uint32_t> dlog_table() const noexcept { return t_->dlog; }
    std::span<const FieldElement> exp_table() const noexcept { return t_->exp; }
    std::span<const FieldElement> dual_table() const noexcept { return t_->dual; }

    // Multiplication straight from the modulus, bypassing the log tables.
    FieldElement mul_poly(FieldElement a, FieldElement b) const noexcept {
        return static_cast<FieldElement>(poly::mulmod(a, b, t_->modulus));
    }

    friend bool operator==(const FieldContext& a, const FieldContext& b) noexcept {
        return a.degree() == b.degree() && a.modulus() == b.modulus();
    }

private:
    struct Tables {
        int n = 0;
        std::uint64_t modulus = 0;
        FieldElement generator = 0;
        std::uint32_t trace_mask = 0;
        std::vector<std::uint32_t> dlog;  // dlog[0] unused
        std::vector<FieldElement> exp;    // length 2^n - 1
        std::vector<FieldElement> dual;   // length 2^n
    };

    FieldContext(int n, std::uint64_t modulus) {
        auto t = std::make_shared<Tables>();
        t->n = n;
        t->modulus = modulus;
        const std::uint64_t q = (std::uint64_t{1} << n) - 1;

        const auto factors = prime_factors(q);
        for (std::uint64_t cand = 1; cand <= q; ++cand) {
            bool primitive = true;
            for (std::uint64_t p : factors) {
                if (poly::powmod(cand, q / p, modulus) == 1) {
                    primitive = false;
                    break;
                }
            }
            if (primitive) {
                t->generator = static_cast<FieldElement>(cand);
                break;
            }
        }

        t->exp.resize(q);
        t->dlog.assign(q + 1, 0);
        std::uint64_t cur = 1;
        for (std::uint64_t k = 0; k < q; ++k) {
            t->exp[k] = static_cast<FieldElement>(cur);
            t->dlog[cur] = static_cast<std::uint32_t>(k);
            cur = poly::mulmod(cur, t->generator, modulus);
        }

        // Tr(x^i) for the basis monomials, via the Frobenius orbit.
        auto trace_of = [&](std::uint64_t y) {
            std::uint64_t acc = 0;
            for (int k = 0; k < n; ++k) {
                acc ^= y;
                y = poly::mulmod(y, y, modulus);
            }
            return acc;  // 0 or 1
        };
        std::vector<std::uint64_t> basis_trace(2 * n, 0);  // Tr(x^k) for k < 2n - 1
        std::uint64_t mono = poly::reduce(1, modulus);
        for (int k = 0; k + 1 < 2 * n; ++k) {
            basis_trace[k] = trace_of(mono);
            mono = poly::mulmod(mono, poly::reduce(2, modulus), modulus);
        }
        for (int i = 0; i < n; ++i) t->trace_mask |= static_cast<std::uint32_t>(basis_trace[i]) << i;

        // Tr(a*y) is the bilinear form B[i][j] = Tr(x^(i+j)); column j of B is dual(x^j).
        std::vector<std::uint32_t> column(n, 0);
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) column[j] |= static_cast<std::uint32_t>(basis_trace[i + j]) << i;
        t->dual.assign(q + 1, 0);
        for (std::uint64_t a = 1; a <= q; ++a) {
            const int low = std::countr_zero(a);
            t->dual[a] = t->dual[a & (a - 1)] ^ column[low];
        }
        t_ = std::move(t);
    }

    std::shared_ptr<const Tables> t_;
};

inline FieldContext make_field(int n, std::optional<std::uint64_t> modulus = std::nullopt) {
    return FieldContext::make(n, modulus);
}

inline int trace(const FieldContext& ctx, FieldElement y) { return ctx.trace(y); }
inline int psi(const FieldContext& ctx, FieldElement y) { return ctx.psi(y); }
inline std::uint32_t coset_label(const FieldContext& ctx, std::uint32_t v, FieldElement y) {
    return ctx.coset_label(v, y);
}

// Norm from GF(2^N) down to a subfield GF(2^k), k | N, landing in the
// encoding of a separately constructed small field.
//
// y^r with r = (2^N - 1)/(2^k - 1) lies in the copy of GF(2^k) inside the big
// field; that copy is identified with the small field through a field
// embedding x -> beta, beta a root of the small modulus. The embedding is a
// ring map, so characters of the small field pulled back through the norm are
// genuine lifted characters.
class SubfieldMap {
public:
    SubfieldMap(FieldContext big, FieldContext small) : big_(std::move(big)), small_(std::move(small)) {
        const int nb = big_.degree();
        const int ns = small_.degree();
        require(nb % ns == 0, "subfield degree " + std::to_string(ns) + " does not divide field degree " +
                                  std::to_string(nb));
        const std::uint64_t qs = small_.group_order();
        r_ = big_.group_order() / qs;

        auto eval_small_modulus = [&](FieldElement x) {
            FieldElement acc = 0;
            for (int i = ns; i >= 0; --i) {
                acc = big_.mul(acc, x);
                if ((small_.modulus() >> i) & 1) acc ^= 1;
            }
            return acc;
        };
        bool found = eval_small_modulus(0) == 0;
        beta_ = 0;
        for (std::uint64_t t = 0; !found && t < qs; ++t) {
            const FieldElement cand = big_.exp(r_ * t);
            if (eval_small_modulus(cand) == 0) {
                beta_ = cand;
                found = true;
            }
        }
        require(found, "no root of the subfield modulus in the big field");

        embed_.assign(small_.size(), 0);
        FieldElement beta_pow = 1;
        std::vector<FieldElement> powers(ns);
        for (int i = 0; i < ns; ++i) {
            powers[i] = beta_pow;
            beta_pow = big_.mul(beta_pow, beta_);
        }
        from_subgroup_.assign(qs, 0);
        for (std::uint32_t u = 1; u < small_.size(); ++u) {
            FieldElement e = 0;
            for (int i = 0; i < ns; ++i)
                if ((u >> i) & 1) e ^= powers[i];
            embed_[u] = e;
            const std::uint32_t d = big_.dlog(e);
            assert(d % r_ == 0);
            from_subgroup_[d / r_] = u;
        }
    }

    const FieldContext& big() const noexcept { return big_; }
    const FieldContext& small() const noexcept { return small_; }
    std::uint64_t norm_exponent() const noexcept { return r_; }
    FieldElement root() const noexcept { return beta_; }

    FieldElement norm(FieldElement y) const noexcept {
        if (y == 0) return 0;
        return from_subgroup_[big_.dlog(y) % small_.group_order()];
    }

    FieldElement embed(FieldElement u) const noexcept { return embed_[u]; }

private:
    FieldContext big_;
    FieldContext small_;
    std::uint64_t r_ = 1;
    FieldElement beta_ = 0;
    std::vector<FieldElement> embed_;
    std::vector<FieldElement> from_subgroup_;  // t -> small encoding of big.generator^(r t)
};

inline FieldElement norm_to_subfield(const FieldContext& big, const FieldContext& small, FieldElement y) {
    return SubfieldMap(big, small).norm(y);
}

}  // namespace boolopt
