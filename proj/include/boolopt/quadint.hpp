#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>

#include <boost/multiprecision/cpp_int.hpp>

#include "error.hpp"

namespace boolopt {

using BigInt = boost::multiprecision::cpp_int;

namespace detail {

// x = mantissa * 2^exp2 with |mantissa| < 2^63.
inline long double split_scaled(long long x, int& exp2) {
    exp2 = 0;
    return static_cast<long double>(x);
}

inline long double split_scaled(const BigInt& x, int& exp2) {
    exp2 = 0;
    if (x == 0) return 0;
    BigInt mag = boost::multiprecision::abs(x);
    const unsigned msb = boost::multiprecision::msb(mag);
    if (msb > 62) {
        exp2 = static_cast<int>(msb - 62);
        mag >>= exp2;
    }
    const long double m = static_cast<long double>(mag.convert_to<long long>());
    return x < 0 ? -m : m;
}

}  // namespace detail

// Element (a + b*sqrt(-7))/2 of the ring of integers of Q(sqrt(-7)); a and b
// have equal parity. That ring has class number 1, which is what makes the
// order-7^d Gauss sums over GF(2^k) land in it with integer coordinates.
template <class Int>
class QuadInt7 {
public:
    QuadInt7() : a_(0), b_(0) {}

    QuadInt7(Int a, Int b) : a_(std::move(a)), b_(std::move(b)) {
        require((a_ - b_) % 2 == 0, "QuadInt7: a and b must have the same parity");
    }

    static QuadInt7 integer(Int k) { return QuadInt7(Int(2 * k), Int(0)); }

    const Int& a() const noexcept { return a_; }
    const Int& b() const noexcept { return b_; }

    QuadInt7 conj() const { return QuadInt7(a_, Int(-b_)); }

    // |x|^2 = (a^2 + 7 b^2) / 4, a rational integer.
    Int norm() const { return (a_ * a_ + 7 * b_ * b_) / 4; }

    friend QuadInt7 operator+(const QuadInt7& x, const QuadInt7& y) { return QuadInt7(x.a_ + y.a_, x.b_ + y.b_); }
    friend QuadInt7 operator-(const QuadInt7& x, const QuadInt7& y) { return QuadInt7(x.a_ - y.a_, x.b_ - y.b_); }

    friend QuadInt7 operator*(const QuadInt7& x, const QuadInt7& y) {
        // (a1 + b1 r)(a2 + b2 r)/4 with r^2 = -7
        return QuadInt7(Int((x.a_ * y.a_ - 7 * x.b_ * y.b_) / 2), Int((x.a_ * y.b_ + x.b_ * y.a_) / 2));
    }

    friend bool operator==(const QuadInt7& x, const QuadInt7& y) { return x.a_ == y.a_ && x.b_ == y.b_; }

    QuadInt7 pow(std::uint64_t e) const {
        QuadInt7 result = integer(Int(1));
        QuadInt7 base = *this;
        while (e != 0) {
            if (e & 1) result = result * base;
            base = base * base;
            e >>= 1;
        }
        return result;
    }

    // Value divided by 2^scale_log2 (scale_log2 may be a half-integer: pass
    // twice the exponent). Stays finite for huge coordinates.
    std::complex<double> to_complex(long long twice_scale_log2 = 0) const {
        int ea = 0;
        int eb = 0;
        const long double ma = detail::split_scaled(a_, ea);
        const long double mb = detail::split_scaled(b_, eb);
        const long long whole = twice_scale_log2 / 2;
        const long double half = (twice_scale_log2 % 2 != 0) ? std::sqrt(0.5L) : 1.0L;
        const long double re = std::ldexp(ma, static_cast<int>(ea - 1 - whole)) * half;
        const long double im = std::ldexp(mb, static_cast<int>(eb - 1 - whole)) * half * std::sqrt(7.0L);
        return {static_cast<double>(re), static_cast<double>(im)};
    }

private:
    Int a_;
    Int b_;
};

// Nearest element of the ring to z, if z lies within tol of it.
inline std::optional<QuadInt7<long long>> round_to_quadint7(std::complex<double> z, double tol = 1e-9) {
    const long long a = std::llround(2.0 * z.real());
    const long long b = std::llround(2.0 * z.imag() / std::sqrt(7.0));
    if (((a - b) & 1) != 0) return std::nullopt;
    const QuadInt7<long long> q(a, b);
    if (std::abs(q.to_complex() - z) > tol) return std::nullopt;
    return q;
}

}  // namespace boolopt
