#pragma once

#include <bit>
#include <cassert>
#include <span>

namespace boolopt {

// Unnormalized in-place Walsh-Hadamard butterfly:
// out[w] = sum_y in[y] * (-1)^popcount(w & y). Exact for integer T as long
// as |sum| fits; applying it twice multiplies by the length.
template <class T>
void fwht_inplace(std::span<T> v) {
    const std::size_t len = v.size();
    assert(std::has_single_bit(len));
    for (std::size_t h = 1; h < len; h <<= 1) {
        for (std::size_t i = 0; i < len; i += h << 1) {
            for (std::size_t j = i; j < i + h; ++j) {
                const T x = v[j];
                const T y = v[j + h];
                v[j] = x + y;
                v[j + h] = x - y;
            }
        }
    }
}

}  // namespace boolopt
