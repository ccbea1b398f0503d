// Order-7 Gauss sums over GF(2^n) for n = 3, 9, 15 next to the closed form.
#include <cstdio>

#include "boolopt/charsums.hpp"

int main() {
    using namespace boolopt;
    for (int n : {3, 9, 15}) {
        const auto cpv = coset_psi_vector(make_field(n), 7);
        std::printf("n = %d\n", n);
        for (const auto& m : match_closed_forms(cpv)) {
            const auto g = gauss_sum(cpv, m.j);
            std::printf("  j = %u  G = %10.4f %+10.4fi  sign %+d  residual %.1e\n", m.j, g.real(), g.imag(), m.sign,
                        m.relative_residual);
        }
    }
}
