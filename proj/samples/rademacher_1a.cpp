// Watch -2 c(k - 1/8) approach the 1A coefficients 90, 462, 1540 as the
// c truncation doubles.
#include <cstdio>

#include "m24rad/m24rad.hpp"

using namespace m24rad;

int main() {
    CoefficientSum sum(GroupCtx(1, 1), CoeffKind::holomorphic, {1, 2, 3});
    for (long C = 64; C <= 4096; C *= 2) {
        sum.advance_to(C);
        std::printf("C = %5ld:", C);
        for (auto& v : sum.values()) std::printf("  %10.4f", -2 * to_double(v.re));
        std::printf("\n");
    }
}
