#include "yamabe/exponents.hpp"

#include <string>

#include "yamabe/errors.hpp"

namespace yamabe {

ConformalExponents conformal_exponents(int m, int n) {
    if (m < 2)
        throw DimensionError("conformal_exponents: closed factor needs m >= 2, got m = " +
                             std::to_string(m));
    if (n < 1)
        throw DimensionError("conformal_exponents: Euclidean factor needs n >= 1, got n = " +
                             std::to_string(n));
    ConformalExponents ce;
    ce.m = m;
    ce.n = n;
    ce.d = m + n;
    ce.a = 4.0 * (ce.d - 1) / (ce.d - 2);
    ce.p = 2.0 * ce.d / (ce.d - 2);
    return ce;
}

} // namespace yamabe
