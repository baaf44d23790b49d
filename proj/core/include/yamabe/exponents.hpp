#pragma once

namespace yamabe {

/// Conformal constants of the product N = M^m x R^n, d = m + n:
/// a = 4(d-1)/(d-2) and the critical Sobolev exponent p = 2d/(d-2).
struct ConformalExponents {
    int m = 0; ///< dimension of the closed factor M, m >= 2
    int n = 0; ///< dimension of the Euclidean factor, n >= 1
    int d = 0; ///< d = m + n
    double a = 0.0;
    double p = 0.0;
};

/// Throws DimensionError unless m >= 2 and n >= 1.
ConformalExponents conformal_exponents(int m, int n);

} // namespace yamabe
