#pragma once

#include "yamabe/exponents.hpp"
#include "yamabe/field.hpp"

namespace yamabe {

/// Value of the subcritical Yamabe quotient Q_s together with its parts.
struct QuotientValue {
    double numerator = 0.0;   ///< a ||grad u||_2^2 + integral of S u^2
    double denominator = 0.0; ///< ||u||_s^2
    double value = 0.0;       ///< numerator / denominator
    double s = 0.0;
};

/// a * grad_lp_norm(u,2)^2 + sum w_i vol_k S_i u_{ik}^2.
double energy(const Field& u, const ConformalExponents& ce);

/// Q_s(u) = energy / ||u||_s^2 for 2 < s <= p.  Scale invariant.
/// Throws DomainError if u vanishes identically or s is out of range.
QuotientValue yamabe_quotient(const Field& u, double s,
                              const ConformalExponents& ce);

/// Weighted L2 norm of a*Lap(u) + S*u - lambda*u^{s-1}, the stationarity
/// measure of Q_s under ||u||_s = 1.  Lap is the positive Laplacian of
/// laplacian(), so the residual vanishes exactly at discrete critical points.
double el_residual(const Field& u, double s, double lambda,
                   const ConformalExponents& ce);

/// Volume of the round unit sphere S^d: 2 pi^{(d+1)/2} / Gamma((d+1)/2).
double sphere_volume(int d);

/// Yamabe constant of the round sphere, Y_d = d(d-1) Vol(S^d)^{2/d}.
/// Throws DimensionError for d < 3.
double yamabe_sphere_constant(int d);

} // namespace yamabe
