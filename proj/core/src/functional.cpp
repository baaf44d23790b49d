#include "yamabe/functional.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "yamabe/errors.hpp"

namespace yamabe {

double energy(const Field& u, const ConformalExponents& ce) {
    const double grad2 = grad_lp_norm(u, 2.0);
    double curvature_term = 0.0;
    const auto& m = u.manifold();
    const auto& e = u.euclidean();
    for (std::size_t i = 0; i < u.node_count(); ++i) {
        const double ws = m.node_weight(i) * m.scalar_curvature(i);
        for (std::size_t k = 0; k < u.cell_count(); ++k) {
            const double v = u.value(i, k);
            curvature_term += ws * e.cell_volume(k) * v * v;
        }
    }
    return ce.a * grad2 * grad2 + curvature_term;
}

QuotientValue yamabe_quotient(const Field& u, double s,
                              const ConformalExponents& ce) {
    if (!(s > 2.0) || s > ce.p)
        throw DomainError("yamabe_quotient: need 2 < s <= p = " +
                          std::to_string(ce.p));
    const double norm = lp_norm(u, s);
    if (norm == 0.0)
        throw DomainError("yamabe_quotient: field vanishes identically");
    QuotientValue q;
    q.s = s;
    q.numerator = energy(u, ce);
    q.denominator = norm * norm;
    q.value = q.numerator / q.denominator;
    return q;
}

double el_residual(const Field& u, double s, double lambda,
                   const ConformalExponents& ce) {
    const auto lap = laplacian(u);
    const auto& m = u.manifold();
    const auto& e = u.euclidean();
    double acc = 0.0;
    for (std::size_t i = 0; i < u.node_count(); ++i) {
        const double w = m.node_weight(i);
        const double curv = m.scalar_curvature(i);
        for (std::size_t k = 0; k < u.cell_count(); ++k) {
            const std::size_t d = i * u.cell_count() + k;
            const double v = u.value(i, k);
            const double r =
                ce.a * lap[d] + curv * v - lambda * std::pow(v, s - 1.0);
            acc += w * e.cell_volume(k) * r * r;
        }
    }
    return std::sqrt(acc);
}

double sphere_volume(int d) {
    if (d < 1)
        throw DimensionError("sphere_volume: dimension must be >= 1");
    return 2.0 * std::pow(std::numbers::pi, 0.5 * (d + 1)) /
           std::tgamma(0.5 * (d + 1));
}

double yamabe_sphere_constant(int d) {
    if (d < 3)
        throw DimensionError("yamabe_sphere_constant: defined for d >= 3");
    return d * (d - 1.0) * std::pow(sphere_volume(d), 2.0 / d);
}

} // namespace yamabe
