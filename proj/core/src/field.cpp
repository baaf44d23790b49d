#include "yamabe/field.hpp"

#include <cmath>
#include <string>

#include "yamabe/errors.hpp"
#include "yamabe/factors.hpp"

namespace yamabe {

namespace {

// Enumerates the discrete gradient edges in a fixed order.  Each edge carries
// the site weight omega (so the gradient energy term is omega*|diff/len|^s)
// and the difference length.  Euclidean edges first (per M-node), then the
// M-direction edges (per graph edge, per Euclidean cell).
template <typename Fn>
void for_each_gradient_edge(const ManifoldFactor& m, const EuclideanFactor& e,
                            Fn&& fn) {
    const std::size_t cells = e.cell_count();
    if (e.kind() == EuclideanFactor::Kind::Line1D) {
        const double h = e.spacing();
        for (std::size_t i = 0; i < m.node_count(); ++i) {
            const double w = m.node_weight(i) * h;
            const std::size_t base = i * cells;
            for (std::size_t k = 0; k + 1 < cells; ++k)
                fn(base + k, base + k + 1, w, h);
        }
    } else {
        const int n = e.dim();
        const std::size_t count = cells;
        const double dr = e.r_max() / static_cast<double>(count);
        const double sigma = unit_sphere_area(n);
        for (std::size_t i = 0; i < m.node_count(); ++i) {
            const std::size_t base = i * cells;
            for (std::size_t k = 0; k + 1 < count; ++k) {
                const double r = (static_cast<double>(k) + 1.0) * dr;
                const double w = m.node_weight(i) * sigma * std::pow(r, n - 1) * dr;
                fn(base + k, base + k + 1, w, dr);
            }
        }
    }
    for (const auto& edge : m.edges()) {
        const std::size_t bi = static_cast<std::size_t>(edge.i) * cells;
        const std::size_t bj = static_cast<std::size_t>(edge.j) * cells;
        for (std::size_t k = 0; k < cells; ++k)
            fn(bi + k, bj + k, edge.conductance * e.cell_volume(k), 1.0);
    }
}

void check_s(double s) {
    if (!(s >= 1.0))
        throw DomainError("norm exponent must satisfy s >= 1, got s = " +
                          std::to_string(s));
}

} // namespace

Field::Field(ManifoldFactor manifold, EuclideanFactor euclidean,
             std::vector<double> values)
    : Field(std::make_shared<const ManifoldFactor>(std::move(manifold)),
            std::make_shared<const EuclideanFactor>(std::move(euclidean)),
            std::move(values)) {}

Field::Field(std::shared_ptr<const ManifoldFactor> manifold,
             std::shared_ptr<const EuclideanFactor> euclidean,
             std::vector<double> values)
    : manifold_(std::move(manifold)), euclidean_(std::move(euclidean)),
      values_(std::move(values)), cells_(euclidean_->cell_count()) {
    if (values_.size() != manifold_->node_count() * cells_)
        throw DomainError("Field: value count does not match the factor grids");
    for (double v : values_) {
        if (!std::isfinite(v))
            throw DomainError("Field: values must be finite");
        if (v < 0.0)
            throw DomainError("Field: values must be nonnegative");
    }
}

Field Field::constant(ManifoldFactor manifold, EuclideanFactor euclidean,
                      double value) {
    std::vector<double> values(manifold.node_count() * euclidean.cell_count(),
                               value);
    return Field(std::move(manifold), std::move(euclidean), std::move(values));
}

bool Field::compatible_with(const Field& other) const {
    return *manifold_ == *other.manifold_ && *euclidean_ == *other.euclidean_;
}

double total_volume(const ManifoldFactor& m, const EuclideanFactor& e) {
    double euclid = 0.0;
    for (std::size_t k = 0; k < e.cell_count(); ++k)
        euclid += e.cell_volume(k);
    return m.volume() * euclid;
}

double lp_norm(const Field& u, double s) {
    check_s(s);
    double acc = 0.0;
    const auto& m = u.manifold();
    const auto& e = u.euclidean();
    for (std::size_t i = 0; i < u.node_count(); ++i) {
        const double w = m.node_weight(i);
        for (std::size_t k = 0; k < u.cell_count(); ++k)
            acc += w * e.cell_volume(k) * std::pow(u.value(i, k), s);
    }
    return std::pow(acc, 1.0 / s);
}

double grad_lp_norm(const Field& u, double s) {
    check_s(s);
    const auto& v = u.values();
    double acc = 0.0;
    for_each_gradient_edge(u.manifold(), u.euclidean(),
                           [&](std::size_t a, std::size_t b, double w, double len) {
                               acc += w * std::pow(std::abs(v[b] - v[a]) / len, s);
                           });
    return std::pow(acc, 1.0 / s);
}

std::vector<double> laplacian(const Field& u) {
    const auto& v = u.values();
    std::vector<double> out(v.size(), 0.0);
    for_each_gradient_edge(u.manifold(), u.euclidean(),
                           [&](std::size_t a, std::size_t b, double w, double len) {
                               const double c = w / (len * len);
                               out[a] += c * (v[a] - v[b]);
                               out[b] += c * (v[b] - v[a]);
                           });
    const auto& m = u.manifold();
    const auto& e = u.euclidean();
    for (std::size_t i = 0; i < u.node_count(); ++i)
        for (std::size_t k = 0; k < u.cell_count(); ++k)
            out[i * u.cell_count() + k] /= m.node_weight(i) * e.cell_volume(k);
    return out;
}

double weighted_dot(const Field& u, std::span<const double> x,
                    std::span<const double> y) {
    if (x.size() != u.values().size() || y.size() != u.values().size())
        throw DomainError("weighted_dot: size mismatch");
    const auto& m = u.manifold();
    const auto& e = u.euclidean();
    double acc = 0.0;
    for (std::size_t i = 0; i < u.node_count(); ++i) {
        const double w = m.node_weight(i);
        for (std::size_t k = 0; k < u.cell_count(); ++k) {
            const std::size_t d = i * u.cell_count() + k;
            acc += w * e.cell_volume(k) * x[d] * y[d];
        }
    }
    return acc;
}

double l1_distance(const Field& u, const Field& v) {
    if (!u.compatible_with(v))
        throw DomainError("l1_distance: fields live on different factors");
    const auto& m = u.manifold();
    const auto& e = u.euclidean();
    double acc = 0.0;
    for (std::size_t i = 0; i < u.node_count(); ++i) {
        const double w = m.node_weight(i);
        for (std::size_t k = 0; k < u.cell_count(); ++k)
            acc += w * e.cell_volume(k) * std::abs(u.value(i, k) - v.value(i, k));
    }
    return acc;
}

std::vector<double> mass_profile(const Field& u, double s,
                                 const std::vector<double>& radii) {
    check_s(s);
    for (std::size_t t = 0; t + 1 < radii.size(); ++t)
        if (!(radii[t] < radii[t + 1]))
            throw DomainError("mass_profile: radii must be increasing");
    const auto& m = u.manifold();
    const auto& e = u.euclidean();
    double target_total = 0.0;
    for (std::size_t i = 0; i < u.node_count(); ++i)
        for (std::size_t k = 0; k < u.cell_count(); ++k)
            target_total +=
                m.node_weight(i) * e.cell_volume(k) * std::pow(u.value(i, k), s);
    if (target_total == 0.0)
        throw DomainError("mass_profile: field vanishes identically");
    std::vector<double> out;
    out.reserve(radii.size());
    for (double t : radii) {
        double captured = 0.0;
        for (std::size_t i = 0; i < u.node_count(); ++i) {
            const double w = m.node_weight(i);
            for (std::size_t k = 0; k < u.cell_count(); ++k)
                if (e.cell_radius(k) <= t)
                    captured += w * e.cell_volume(k) * std::pow(u.value(i, k), s);
        }
        out.push_back(captured / target_total);
    }
    return out;
}

} // namespace yamabe
