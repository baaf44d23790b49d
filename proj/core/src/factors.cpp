#include "yamabe/factors.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "yamabe/errors.hpp"

namespace yamabe {

double unit_ball_volume(int n) {
    return std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

double unit_sphere_area(int n) {
    return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
}

ManifoldFactor ManifoldFactor::homogeneous(double volume, double scalar_curvature) {
    if (!(volume > 0.0) || !std::isfinite(volume))
        throw DomainError("ManifoldFactor: volume must be positive");
    if (!std::isfinite(scalar_curvature))
        throw DomainError("ManifoldFactor: scalar curvature must be finite");
    ManifoldFactor m;
    m.kind_ = Kind::Homogeneous;
    m.weights_ = {volume};
    m.curvature_ = {scalar_curvature};
    m.volume_ = volume;
    return m;
}

ManifoldFactor ManifoldFactor::weighted_graph(std::vector<double> node_weights,
                                              std::vector<double> scalar_curvature,
                                              std::vector<Edge> edges) {
    if (node_weights.empty())
        throw DomainError("ManifoldFactor: graph needs at least one node");
    if (scalar_curvature.size() != node_weights.size())
        throw DomainError("ManifoldFactor: curvature list must match node count");
    double volume = 0.0;
    for (double w : node_weights) {
        if (!(w > 0.0) || !std::isfinite(w))
            throw DomainError("ManifoldFactor: node weights must be positive");
        volume += w;
    }
    for (double s : scalar_curvature)
        if (!std::isfinite(s))
            throw DomainError("ManifoldFactor: scalar curvature must be finite");
    const int n = static_cast<int>(node_weights.size());
    for (const Edge& e : edges) {
        if (e.i < 0 || e.i >= n || e.j < 0 || e.j >= n)
            throw DomainError("ManifoldFactor: edge endpoint out of range");
        if (e.i == e.j)
            throw DomainError("ManifoldFactor: self loops are not allowed");
        if (!(e.conductance > 0.0) || !std::isfinite(e.conductance))
            throw DomainError("ManifoldFactor: conductance must be positive");
    }
    ManifoldFactor m;
    m.kind_ = Kind::WeightedGraph;
    m.weights_ = std::move(node_weights);
    m.curvature_ = std::move(scalar_curvature);
    m.edges_ = std::move(edges);
    m.volume_ = volume;
    return m;
}

bool operator==(const ManifoldFactor& a, const ManifoldFactor& b) {
    if (a.kind_ != b.kind_ || a.weights_ != b.weights_ ||
        a.curvature_ != b.curvature_ || a.edges_.size() != b.edges_.size())
        return false;
    for (std::size_t k = 0; k < a.edges_.size(); ++k) {
        if (a.edges_[k].i != b.edges_[k].i || a.edges_[k].j != b.edges_[k].j ||
            a.edges_[k].conductance != b.edges_[k].conductance)
            return false;
    }
    return true;
}

EuclideanFactor EuclideanFactor::line1d(int half_extent, double spacing) {
    if (half_extent < 1)
        throw DomainError("EuclideanFactor: Line1D needs half extent J >= 1");
    if (!(spacing > 0.0) || !std::isfinite(spacing))
        throw DomainError("EuclideanFactor: spacing must be positive");
    EuclideanFactor e;
    e.kind_ = Kind::Line1D;
    e.half_extent_ = half_extent;
    e.spacing_ = spacing;
    return e;
}

EuclideanFactor EuclideanFactor::radial(int n, double r_max, int cell_count) {
    if (n < 1)
        throw DomainError("EuclideanFactor: radial dimension must be >= 1");
    if (!(r_max > 0.0) || !std::isfinite(r_max))
        throw DomainError("EuclideanFactor: r_max must be positive");
    if (cell_count < 1)
        throw DomainError("EuclideanFactor: need at least one shell");
    EuclideanFactor e;
    e.kind_ = Kind::Radial;
    e.dim_ = n;
    e.r_max_ = r_max;
    const double dr = r_max / cell_count;
    const double omega = unit_ball_volume(n);
    e.shell_volumes_.resize(cell_count);
    for (int k = 0; k < cell_count; ++k) {
        const double inner = k * dr;
        const double outer = (k + 1) * dr;
        e.shell_volumes_[k] = omega * (std::pow(outer, n) - std::pow(inner, n));
    }
    return e;
}

std::size_t EuclideanFactor::cell_count() const {
    return kind_ == Kind::Line1D ? static_cast<std::size_t>(2 * half_extent_ + 1)
                                 : shell_volumes_.size();
}

double EuclideanFactor::cell_volume(std::size_t k) const {
    return kind_ == Kind::Line1D ? spacing_ : shell_volumes_[k];
}

double EuclideanFactor::cell_center(std::size_t k) const {
    if (kind_ == Kind::Line1D)
        return (static_cast<int>(k) - half_extent_) * spacing_;
    const double dr = r_max_ / static_cast<double>(shell_volumes_.size());
    return (static_cast<double>(k) + 0.5) * dr;
}

double EuclideanFactor::cell_radius(std::size_t k) const {
    return std::abs(cell_center(k));
}

bool operator==(const EuclideanFactor& a, const EuclideanFactor& b) {
    if (a.kind_ != b.kind_) return false;
    if (a.kind_ == EuclideanFactor::Kind::Line1D)
        return a.half_extent_ == b.half_extent_ && a.spacing_ == b.spacing_;
    return a.dim_ == b.dim_ && a.r_max_ == b.r_max_ &&
           a.shell_volumes_.size() == b.shell_volumes_.size();
}

} // namespace yamabe
