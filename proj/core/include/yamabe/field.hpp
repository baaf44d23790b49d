#pragma once

#include <memory>
#include <span>
#include <vector>

#include "yamabe/factors.hpp"

namespace yamabe {

/// Nonnegative function values on the product of the two factors, indexed by
/// (M-node, Euclidean cell).  Immutable after construction; all operations
/// return new fields.
class Field {
  public:
    Field(ManifoldFactor manifold, EuclideanFactor euclidean,
          std::vector<double> values);
    Field(std::shared_ptr<const ManifoldFactor> manifold,
          std::shared_ptr<const EuclideanFactor> euclidean,
          std::vector<double> values);

    static Field constant(ManifoldFactor manifold, EuclideanFactor euclidean,
                          double value);

    const ManifoldFactor& manifold() const { return *manifold_; }
    const EuclideanFactor& euclidean() const { return *euclidean_; }
    std::shared_ptr<const ManifoldFactor> manifold_ptr() const { return manifold_; }
    std::shared_ptr<const EuclideanFactor> euclidean_ptr() const { return euclidean_; }

    std::size_t node_count() const { return manifold_->node_count(); }
    std::size_t cell_count() const { return euclidean_->cell_count(); }

    double value(std::size_t node, std::size_t cell) const {
        return values_[node * cells_ + cell];
    }
    const std::vector<double>& values() const { return values_; }
    /// Values of one M-fiber (all Euclidean cells at a fixed M-node).
    std::span<const double> fiber(std::size_t node) const {
        return {values_.data() + node * cells_, cells_};
    }

    /// Same factors (structurally), for binary operations.
    bool compatible_with(const Field& other) const;

  private:
    std::shared_ptr<const ManifoldFactor> manifold_;
    std::shared_ptr<const EuclideanFactor> euclidean_;
    std::vector<double> values_;
    std::size_t cells_ = 0;
};

/// Product of the M volume and the total Euclidean cell volume.
double total_volume(const ManifoldFactor& m, const EuclideanFactor& e);

/// Weighted s-norm (sum_{i,k} w_i vol_k u_{ik}^s)^{1/s}, fixed summation
/// order.  Throws DomainError for s < 1.
double lp_norm(const Field& u, double s);

/// s-norm of the discrete gradient.  The Euclidean direction uses forward
/// differences on Line1D edges (edge weight w_i*h) and shell-interface
/// differences on Radial grids (interface weight w_i * sigma_{n-1} r^{n-1} dr);
/// the M direction (WeightedGraph only) contributes per edge and per cell with
/// weight c_ij * vol_k.  Direction parts never share a site, so the gradient
/// magnitude at a site is the single part present there.
double grad_lp_norm(const Field& u, double s);

/// Positive discrete Laplacian assembled from the same difference structure
/// as grad_lp_norm, so that weighted_dot(u, laplacian(u)) equals
/// grad_lp_norm(u,2)^2 exactly (summation by parts).  Output may be signed,
/// hence a raw vector in field index order.
std::vector<double> laplacian(const Field& u);

/// Quadrature inner product sum_{i,k} w_i vol_k x_{ik} y_{ik} over the
/// factors of u.
double weighted_dot(const Field& u, std::span<const double> x,
                    std::span<const double> y);

/// Weighted L1 distance between two fields on the same factors.
double l1_distance(const Field& u, const Field& v);

/// For each t in radii (increasing), the captured mass fraction
/// (integral of u^s over M x B_t) / (integral of u^s over N).
/// A cell belongs to B_t when its center lies within distance t of the
/// symmetry center.  Throws DomainError if u vanishes identically or the
/// radii are not increasing.
std::vector<double> mass_profile(const Field& u, double s,
                                 const std::vector<double>& radii);

} // namespace yamabe
