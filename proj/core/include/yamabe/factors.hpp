#pragma once

#include <cstddef>
#include <vector>

namespace yamabe {

/// Discrete model of the closed factor (M, g_M).
///
/// Two variants share one interface: a homogeneous model (a single quadrature
/// node carrying the total volume and the constant scalar curvature) and a
/// weighted graph (per-node quadrature volumes w_i, per-node scalar curvature
/// S_i, and conductance-weighted edges that define differences along M).
class ManifoldFactor {
  public:
    enum class Kind { Homogeneous, WeightedGraph };

    struct Edge {
        int i = 0;
        int j = 0;
        double conductance = 0.0;
    };

    static ManifoldFactor homogeneous(double volume, double scalar_curvature);
    static ManifoldFactor weighted_graph(std::vector<double> node_weights,
                                         std::vector<double> scalar_curvature,
                                         std::vector<Edge> edges);

    Kind kind() const { return kind_; }
    bool is_homogeneous() const { return kind_ == Kind::Homogeneous; }

    std::size_t node_count() const { return weights_.size(); }
    double node_weight(std::size_t i) const { return weights_[i]; }
    double scalar_curvature(std::size_t i) const { return curvature_[i]; }
    /// Total volume of M; always equals the sum of the node weights.
    double volume() const { return volume_; }
    const std::vector<Edge>& edges() const { return edges_; }

    friend bool operator==(const ManifoldFactor&, const ManifoldFactor&);

  private:
    ManifoldFactor() = default;

    Kind kind_ = Kind::Homogeneous;
    std::vector<double> weights_;
    std::vector<double> curvature_;
    std::vector<Edge> edges_;
    double volume_ = 0.0;
};

/// Discrete model of the Euclidean factor R^n.
///
/// Line1D is the symmetric lattice y_j = j*h, j in [-J, J], each cell of
/// volume h (used by the rearrangement machinery, n = 1).  Radial is a
/// uniform shell grid on [0, r_max] in R^n; cell k is the shell between
/// k*dr and (k+1)*dr and carries the exact Euclidean shell volume
/// omega_n * ((k+1)^n - k^n) * dr^n.
class EuclideanFactor {
  public:
    enum class Kind { Line1D, Radial };

    static EuclideanFactor line1d(int half_extent, double spacing);
    static EuclideanFactor radial(int n, double r_max, int cell_count);

    Kind kind() const { return kind_; }
    bool is_line1d() const { return kind_ == Kind::Line1D; }

    std::size_t cell_count() const;
    double cell_volume(std::size_t k) const;
    /// Representative coordinate of a cell: y_j for Line1D, the shell
    /// midpoint radius for Radial.
    double cell_center(std::size_t k) const;
    /// Distance of a cell from the symmetry center (|y_j|, or the shell
    /// midpoint radius).  Used by mass profiles.
    double cell_radius(std::size_t k) const;

    // Line1D accessors.
    int half_extent() const { return half_extent_; }
    double spacing() const { return spacing_; }

    // Radial accessors.
    int dim() const { return dim_; }
    double r_max() const { return r_max_; }
    const std::vector<double>& shell_volumes() const { return shell_volumes_; }

    friend bool operator==(const EuclideanFactor&, const EuclideanFactor&);

  private:
    EuclideanFactor() = default;

    Kind kind_ = Kind::Line1D;
    int half_extent_ = 0;
    double spacing_ = 0.0;
    int dim_ = 0;
    double r_max_ = 0.0;
    std::vector<double> shell_volumes_;
};

/// Volume of the unit ball in R^n.
double unit_ball_volume(int n);
/// Area of the unit sphere S^{n-1} in R^n (sigma_0 = 2).
double unit_sphere_area(int n);

} // namespace yamabe
