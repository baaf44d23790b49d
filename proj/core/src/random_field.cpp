#include "yamabe/random_field.hpp"

#include <cmath>
#include <utility>

namespace yamabe {

double uniform_unit(std::mt19937_64& rng) {
    // top 53 bits -> [0,1); independent of libstdc++ distribution internals
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform_range(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform_unit(rng);
}

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<int>(rng() % span);
}

ManifoldFactor random_homogeneous(std::mt19937_64& rng) {
    return ManifoldFactor::homogeneous(uniform_range(rng, 0.5, 2.0),
                                       uniform_range(rng, 0.25, 2.5));
}

ManifoldFactor random_weighted_graph(std::mt19937_64& rng, int max_nodes) {
    const int n = uniform_int(rng, 2, max_nodes);
    std::vector<double> weights(n), curvature(n);
    for (int i = 0; i < n; ++i) {
        weights[i] = uniform_range(rng, 0.5, 1.5);
        curvature[i] = uniform_range(rng, 0.25, 2.5);
    }
    std::vector<ManifoldFactor::Edge> edges;
    for (int i = 1; i < n; ++i) // spanning tree keeps the graph connected
        edges.push_back({uniform_int(rng, 0, i - 1), i, uniform_range(rng, 0.5, 2.0)});
    for (int i = 0; i < n; ++i)
        for (int j = i + 2; j < n; ++j)
            if (uniform_unit(rng) < 0.3)
                edges.push_back({i, j, uniform_range(rng, 0.5, 2.0)});
    return ManifoldFactor::weighted_graph(std::move(weights), std::move(curvature),
                                          std::move(edges));
}

Field random_line_field(std::mt19937_64& rng, ManifoldFactor m, int half_extent,
                        double spacing) {
    auto grid = EuclideanFactor::line1d(half_extent, spacing);
    const std::size_t cells = grid.cell_count();
    std::vector<double> values(m.node_count() * cells, 0.0);
    for (std::size_t i = 0; i < m.node_count(); ++i) {
        const bool quantize = uniform_unit(rng) < 0.25;
        for (std::size_t k = 1; k + 1 < cells; ++k) {
            double v = uniform_unit(rng);
            if (quantize) v = std::floor(v * 8.0) / 8.0;
            values[i * cells + k] = v;
        }
    }
    return Field(std::move(m), std::move(grid), std::move(values));
}

Field random_like(std::mt19937_64& rng, const Field& ref) {
    const std::size_t cells = ref.cell_count();
    std::vector<double> values(ref.values().size(), 0.0);
    for (std::size_t i = 0; i < ref.node_count(); ++i) {
        const bool quantize = uniform_unit(rng) < 0.25;
        for (std::size_t k = 1; k + 1 < cells; ++k) {
            double v = uniform_unit(rng);
            if (quantize) v = std::floor(v * 8.0) / 8.0;
            values[i * cells + k] = v;
        }
    }
    return Field(ref.manifold_ptr(), ref.euclidean_ptr(), std::move(values));
}

Field random_minorant(std::mt19937_64& rng, const Field& ref) {
    std::vector<double> values(ref.values());
    for (auto& v : values) v *= uniform_unit(rng);
    return Field(ref.manifold_ptr(), ref.euclidean_ptr(), std::move(values));
}

} // namespace yamabe
