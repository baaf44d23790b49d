#pragma once

#include <cstdint>
#include <random>

#include "yamabe/field.hpp"

namespace yamabe {

/// Deterministic random inputs for property tests and the verify battery.
/// All draws go through uniform_unit (raw mt19937_64 bits mapped to [0,1)),
/// so a seed pins every generated value independently of the standard
/// library's distribution implementations.

double uniform_unit(std::mt19937_64& rng);

/// Uniform in [lo, hi).
double uniform_range(std::mt19937_64& rng, double lo, double hi);

/// Uniform integer in [lo, hi].
int uniform_int(std::mt19937_64& rng, int lo, int hi);

/// Homogeneous factor with volume in [0.5, 2] and curvature in [0.25, 2.5].
ManifoldFactor random_homogeneous(std::mt19937_64& rng);

/// Connected weighted graph with 2..max_nodes nodes (spanning tree plus
/// random extra edges), weights in [0.5, 1.5], curvatures in [0.25, 2.5],
/// conductances in [0.5, 2].
ManifoldFactor random_weighted_graph(std::mt19937_64& rng, int max_nodes);

/// Nonnegative field on M x Line1D with zero boundary cells.  Roughly a
/// quarter of the fibers are quantized to multiples of 1/8 to exercise ties.
Field random_line_field(std::mt19937_64& rng, ManifoldFactor m, int half_extent,
                        double spacing);

/// Field with the same factors as ref (values redrawn).
Field random_like(std::mt19937_64& rng, const Field& ref);

/// Field dominated by ref pointwise (for monotonicity tests).
Field random_minorant(std::mt19937_64& rng, const Field& ref);

} // namespace yamabe
