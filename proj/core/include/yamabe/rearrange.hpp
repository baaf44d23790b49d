#pragma once

#include <optional>
#include <string>
#include <vector>

#include "yamabe/field.hpp"

namespace yamabe {

/// Half-space polarizer in H_0: the reflection hyperplane sits at
/// c = nu * h/2 (nu a nonzero integer), and H is the open half-line that
/// contains 0.  The reflection y -> 2c - y maps lattice points to lattice
/// points.
class Polarizer {
  public:
    /// Validates that center lies on the half-lattice (h/2)*Z, center != 0.
    Polarizer(double center, const EuclideanFactor& grid);

    double center() const { return 0.5 * nu_ * spacing_; }
    /// Center in half-lattice units: center = nu * h/2.
    int nu() const { return nu_; }
    /// Reflection in lattice index coordinates (y_j = j*h): j -> nu - j.
    int reflect(int j) const { return nu_ - j; }
    /// Whether lattice index j lies in the open half H containing 0.
    bool contains(int j) const { return nu_ > 0 ? 2 * j < nu_ : 2 * j > nu_; }

  private:
    int nu_ = 0;
    double spacing_ = 0.0;
};

/// Terminal states of the greedy sequence.  ReachedMirror means the field
/// landed in the mirror class of the target: per fiber, the center value
/// matches and the two values at each radius match as an unordered pair.
/// Every arrangement in that class is a fixed point of every lattice
/// polarizer in H_0 (the global mirror is one member), so the class is the
/// exact discrete counterpart of the continuum limit u*.
enum class GreedyStatus { ReachedTarget, ReachedMirror, Stalled, MaxIter };

std::string to_string(GreedyStatus status);

/// Whether u lies in the mirror class of target (see GreedyStatus).
bool in_mirror_class(const Field& u, const Field& target);

/// Per-step record of the greedy polarization sequence.  Polarizations are
/// non-expansive toward every one of their fixed points, so both recorded
/// distances are nonincreasing and the target distance drops by at least
/// kappa * alpha per step.
struct GreedyTrace {
    struct Step {
        double center = 0.0;      ///< chosen polarizer center
        double improvement = 0.0; ///< best L1 improvement alpha at this step
        double distance = 0.0;    ///< L1 distance to the target after the step
        double mirror_distance = 0.0; ///< L1 distance to mirror(target)
    };
    double initial_distance = 0.0;
    std::vector<Step> steps;
    GreedyStatus status = GreedyStatus::Stalled;
};

struct GreedyStepResult {
    Field field;
    std::optional<Polarizer> polarizer;
    double improvement = 0.0; ///< alpha, the best improvement over all candidates
};

struct GreedySequenceResult {
    Field field;
    GreedyTrace trace;
};

/// Steiner symmetrization with respect to M on Line1D grids: per M-fiber the
/// values are stable-sorted descending and placed center-out, positive side
/// first (j = 0, +1, -1, +2, -2, ...).  Preserves the per-fiber value multiset
/// exactly.  Throws UnsupportedGridError on Radial grids.
Field steiner_symmetrize(const Field& u);

/// Two-point rearrangement across H: per fiber and per reflection pair, the
/// larger value goes to the cell in H, the smaller to its mirror.  Cells whose
/// mirror lies outside the grid pair against the zero extension; a nonzero
/// value that would have to move outside raises ReflectionOutOfDomainError.
Field polarize(const Field& u, const Polarizer& h);

/// All polarizers with c in (h/2)Z, 0 < |c| <= J*h, ordered by |c| ascending,
/// positive center before negative at equal |c|.
std::vector<Polarizer> polarizer_candidates(const EuclideanFactor& grid);

/// Evaluates the L1 improvement of every candidate polarizer and applies the
/// first candidate (in candidate order) achieving improvement >= kappa * alpha,
/// where alpha is the best improvement.  Returns u unchanged with no polarizer
/// when alpha <= 0.  Requires 0 < kappa <= 1 and a symmetric-decreasing target.
GreedyStepResult greedy_polarization_step(const Field& u, const Field& target,
                                          double kappa);

/// Iterates greedy steps against the internally computed target u* until the
/// field reaches u*, reaches mirror(u*), stalls, or hits max_iter.
GreedySequenceResult greedy_polarization_sequence(const Field& u, double kappa,
                                                  int max_iter);

/// Reflection y -> -y: values reversed along the Euclidean axis per fiber.
Field mirror(const Field& u);

} // namespace yamabe
