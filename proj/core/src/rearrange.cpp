#include "yamabe/rearrange.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "yamabe/errors.hpp"

namespace yamabe {

namespace {

void require_line1d(const EuclideanFactor& e, const char* op) {
    if (e.kind() != EuclideanFactor::Kind::Line1D)
        throw UnsupportedGridError(std::string(op) +
                                   ": only Line1D grids support this operation");
}

// Cell placement order for the symmetric-decreasing arrangement:
// 0, +1, -1, +2, -2, ..., +J, -J in lattice coordinates.
std::vector<std::size_t> placement_order(int half_extent) {
    std::vector<std::size_t> order;
    order.reserve(2 * half_extent + 1);
    order.push_back(static_cast<std::size_t>(half_extent)); // j = 0
    for (int r = 1; r <= half_extent; ++r) {
        order.push_back(static_cast<std::size_t>(half_extent + r));
        order.push_back(static_cast<std::size_t>(half_extent - r));
    }
    return order;
}

bool fiber_symmetric_decreasing(std::span<const double> fiber,
                                const std::vector<std::size_t>& order) {
    for (std::size_t r = 0; r + 1 < order.size(); ++r)
        if (fiber[order[r]] < fiber[order[r + 1]]) return false;
    return true;
}

} // namespace

Polarizer::Polarizer(double center, const EuclideanFactor& grid) {
    require_line1d(grid, "Polarizer");
    const double h = grid.spacing();
    const double ratio = 2.0 * center / h;
    const auto nu = static_cast<long long>(std::llround(ratio));
    if (nu == 0 || std::abs(ratio - static_cast<double>(nu)) >
                       1e-9 * std::max(1.0, std::abs(ratio)))
        throw DomainError("Polarizer: center must lie on the half-lattice (h/2)Z, "
                          "excluding 0");
    nu_ = static_cast<int>(nu);
    spacing_ = h;
}

std::string to_string(GreedyStatus status) {
    switch (status) {
    case GreedyStatus::ReachedTarget: return "ReachedTarget";
    case GreedyStatus::ReachedMirror: return "ReachedMirror";
    case GreedyStatus::Stalled: return "Stalled";
    case GreedyStatus::MaxIter: return "MaxIter";
    }
    return "Unknown";
}

Field steiner_symmetrize(const Field& u) {
    require_line1d(u.euclidean(), "steiner_symmetrize");
    const int half = u.euclidean().half_extent();
    const auto order = placement_order(half);
    const std::size_t cells = u.cell_count();
    std::vector<double> out(u.values().size());
    std::vector<double> fiber(cells);
    for (std::size_t i = 0; i < u.node_count(); ++i) {
        auto src = u.fiber(i);
        fiber.assign(src.begin(), src.end());
        // stable: equal values keep fiber order before placement
        std::stable_sort(fiber.begin(), fiber.end(), std::greater<double>());
        for (std::size_t r = 0; r < cells; ++r)
            out[i * cells + order[r]] = fiber[r];
    }
    return Field(u.manifold_ptr(), u.euclidean_ptr(), std::move(out));
}

Field polarize(const Field& u, const Polarizer& h) {
    require_line1d(u.euclidean(), "polarize");
    const int half = u.euclidean().half_extent();
    const std::size_t cells = u.cell_count();
    std::vector<double> out(u.values());
    for (std::size_t i = 0; i < u.node_count(); ++i) {
        double* fiber = out.data() + i * cells;
        for (int j = -half; j <= half; ++j) {
            const int p = h.reflect(j);
            const std::size_t kj = static_cast<std::size_t>(j + half);
            if (2 * j == h.nu()) continue; // cell on the hyperplane is fixed
            if (h.contains(j)) {
                // the mirror cell lies strictly on the H^c side, so each pair
                // is visited exactly once, from its H endpoint
                if (p < -half || p > half) continue; // pairs with the zero exterior
                const std::size_t kp = static_cast<std::size_t>(p + half);
                const double a = fiber[kj];
                const double b = fiber[kp];
                fiber[kj] = std::max(a, b);
                fiber[kp] = std::min(a, b);
            } else if ((p < -half || p > half) && fiber[kj] != 0.0) {
                // the max of this pair belongs to the exterior cell in H
                throw ReflectionOutOfDomainError(
                    "polarize: nonzero value at lattice index " + std::to_string(j) +
                    " reflects outside the grid");
            }
        }
    }
    return Field(u.manifold_ptr(), u.euclidean_ptr(), std::move(out));
}

std::vector<Polarizer> polarizer_candidates(const EuclideanFactor& grid) {
    require_line1d(grid, "polarizer_candidates");
    const int half = grid.half_extent();
    const double h = grid.spacing();
    std::vector<Polarizer> out;
    out.reserve(4 * static_cast<std::size_t>(half));
    for (int nu = 1; nu <= 2 * half; ++nu) {
        out.emplace_back(0.5 * nu * h, grid);
        out.emplace_back(-0.5 * nu * h, grid);
    }
    return out;
}

GreedyStepResult greedy_polarization_step(const Field& u, const Field& target,
                                          double kappa) {
    if (!(kappa > 0.0) || kappa > 1.0)
        throw DomainError("greedy_polarization_step: kappa must be in (0, 1]");
    if (!u.compatible_with(target))
        throw DomainError("greedy_polarization_step: target lives on other factors");
    require_line1d(u.euclidean(), "greedy_polarization_step");
    const auto order = placement_order(u.euclidean().half_extent());
    for (std::size_t i = 0; i < target.node_count(); ++i)
        if (!fiber_symmetric_decreasing(target.fiber(i), order))
            throw DomainError("greedy_polarization_step: target is not "
                              "symmetric-decreasing");

    const auto candidates = polarizer_candidates(u.euclidean());
    const double d0 = l1_distance(u, target);
    std::vector<double> improvement(candidates.size());
    double alpha = -std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        improvement[c] = d0 - l1_distance(polarize(u, candidates[c]), target);
        alpha = std::max(alpha, improvement[c]);
    }
    if (!(alpha > 0.0))
        return {u, std::nullopt, alpha};
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        if (improvement[c] >= kappa * alpha)
            return {polarize(u, candidates[c]), candidates[c], alpha};
    }
    return {u, std::nullopt, alpha}; // unreachable: alpha is attained
}

bool in_mirror_class(const Field& u, const Field& target) {
    if (!u.compatible_with(target) ||
        u.euclidean().kind() != EuclideanFactor::Kind::Line1D)
        return false;
    const int half = u.euclidean().half_extent();
    for (std::size_t i = 0; i < u.node_count(); ++i) {
        auto f = u.fiber(i);
        auto t = target.fiber(i);
        const std::size_t c = static_cast<std::size_t>(half);
        if (f[c] != t[c]) return false;
        for (int r = 1; r <= half; ++r) {
            const double a = f[c - static_cast<std::size_t>(r)];
            const double b = f[c + static_cast<std::size_t>(r)];
            const double ta = t[c - static_cast<std::size_t>(r)];
            const double tb = t[c + static_cast<std::size_t>(r)];
            if (!((a == ta && b == tb) || (a == tb && b == ta))) return false;
        }
    }
    return true;
}

GreedySequenceResult greedy_polarization_sequence(const Field& u, double kappa,
                                                  int max_iter) {
    const Field target = steiner_symmetrize(u);
    const Field mirrored = mirror(target);
    GreedyTrace trace;
    trace.initial_distance = l1_distance(u, target);
    Field current = u;
    for (;;) {
        if (current.values() == target.values()) {
            trace.status = GreedyStatus::ReachedTarget;
            break;
        }
        if (in_mirror_class(current, target)) {
            trace.status = GreedyStatus::ReachedMirror;
            break;
        }
        if (static_cast<int>(trace.steps.size()) >= max_iter) {
            trace.status = GreedyStatus::MaxIter;
            break;
        }
        auto step = greedy_polarization_step(current, target, kappa);
        if (!step.polarizer.has_value()) {
            trace.status = GreedyStatus::Stalled;
            break;
        }
        current = std::move(step.field);
        trace.steps.push_back({step.polarizer->center(), step.improvement,
                               l1_distance(current, target),
                               l1_distance(current, mirrored)});
    }
    return {std::move(current), std::move(trace)};
}

Field mirror(const Field& u) {
    require_line1d(u.euclidean(), "mirror");
    const std::size_t cells = u.cell_count();
    std::vector<double> out(u.values().size());
    for (std::size_t i = 0; i < u.node_count(); ++i)
        for (std::size_t k = 0; k < cells; ++k)
            out[i * cells + k] = u.value(i, cells - 1 - k);
    return Field(u.manifold_ptr(), u.euclidean_ptr(), std::move(out));
}

} // namespace yamabe
