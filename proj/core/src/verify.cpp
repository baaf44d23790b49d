#include "yamabe/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "yamabe/exponents.hpp"
#include "yamabe/field.hpp"
#include "yamabe/functional.hpp"
#include "yamabe/random_field.hpp"
#include "yamabe/rearrange.hpp"

namespace yamabe {

namespace {

struct Check {
    Check(std::string name, std::string statement)
        : result{std::move(name), std::move(statement), 0, 0,
                 -std::numeric_limits<double>::infinity()} {}

    // violation > 0 counts as a failure; the margin is recorded either way
    void record(double violation) {
        ++result.trials;
        if (violation > 0.0) ++result.failures;
        result.worst = std::max(result.worst, violation);
    }

    void record_flag(bool ok) { record(ok ? -1.0 : 1.0); }

    PropertyResult result;
};

double distance_s(const Field& u, const Field& v, double s) {
    const auto& m = u.manifold();
    const auto& e = u.euclidean();
    double acc = 0.0;
    for (std::size_t i = 0; i < u.node_count(); ++i) {
        const double w = m.node_weight(i);
        for (std::size_t k = 0; k < u.cell_count(); ++k)
            acc += w * e.cell_volume(k) *
                   std::pow(std::abs(u.value(i, k) - v.value(i, k)), s);
    }
    return std::pow(acc, 1.0 / s);
}

// relative violation of lhs <= rhs, measured against rhs (or 1 for tiny rhs)
double rel_excess(double lhs, double rhs, double tol) {
    return (lhs - rhs) / std::max(rhs, 1e-30) - tol;
}

bool fiber_multisets_match(const Field& a, const Field& b) {
    std::vector<double> x, y;
    for (std::size_t i = 0; i < a.node_count(); ++i) {
        auto fa = a.fiber(i);
        auto fb = b.fiber(i);
        x.assign(fa.begin(), fa.end());
        y.assign(fb.begin(), fb.end());
        std::sort(x.begin(), x.end());
        std::sort(y.begin(), y.end());
        if (x != y) return false; // bitwise: rearrangements never touch values
    }
    return true;
}

bool nonzero(const Field& u) {
    for (double v : u.values())
        if (v > 0.0) return true;
    return false;
}

} // namespace

VerifyReport run_verification(std::uint64_t seed, int trials) {
    std::mt19937_64 rng(seed);
    const auto ce = conformal_exponents(2, 1);

    Check multiset("multiset-preservation",
                   "u* and u^H are exact per-fiber rearrangements of u");
    Check norm_inv("norm-invariance",
                   "||u*||_s = ||u||_s and ||u^H||_s = ||u||_s, s in {1,2,4}");
    Check pol_grad("polarization-dirichlet",
                   "||grad u^H||_s <= ||grad u||_s, s in {1,2,3} "
                   "(equality in the continuum)");
    Check pol_refine("polarization-refinement",
                     "the gap ||grad u||_2 - ||grad u^H||_2 shrinks at "
                     "h, h/2, h/4 for a fixed smooth bump");
    Check polya("polya-szego", "||grad u*||_s <= ||grad u||_s, s in {1,2,3}");
    Check sym_nonexp("symmetrization-nonexpansive",
                     "||u* - v*||_s <= ||u - v||_s, s in {1,2}");
    Check pol_nonexp("polarization-nonexpansive",
                     "||u^H - v^H||_s <= ||u - v||_s, s in {1,2}");
    Check quot_mono("quotient-monotone", "Q_s(u*) <= Q_s(u), s in {3,4,p}");
    Check idem("symmetrization-idempotent", "(u*)* = u* exactly");
    Check set_mono("symmetrization-monotone", "u <= v pointwise => u* <= v*");
    Check greedy_desc("greedy-descent",
                      "greedy L1 distances to u* decrease strictly while "
                      "alpha > 0");
    Check greedy_term("greedy-termination",
                      "the greedy sequence ends at u* or in its mirror class "
                      "(single fiber)");
    Check sbp("summation-by-parts", "<Lap u, u> = ||grad u||_2^2");
    Check scale_inv("quotient-scale-invariance", "Q_s(c u) = Q_s(u) for c > 0");
    Check lap_const("laplacian-constant", "Lap(const) = 0");
    Check el_const("el-residual-constant",
                   "a Lap u + S u = lambda u^{s-1} holds for constants "
                   "iff lambda = S c^{2-s}");

    for (int t = 0; t < trials; ++t) {
        auto m = (t % 2 == 0) ? random_homogeneous(rng)
                              : random_weighted_graph(rng, 6);
        const int half = uniform_int(rng, 2, 16);
        const double h = std::vector<double>{0.25, 0.5, 1.0}[uniform_int(rng, 0, 2)];
        Field u = random_line_field(rng, m, half, h);
        int guard = 0;
        while (!nonzero(u) && ++guard < 100) u = random_like(rng, u);
        const Field v = random_like(rng, u);

        const Field ustar = steiner_symmetrize(u);
        const Field vstar = steiner_symmetrize(v);
        const auto candidates = polarizer_candidates(u.euclidean());
        const auto& pol = candidates[static_cast<std::size_t>(
            uniform_int(rng, 0, static_cast<int>(candidates.size()) - 1))];
        const Field uh = polarize(u, pol);
        const Field vh = polarize(v, pol);

        multiset.record_flag(fiber_multisets_match(u, ustar) &&
                             fiber_multisets_match(u, uh));

        for (double s : {1.0, 2.0, 4.0}) {
            const double base = lp_norm(u, s);
            norm_inv.record(std::abs(lp_norm(ustar, s) - base) /
                                std::max(base, 1e-30) -
                            1e-12);
            norm_inv.record(std::abs(lp_norm(uh, s) - base) /
                                std::max(base, 1e-30) -
                            1e-12);
        }

        for (double s : {1.0, 2.0, 3.0}) {
            const double base = grad_lp_norm(u, s);
            pol_grad.record(rel_excess(grad_lp_norm(uh, s), base, 1e-12));
            polya.record(rel_excess(grad_lp_norm(ustar, s), base, 1e-12));
        }

        for (double s : {1.0, 2.0}) {
            const double base = distance_s(u, v, s);
            sym_nonexp.record(rel_excess(distance_s(ustar, vstar, s), base, 1e-12));
            pol_nonexp.record(rel_excess(distance_s(uh, vh, s), base, 1e-12));
        }

        if (nonzero(u)) {
            for (double s : {3.0, 4.0, ce.p}) {
                const double qu = yamabe_quotient(u, s, ce).value;
                const double qs = yamabe_quotient(ustar, s, ce).value;
                quot_mono.record((qs - qu) / std::max(std::abs(qu), 1e-30) - 1e-12);
            }
        }

        idem.record_flag(steiner_symmetrize(ustar).values() == ustar.values());

        {
            const Field w = random_minorant(rng, u);
            const Field wstar = steiner_symmetrize(w);
            bool dominated = true;
            for (std::size_t d = 0; d < u.values().size(); ++d)
                dominated = dominated && wstar.values()[d] <= ustar.values()[d];
            set_mono.record_flag(dominated);
        }

        {
            const double kappa = (t % 2 == 0) ? 1.0 : 0.5;
            const int cells = 2 * half + 1;
            const auto run =
                greedy_polarization_sequence(u, kappa, 10 * cells * cells);
            bool decreasing = true;
            double prev = run.trace.initial_distance;
            double prev_mirror = l1_distance(u, mirror(steiner_symmetrize(u)));
            for (const auto& step : run.trace.steps) {
                decreasing = decreasing && step.distance < prev &&
                             step.improvement > 0.0 &&
                             step.mirror_distance <=
                                 prev_mirror + 1e-12 * (1.0 + prev_mirror);
                prev = step.distance;
                prev_mirror = step.mirror_distance;
            }
            greedy_desc.record_flag(decreasing);
            if (u.node_count() == 1)
                greedy_term.record_flag(
                    run.trace.status == GreedyStatus::ReachedTarget ||
                    run.trace.status == GreedyStatus::ReachedMirror);
        }

        {
            const auto lap = laplacian(u);
            const double lhs = weighted_dot(u, lap, u.values());
            const double g2 = grad_lp_norm(u, 2.0);
            sbp.record(std::abs(lhs - g2 * g2) / std::max(g2 * g2, 1e-30) - 1e-12);
        }

        if (nonzero(u)) {
            const double c = uniform_range(rng, 0.1, 5.0);
            const double s = uniform_range(rng, 2.5, 6.0);
            std::vector<double> scaled(u.values());
            for (auto& x : scaled) x *= c;
            const Field cu(u.manifold_ptr(), u.euclidean_ptr(), std::move(scaled));
            const double qu = yamabe_quotient(u, s, ce).value;
            const double qc = yamabe_quotient(cu, s, ce).value;
            scale_inv.record(std::abs(qc - qu) / std::max(qu, 1e-30) - 1e-13);
        }

        {
            const Field flat(u.manifold_ptr(), u.euclidean_ptr(),
                             std::vector<double>(u.values().size(),
                                                 uniform_range(rng, 0.5, 3.0)));
            const auto lap = laplacian(flat);
            double worst = 0.0;
            for (double x : lap) worst = std::max(worst, std::abs(x));
            lap_const.record(worst - 1e-12);
        }

        if (u.manifold().is_homogeneous()) {
            const double c = uniform_range(rng, 0.5, 2.0);
            const double s = uniform_range(rng, 2.5, 6.0);
            const double curv = u.manifold().scalar_curvature(0);
            const Field flat(u.manifold_ptr(), u.euclidean_ptr(),
                             std::vector<double>(u.values().size(), c));
            const double solving = curv * std::pow(c, 2.0 - s);
            const double scale = curv * c * std::sqrt(total_volume(
                                              u.manifold(), u.euclidean()));
            const double zero_res = el_residual(flat, s, solving, ce);
            const double off_res = el_residual(flat, s, 1.5 * solving, ce);
            el_const.record(zero_res / scale - 1e-12);
            el_const.record_flag(off_res > 1e-6 * scale);
        }
    }

    {
        // deterministic one-shot: fixed smooth bump, fixed polarizer c = 1/2
        std::vector<double> gaps;
        for (double h : {0.25, 0.125, 0.0625}) {
            const int half = static_cast<int>(std::lround(8.0 / h));
            auto grid = EuclideanFactor::line1d(half, h);
            std::vector<double> values(grid.cell_count(), 0.0);
            for (int j = -half + 1; j < half; ++j) {
                const double y = j * h;
                values[static_cast<std::size_t>(j + half)] =
                    std::exp(-2.0 * (y - 0.8) * (y - 0.8)) +
                    0.6 * std::exp(-1.5 * (y + 2.2) * (y + 2.2));
            }
            Field bump(ManifoldFactor::homogeneous(1.0, 1.0), std::move(grid),
                       std::move(values));
            const Field bump_h = polarize(bump, Polarizer(0.5, bump.euclidean()));
            const double g = grad_lp_norm(bump, 2.0);
            gaps.push_back((g - grad_lp_norm(bump_h, 2.0)) / g);
        }
        pol_refine.record_flag(gaps[0] > gaps[1] && gaps[1] > gaps[2] &&
                               gaps[2] >= -1e-12);
    }

    VerifyReport report;
    report.seed = seed;
    report.properties = {multiset.result,    norm_inv.result,   pol_grad.result,
                         pol_refine.result,  polya.result,      sym_nonexp.result,
                         pol_nonexp.result,  quot_mono.result,  idem.result,
                         set_mono.result,    greedy_desc.result, greedy_term.result,
                         sbp.result,         scale_inv.result,  lap_const.result,
                         el_const.result};
    return report;
}

} // namespace yamabe
