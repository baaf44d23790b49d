#include "yamabe/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "yamabe/functional.hpp"

namespace yamabe {

namespace {

// Kahan-compensated accumulation in extended precision.  The flow's stopping
// rule resolves Q_s decrements far below the double ulp of Q itself.
struct Accumulator {
    long double sum = 0.0L;
    long double comp = 0.0L;
    void add(long double x) {
        const long double y = x - comp;
        const long double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

double sign_pow(double f, double e) {
    return std::copysign(std::pow(std::abs(f), e), f);
}

/// Discrete machinery of one radial problem at a fixed exponent s.
/// Nodes 0..K-1 are unknowns, node K is the Dirichlet boundary.
class RadialKernel {
  public:
    RadialKernel(const RadialProblem& prob, double s)
        : prob_(prob), s_(s), k_(prob.cells()) {}

    long double stiffness(const std::vector<double>& f) const {
        Accumulator acc;
        for (int k = 0; k < k_; ++k) {
            const double next = (k + 1 < k_) ? f[k + 1] : 0.0;
            const long double d = static_cast<long double>(next) - f[k];
            acc.add(prob_.conductance(k) * d * d);
        }
        return acc.sum;
    }

    long double mass2(const std::vector<double>& f) const {
        Accumulator acc;
        for (int k = 0; k < k_; ++k)
            acc.add(static_cast<long double>(prob_.node_volume(k)) * f[k] * f[k]);
        return acc.sum;
    }

    long double mass_s(const std::vector<double>& f) const {
        Accumulator acc;
        for (int k = 0; k < k_; ++k)
            acc.add(static_cast<long double>(prob_.node_volume(k)) *
                    std::pow(f[k], s_));
        return acc.sum;
    }

    // (Q(y) - Q(f)) * Ps(f)^{2/s}, assembled from pairwise differences so the
    // sign stays meaningful when Q(y) and Q(f) agree to many digits.  e_f and
    // ps_f are the cached energy and s-mass of f.
    long double quotient_delta(const std::vector<double>& f,
                               const std::vector<double>& y, long double e_f,
                               long double ps_f) const {
        const long double a = prob_.exponents().a;
        const long double curv = prob_.scalar_curvature();
        Accumulator d_energy;
        for (int k = 0; k < k_; ++k) {
            const long double fn = (k + 1 < k_) ? f[k + 1] : 0.0;
            const long double yn = (k + 1 < k_) ? y[k + 1] : 0.0;
            const long double df = fn - f[k];
            const long double dy = yn - y[k];
            d_energy.add(a * prob_.conductance(k) * (dy - df) * (dy + df));
            const long double vf = f[k];
            const long double vy = y[k];
            d_energy.add(curv * prob_.node_volume(k) * (vy - vf) * (vy + vf));
        }
        Accumulator d_mass;
        for (int k = 0; k < k_; ++k)
            d_mass.add(static_cast<long double>(prob_.node_volume(k)) *
                       (std::pow(static_cast<long double>(y[k]),
                                 static_cast<long double>(s_)) -
                        std::pow(static_cast<long double>(f[k]),
                                 static_cast<long double>(s_))));
        const long double u = d_mass.sum / ps_f;
        if (!(u > -1.0L)) // candidate lost all its mass
            return std::numeric_limits<long double>::infinity();
        const long double v =
            std::expm1(static_cast<long double>(-2.0L / s_) * std::log1p(u));
        return d_energy.sum + v * (e_f + d_energy.sum);
    }

    long double energy(const std::vector<double>& f) const {
        return prob_.exponents().a * stiffness(f) +
               prob_.scalar_curvature() * mass2(f);
    }

    // a*Lap f + S f - lambda f^{s-1}
    std::vector<double> residual_vector(const std::vector<double>& f,
                                        double lambda) const {
        const double a = prob_.exponents().a;
        const double curv = prob_.scalar_curvature();
        std::vector<double> g(k_);
        for (int k = 0; k < k_; ++k) {
            const double prev = (k > 0) ? f[k - 1] : f[k]; // ghost symmetry at 0
            const double next = (k + 1 < k_) ? f[k + 1] : 0.0;
            const double gl = (k > 0) ? prob_.conductance(k - 1) : 0.0;
            const double gr = prob_.conductance(k);
            const double lap =
                (gl * (f[k] - prev) + gr * (f[k] - next)) / prob_.node_volume(k);
            g[k] = a * lap + curv * f[k] - lambda * std::pow(f[k], s_ - 1.0);
        }
        return g;
    }

    double weighted_norm(const std::vector<double>& g) const {
        Accumulator acc;
        for (int k = 0; k < k_; ++k)
            acc.add(static_cast<long double>(prob_.node_volume(k)) * g[k] * g[k]);
        return static_cast<double>(std::sqrt(acc.sum));
    }

    // Solves (a*Lap + S) d = rhs, a tridiagonal SPD system, by the Thomas
    // algorithm (diagonally dominant since S > 0).
    std::vector<double> solve_linear(const std::vector<double>& rhs) const {
        const double a = prob_.exponents().a;
        const double curv = prob_.scalar_curvature();
        std::vector<double> diag(k_), upper(k_), lower(k_);
        for (int k = 0; k < k_; ++k) {
            const double v = prob_.node_volume(k);
            const double gl = (k > 0) ? prob_.conductance(k - 1) : 0.0;
            const double gr = prob_.conductance(k);
            diag[k] = a * (gl + gr) / v + curv;
            lower[k] = -a * gl / v;
            upper[k] = (k + 1 < k_) ? -a * gr / v : 0.0;
        }
        std::vector<double> c(k_), d(k_), x(k_);
        c[0] = upper[0] / diag[0];
        d[0] = rhs[0] / diag[0];
        for (int k = 1; k < k_; ++k) {
            const double denom = diag[k] - lower[k] * c[k - 1];
            c[k] = upper[k] / denom;
            d[k] = (rhs[k] - lower[k] * d[k - 1]) / denom;
        }
        x[k_ - 1] = d[k_ - 1];
        for (int k = k_ - 2; k >= 0; --k)
            x[k] = d[k] - c[k] * x[k + 1];
        return x;
    }

    // Clips negatives and rescales to unit s-norm.  Returns false when the
    // clipped candidate vanishes.
    bool project(std::vector<double>& f) const {
        for (double& v : f) v = std::max(v, 0.0);
        const long double ps = mass_s(f);
        if (!(ps > 0.0L)) return false;
        const double scale =
            static_cast<double>(std::exp(-std::log(ps) / s_));
        for (double& v : f) v *= scale;
        return true;
    }

  private:
    const RadialProblem& prob_;
    double s_;
    int k_;
};

} // namespace

RadialProblem::RadialProblem(const ManifoldFactor& manifold, ConformalExponents ce,
                             double r_max, int cells)
    : ce_(ce), r_max_(r_max), cells_(cells) {
    if (!manifold.is_homogeneous())
        throw DomainError("RadialProblem: the radial reduction requires a "
                          "homogeneous manifold factor");
    volume_m_ = manifold.volume();
    scalar_curvature_ = manifold.scalar_curvature(0);
    if (!(scalar_curvature_ > 0.0))
        throw DomainError("RadialProblem: scalar curvature must be positive");
    if (!(r_max > 0.0))
        throw DomainError("RadialProblem: r_max must be positive");
    if (cells < 16)
        throw DomainError("RadialProblem: need at least 16 cells");
    dr_ = r_max_ / cells_;
    const int n = ce_.n;
    const double omega = unit_ball_volume(n);
    const double sigma = unit_sphere_area(n);
    node_volume_.resize(cells_);
    conductance_.resize(cells_);
    for (int k = 0; k < cells_; ++k) {
        const double lo = std::max(0.0, (k - 0.5) * dr_);
        const double hi = (k + 0.5) * dr_;
        node_volume_[k] = volume_m_ * omega * (std::pow(hi, n) - std::pow(lo, n));
        const double rho = (k + 0.5) * dr_;
        conductance_[k] = volume_m_ * sigma * std::pow(rho, n - 1) / dr_;
    }
}

SolveReport minimize_subcritical(const RadialProblem& prob, double s,
                                 const SolveOptions& opts,
                                 const std::optional<std::vector<double>>& init,
                                 bool allow_critical) {
    const double p = prob.exponents().p;
    if (!(s > 2.0) || s > p || (!allow_critical && s >= p))
        throw DomainError("minimize_subcritical: need 2 < s < p = " +
                          std::to_string(p));
    const int K = prob.cells();
    RadialKernel kernel(prob, s);

    std::vector<double> f(K);
    if (init.has_value()) {
        const auto& given = *init;
        if (given.size() != static_cast<std::size_t>(K) &&
            given.size() != static_cast<std::size_t>(K + 1))
            throw DomainError("minimize_subcritical: init profile has wrong size");
        bool any_positive = false;
        for (int k = 0; k < K; ++k) {
            if (given[k] < 0.0)
                throw DomainError("minimize_subcritical: init must be nonnegative");
            f[k] = given[k];
            any_positive = any_positive || given[k] > 0.0;
        }
        if (!any_positive)
            throw DomainError("minimize_subcritical: init vanishes identically");
    } else {
        for (int k = 0; k < K; ++k) {
            const double r = prob.node_r(k);
            f[k] = std::exp(-0.5 * r * r);
        }
    }
    kernel.project(f);

    auto make_report = [&](int iterations, long double quotient, double residual,
                           std::vector<double> trace) {
        SolveReport rep;
        rep.s = s;
        rep.lambda_s = static_cast<double>(quotient);
        rep.profile = f;
        rep.profile.push_back(0.0); // Dirichlet node
        rep.iterations = iterations;
        rep.final_residual = residual;
        rep.final_quotient = static_cast<double>(quotient);
        rep.norm_check =
            static_cast<double>(std::exp(std::log(kernel.mass_s(f)) / s));
        const long double ps = kernel.mass_s(f);
        Accumulator outer;
        for (int k = 0; k < K; ++k)
            if (prob.node_r(k) > 0.9 * prob.r_max())
                outer.add(static_cast<long double>(prob.node_volume(k)) *
                          std::pow(f[k], s));
        rep.boundary_mass = static_cast<double>(outer.sum / ps);
        rep.quotient_trace = std::move(trace);
        return rep;
    };

    std::vector<double> trace;
    long double q = kernel.energy(f); // unit s-norm, so Q_s = energy = lambda
    trace.push_back(static_cast<double>(q));
    long double q_prev = q;
    bool have_step = false;
    int iterations = 0;

    for (;;) {
        const auto grad = kernel.residual_vector(f, static_cast<double>(q));
        const double res = kernel.weighted_norm(grad);
        const bool q_settled =
            !have_step || std::abs(q_prev - q) <= 1e-12L * std::abs(q);
        if (res < opts.tol && q_settled)
            return make_report(iterations, q, res, std::move(trace));
        if (iterations >= opts.max_iter) {
            char msg[96];
            std::snprintf(msg, sizeof(msg),
                          "minimize_subcritical: max_iter reached with "
                          "residual %.3e",
                          res);
            throw NonConvergenceError(
                msg, make_report(iterations, q, res, std::move(trace)));
        }

        const auto direction = kernel.solve_linear(grad);
        const long double ps = kernel.mass_s(f);
        double tau = 1.0;
        bool accepted = false;
        std::vector<double> candidate(K);
        while (tau >= 1e-14) {
            for (int k = 0; k < K; ++k)
                candidate[k] = std::max(f[k] - tau * direction[k], 0.0);
            if (kernel.quotient_delta(f, candidate, q, ps) < 0.0L) {
                accepted = true;
                break;
            }
            tau *= 0.5;
        }
        if (!accepted) {
            char msg[96];
            std::snprintf(msg, sizeof(msg),
                          "minimize_subcritical: line search stalled with "
                          "residual %.3e",
                          res);
            if (res < opts.tol)
                return make_report(iterations, q, res, std::move(trace));
            throw NonConvergenceError(msg,
                                      make_report(iterations, q, res,
                                                  std::move(trace)));
        }
        kernel.project(candidate);
        f = candidate;
        q_prev = q;
        q = kernel.energy(f);
        have_step = true;
        ++iterations;
        trace.push_back(static_cast<double>(q));
    }
}

namespace {

/// Dormand-Prince 5(4) with a proportional step controller and dense output
/// through cubic Hermite interpolation of the accepted steps.
class RadialOde {
  public:
    RadialOde(const RadialProblem& prob, double s)
        : a_(prob.exponents().a), n_(prob.exponents().n),
          curv_(prob.scalar_curvature()), s_(s) {}

    struct Sample {
        double r, f, g;
    };

    enum class Outcome { Crossed, Turned, Reached };

    void rhs(double r, double f, double g, double& df, double& dg) const {
        df = g;
        const double force = (curv_ * f - sign_pow(f, s_ - 1.0)) / a_;
        if (r < 1e-12)
            dg = force / n_; // ghost symmetry: f'(0) = 0
        else
            dg = force - (n_ - 1) / r * g;
    }

    // Integrates from (0, f0, 0) until an event or r_end; stores samples when
    // record is true.  h_max caps the accepted steps so that the cubic
    // Hermite reconstruction between samples stays below quadrature accuracy.
    Outcome integrate(double f0, double r_end, bool events,
                      std::vector<Sample>* out,
                      double h_max = std::numeric_limits<double>::infinity()) const {
        double r = 0.0, f = f0, g = 0.0;
        double h = 1e-4;
        const double tol = 1e-12;
        if (out) out->push_back({r, f, g});
        while (r < r_end) {
            h = std::min({h, r_end - r, h_max});
            double rf, rg, err;
            step(r, f, g, h, rf, rg, err);
            const double scale =
                tol * std::max({1.0, std::abs(f), std::abs(rf)});
            if (err > scale && h > 1e-12) {
                h *= std::max(0.2, 0.9 * std::pow(scale / err, 0.2));
                continue;
            }
            r += h;
            f = rf;
            g = rg;
            if (out) out->push_back({r, f, g});
            if (events) {
                if (f <= 0.0) return Outcome::Crossed;
                if (g > 0.0 && f < f0) return Outcome::Turned;
            }
            if (err > 0.0)
                h *= std::min(5.0, 0.9 * std::pow(scale / err, 0.2));
            else
                h *= 5.0;
        }
        return Outcome::Reached;
    }

  private:
    void step(double r, double f, double g, double h, double& rf, double& rg,
              double& err) const {
        // Dormand-Prince coefficients
        static constexpr double c[7] = {0, 1.0 / 5, 3.0 / 10, 4.0 / 5,
                                        8.0 / 9, 1.0, 1.0};
        static constexpr double A[7][6] = {
            {},
            {1.0 / 5},
            {3.0 / 40, 9.0 / 40},
            {44.0 / 45, -56.0 / 15, 32.0 / 9},
            {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
            {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176,
             -5103.0 / 18656},
            {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784,
             11.0 / 84}};
        static constexpr double b5[7] = {35.0 / 384,     0.0,  500.0 / 1113,
                                         125.0 / 192,    -2187.0 / 6784,
                                         11.0 / 84,      0.0};
        static constexpr double b4[7] = {5179.0 / 57600,  0.0,
                                         7571.0 / 16695,  393.0 / 640,
                                         -92097.0 / 339200, 187.0 / 2100,
                                         1.0 / 40};
        double kf[7], kg[7];
        for (int i = 0; i < 7; ++i) {
            double fi = f, gi = g;
            for (int j = 0; j < i; ++j) {
                fi += h * A[i][j] * kf[j];
                gi += h * A[i][j] * kg[j];
            }
            rhs(r + c[i] * h, fi, gi, kf[i], kg[i]);
        }
        double f5 = f, g5 = g, f4 = f, g4 = g;
        for (int i = 0; i < 7; ++i) {
            f5 += h * b5[i] * kf[i];
            g5 += h * b5[i] * kg[i];
            f4 += h * b4[i] * kf[i];
            g4 += h * b4[i] * kg[i];
        }
        rf = f5;
        rg = g5;
        err = std::max(std::abs(f5 - f4), std::abs(g5 - g4));
    }

    double a_;
    int n_;
    double curv_;
    double s_;
};

double hermite_eval(const std::vector<RadialOde::Sample>& samples, double r,
                    bool derivative) {
    // samples are sorted by r; locate the bracketing step
    std::size_t lo = 0, hi = samples.size() - 1;
    if (r <= samples.front().r)
        return derivative ? samples.front().g : samples.front().f;
    if (r >= samples.back().r)
        return derivative ? samples.back().g : samples.back().f;
    while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        if (samples[mid].r <= r)
            lo = mid;
        else
            hi = mid;
    }
    const auto& s0 = samples[lo];
    const auto& s1 = samples[hi];
    const double h = s1.r - s0.r;
    const double t = (r - s0.r) / h;
    const double h00 = (1 + 2 * t) * (1 - t) * (1 - t);
    const double h10 = t * (1 - t) * (1 - t);
    const double h01 = t * t * (3 - 2 * t);
    const double h11 = t * t * (t - 1);
    if (!derivative)
        return h00 * s0.f + h10 * h * s0.g + h01 * s1.f + h11 * h * s1.g;
    const double d00 = 6 * t * (t - 1) / h;
    const double d10 = (1 - 4 * t + 3 * t * t);
    const double d01 = -6 * t * (t - 1) / h;
    const double d11 = (3 * t * t - 2 * t);
    return d00 * s0.f + d10 * s0.g + d01 * s1.f + d11 * s1.g;
}

double simpson(const std::vector<double>& y, double h) {
    // y.size() odd
    Accumulator acc;
    acc.add(y.front());
    acc.add(y.back());
    for (std::size_t i = 1; i + 1 < y.size(); ++i)
        acc.add(y[i] * ((i % 2 == 1) ? 4.0 : 2.0));
    return static_cast<double>(acc.sum * h / 3.0L);
}

} // namespace

ShootResult shoot_radial(const RadialProblem& prob, double s, double f0) {
    if (!(f0 > 0.0))
        throw DomainError("shoot_radial: f0 must be positive");
    if (!(s > 2.0) || s > prob.exponents().p)
        throw DomainError("shoot_radial: need 2 < s <= p");
    RadialOde ode(prob, s);

    // Brackets the ground state of the truncated problem the flow solves:
    // too-high shots cross zero before r_max, too-low shots turn upward or
    // stay positive through r_max.  The crossing radius moves to r_max as f0
    // approaches the bracket, recovering the free-space state as r_max grows.
    auto classify = [&](double height) {
        return ode.integrate(height, prob.r_max(), true, nullptr);
    };

    // initial sweep for a bracket
    double lo = 0.0, hi = 0.0;
    {
        double trial = f0;
        for (int attempt = 0; attempt < 200; ++attempt) {
            const auto outcome = classify(trial);
            if (outcome == RadialOde::Outcome::Crossed) {
                hi = trial;
                if (lo > 0.0) break;
                trial *= 0.5;
            } else {
                lo = trial;
                if (hi > 0.0) break;
                trial *= 2.0;
            }
            if (!(trial > 1e-30) || !(trial < 1e30))
                throw BracketFailureError(
                    "shoot_radial: no sign change in the initial f0 sweep");
        }
        if (lo == 0.0 || hi == 0.0)
            throw BracketFailureError(
                "shoot_radial: no sign change in the initial f0 sweep");
    }

    while (hi - lo > 1e-12 * hi) {
        const double mid = 0.5 * (lo + hi);
        if (classify(mid) == RadialOde::Outcome::Crossed)
            hi = mid;
        else
            lo = mid;
    }
    const double height = 0.5 * (lo + hi);

    std::vector<RadialOde::Sample> samples;
    ode.integrate(height, prob.r_max(), false, &samples,
                  prob.r_max() / 4096.0);

    // Q_s of the ground state via Simpson quadrature of the dense output.
    const int n = prob.exponents().n;
    const std::size_t m = 8 * static_cast<std::size_t>(prob.cells()) + 1;
    const double hq = prob.r_max() / static_cast<double>(m - 1);
    std::vector<double> y_grad(m), y_mass2(m), y_mass_s(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double r = i * hq;
        const double w = std::pow(r, n - 1);
        const double f = std::max(0.0, hermite_eval(samples, r, false));
        const double g = hermite_eval(samples, r, true);
        y_grad[i] = w * g * g;
        y_mass2[i] = w * f * f;
        y_mass_s[i] = w * std::pow(f, s);
    }
    const double measure = prob.volume_m() * unit_sphere_area(n);
    const double num = measure * (prob.exponents().a * simpson(y_grad, hq) +
                                  prob.scalar_curvature() * simpson(y_mass2, hq));
    const double mass_s = measure * simpson(y_mass_s, hq);
    const double lambda = num / std::pow(mass_s, 2.0 / s);

    ShootResult result;
    result.lambda = lambda;
    result.f0 = height;
    const double scale = std::exp(-std::log(mass_s) / s);
    result.profile.resize(prob.cells() + 1);
    for (int k = 0; k <= prob.cells(); ++k)
        result.profile[k] =
            scale * std::max(0.0, hermite_eval(samples, prob.node_r(k), false));
    return result;
}

ContinuationReport continuation(const RadialProblem& prob,
                                const std::vector<double>& s_list,
                                const SolveOptions& opts) {
    for (std::size_t i = 0; i + 1 < s_list.size(); ++i)
        if (!(s_list[i] < s_list[i + 1]))
            throw DomainError("continuation: s_list must be ascending");
    const double p = prob.exponents().p;
    for (double s : s_list)
        if (!(s > 2.0) || s > p)
            throw DomainError("continuation: every s must lie in (2, p]");

    ContinuationReport report;
    report.sphere_constant = yamabe_sphere_constant(prob.exponents().d);
    std::optional<std::vector<double>> warm;
    for (double s : s_list) {
        ContinuationEntry entry;
        entry.s = s;
        entry.warm_started = warm.has_value();
        try {
            auto rep = minimize_subcritical(prob, s, opts, warm, true);
            entry.lambda_s = rep.lambda_s;
            entry.residual = rep.final_residual;
            entry.converged = true;
            entry.iterations = rep.iterations;
            warm = rep.profile;
        } catch (const NonConvergenceError& e) {
            entry.lambda_s = e.report.lambda_s;
            entry.residual = e.report.final_residual;
            entry.converged = false;
            entry.iterations = e.report.iterations;
            warm = e.report.profile; // still the best available start
        }
        entry.subcritical = entry.lambda_s < report.sphere_constant;
        report.entries.push_back(entry);
    }
    return report;
}

Field profile_to_field(const RadialProblem& prob,
                       const std::vector<double>& profile) {
    const int K = prob.cells();
    if (profile.size() != static_cast<std::size_t>(K + 1) &&
        profile.size() != static_cast<std::size_t>(K))
        throw DomainError("profile_to_field: profile has wrong size");
    std::vector<double> shells(K);
    for (int k = 0; k < K; ++k) {
        const double next =
            (static_cast<std::size_t>(k + 1) < profile.size()) ? profile[k + 1] : 0.0;
        shells[k] = 0.5 * (profile[k] + next);
    }
    return Field(
        ManifoldFactor::homogeneous(prob.volume_m(), prob.scalar_curvature()),
        EuclideanFactor::radial(prob.exponents().n, prob.r_max(), K),
        std::move(shells));
}

} // namespace yamabe
