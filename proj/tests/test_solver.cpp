#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "yamabe/errors.hpp"
#include "yamabe/exponents.hpp"
#include "yamabe/field.hpp"
#include "yamabe/functional.hpp"
#include "yamabe/solver.hpp"

using namespace yamabe;

namespace {

constexpr double pi = std::numbers::pi;

// For n = 1 the ground state of -a f'' + S f = f^{s-1} is
// f(r) = A sech^{2/(s-2)}(gamma r) with A = (s S / 2)^{1/(s-2)} and
// gamma = (s-2)/2 * sqrt(S/a).  With the weighted measure V_M * 2 * dr the
// normalized equation value is lambda_s = ||f||_s^{s-2}, and
// integral_0^inf sech^q = (sqrt(pi)/2) Gamma(q/2) / Gamma((q+1)/2).
double closed_form_lambda(double volume_m, double curvature, double a, double s) {
    const double amp = std::pow(s * curvature / 2.0, 1.0 / (s - 2.0));
    const double gamma = 0.5 * (s - 2.0) * std::sqrt(curvature / a);
    const double q = 2.0 * s / (s - 2.0);
    const double sech_integral = 0.5 * std::sqrt(pi) * std::tgamma(0.5 * q) /
                                 std::tgamma(0.5 * (q + 1.0));
    const double mass_s =
        volume_m * 2.0 * std::pow(amp, s) * sech_integral / gamma;
    return std::pow(mass_s, (s - 2.0) / s);
}

RadialProblem reference_problem(int cells, double r_max = 12.0) {
    return RadialProblem(ManifoldFactor::homogeneous(4.0 * pi, 2.0),
                         conformal_exponents(2, 1), r_max, cells);
}

// Rayleigh machinery rebuilt from the public accessors, for identities the
// solver must satisfy but should not certify about itself.
double quadrature_mass(const RadialProblem& prob, const std::vector<double>& f,
                       double s) {
    double acc = 0.0;
    for (int k = 0; k < prob.cells(); ++k)
        acc += prob.node_volume(k) * std::pow(f[k], s);
    return acc;
}

double quadrature_energy(const RadialProblem& prob, const std::vector<double>& f) {
    double acc = 0.0;
    for (int k = 0; k < prob.cells(); ++k) {
        const double next = (k + 1 < prob.cells()) ? f[k + 1] : 0.0;
        acc += prob.conductance(k) * (next - f[k]) * (next - f[k]);
    }
    return prob.exponents().a * acc +
           prob.scalar_curvature() * quadrature_mass(prob, f, 2.0);
}

double rayleigh_quotient(const RadialProblem& prob, const std::vector<double>& f,
                         double s) {
    return quadrature_energy(prob, f) /
           std::pow(quadrature_mass(prob, f, s), 2.0 / s);
}

} // namespace

TEST_CASE("radial problem validation") {
    const auto ce = conformal_exponents(2, 1);
    CHECK_THROWS_AS(RadialProblem(ManifoldFactor::homogeneous(1.0, -2.0), ce,
                                  10.0, 100),
                    DomainError);
    CHECK_THROWS_AS(RadialProblem(ManifoldFactor::weighted_graph(
                                      {1.0, 1.0}, {1.0, 1.0}, {{0, 1, 1.0}}),
                                  ce, 10.0, 100),
                    DomainError);
    CHECK_THROWS_AS(RadialProblem(ManifoldFactor::homogeneous(1.0, 2.0), ce,
                                  10.0, 8),
                    DomainError);
    CHECK_THROWS_AS(RadialProblem(ManifoldFactor::homogeneous(1.0, 2.0), ce,
                                  -1.0, 100),
                    DomainError);

    // finite-volume node weights integrate V_M sigma_{n-1} r^{n-1} exactly
    auto prob = reference_problem(100, 10.0);
    double total = 0.0;
    for (int k = 0; k < prob.cells(); ++k) total += prob.node_volume(k);
    const double expected = 4.0 * pi * 2.0 * (10.0 - 0.05); // up to r_max - dr/2
    CHECK(total == doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("shooting oracle matches the closed form for n = 1") {
    for (double s : {4.0, 5.0}) {
        // wide domain: the closed form lives on all of R, and the quadrature
        // is truncated at r_max (tail ~ e^{-r_max})
        auto prob = reference_problem(800, 30.0);
        auto shot = shoot_radial(prob, s, 1.0);
        const double exact = closed_form_lambda(4.0 * pi, 2.0, 8.0, s);
        CHECK(shot.lambda == doctest::Approx(exact).epsilon(1e-7));
        // the bracketed height is the energy threshold (s S / 2)^{1/(s-2)}
        const double threshold = std::pow(s * 2.0 / 2.0, 1.0 / (s - 2.0));
        CHECK(shot.f0 == doctest::Approx(threshold).epsilon(1e-8));
        // profile comes back normalized against the continuum measure
        CHECK(quadrature_mass(prob, shot.profile, s) ==
              doctest::Approx(1.0).epsilon(1e-3));
        for (std::size_t k = 0; k + 1 < shot.profile.size(); ++k)
            CHECK(shot.profile[k + 1] <= shot.profile[k] * (1 + 1e-12) + 1e-15);
    }
    CHECK_THROWS_AS(shoot_radial(reference_problem(100), 5.0, -1.0), DomainError);
}

TEST_CASE("scaling law of the quotient and the equation value") {
    auto prob = reference_problem(200, 10.0);
    auto shot = shoot_radial(prob, 5.0, 1.0);
    std::vector<double> doubled(shot.profile);
    for (double& x : doubled) x *= 2.0;
    // Q_s is scale invariant
    CHECK(rayleigh_quotient(prob, doubled, 5.0) ==
          doctest::Approx(rayleigh_quotient(prob, shot.profile, 5.0))
              .epsilon(1e-13));
    // the Rayleigh ratio energy/||u||_s^s obeys lambda(c u) = c^{2-s} lambda(u)
    const double l1 = quadrature_energy(prob, shot.profile) /
                      quadrature_mass(prob, shot.profile, 5.0);
    const double l2 =
        quadrature_energy(prob, doubled) / quadrature_mass(prob, doubled, 5.0);
    CHECK(l2 == doctest::Approx(std::pow(2.0, 2.0 - 5.0) * l1).epsilon(1e-13));
}

TEST_CASE("subcritical minimization on a coarse grid") {
    auto prob = reference_problem(320, 10.0);
    SolveOptions opts;
    opts.tol = 1e-8;
    auto rep = minimize_subcritical(prob, 5.0, opts);

    CHECK(rep.final_residual <= opts.tol);
    CHECK(std::abs(rep.norm_check - 1.0) <= 1e-12);
    CHECK(rep.lambda_s == doctest::Approx(rep.final_quotient).epsilon(1e-15));

    // second-order discretization: the coarse grid sits within half a percent
    const double exact = closed_form_lambda(4.0 * pi, 2.0, 8.0, 5.0);
    CHECK(rep.lambda_s == doctest::Approx(exact).epsilon(5e-3));

    // minimizer profile is radially nonincreasing
    for (std::size_t k = 0; k + 1 < rep.profile.size(); ++k)
        CHECK(rep.profile[k + 1] <= rep.profile[k] + 1e-14);

    // quotient trace decreases monotonically; near the stop tolerance the
    // re-rounded iterate can wobble by a few ulps, which is exactly the
    // resolution of the 1e-12 relative stop rule
    for (std::size_t i = 0; i + 1 < rep.quotient_trace.size(); ++i)
        CHECK(rep.quotient_trace[i + 1] <=
              rep.quotient_trace[i] * (1.0 + 1e-12));
    CHECK(rep.quotient_trace.back() < rep.quotient_trace.front());

    // mass concentrates near the origin
    auto field = profile_to_field(prob, rep.profile);
    CHECK(mass_profile(field, 5.0, {5.0})[0] >= 0.999);

    // boundary carries almost nothing
    CHECK(rep.boundary_mass < 1e-6);
}

TEST_CASE("minimize input validation") {
    auto prob = reference_problem(64, 8.0);
    CHECK_THROWS_AS(minimize_subcritical(prob, 2.0), DomainError);
    CHECK_THROWS_AS(minimize_subcritical(prob, 6.0), DomainError); // p itself
    CHECK_THROWS_AS(minimize_subcritical(prob, 7.0), DomainError);

    std::vector<double> zeros(65, 0.0);
    CHECK_THROWS_AS(minimize_subcritical(prob, 5.0, {}, zeros), DomainError);
    std::vector<double> wrong(10, 1.0);
    CHECK_THROWS_AS(minimize_subcritical(prob, 5.0, {}, wrong), DomainError);

    SolveOptions strict;
    strict.tol = 1e-10;
    strict.max_iter = 1;
    CHECK_THROWS_AS(minimize_subcritical(prob, 5.0, strict), NonConvergenceError);
    try {
        minimize_subcritical(prob, 5.0, strict);
    } catch (const NonConvergenceError& e) {
        CHECK(e.report.iterations == 1);
        CHECK(e.report.final_residual > strict.tol);
    }
}

TEST_CASE("continuation warm starts and flags subcriticality") {
    auto prob = reference_problem(320, 10.0);
    SolveOptions opts;
    opts.tol = 1e-8;
    auto rep = continuation(prob, {4.5, 5.0, 5.5}, opts);
    REQUIRE(rep.entries.size() == 3);
    CHECK(rep.sphere_constant == doctest::Approx(43.823).epsilon(1e-4));
    for (const auto& entry : rep.entries) {
        CHECK(entry.converged);
        CHECK(entry.subcritical); // lambda_s < Y_3 throughout
        CHECK(entry.lambda_s < rep.sphere_constant);
    }
    CHECK_FALSE(rep.entries[0].warm_started);
    CHECK(rep.entries[1].warm_started);

    // a warm start from the previous exponent beats the cold Gaussian start
    auto cold = minimize_subcritical(prob, 5.0, opts);
    CHECK(rep.entries[1].iterations < cold.iterations);

    CHECK_THROWS_AS(continuation(prob, {5.0, 4.5}, opts), DomainError);
    CHECK_THROWS_AS(continuation(prob, {5.0, 6.5}, opts), DomainError);
}

TEST_CASE("solves are deterministic") {
    auto prob = reference_problem(128, 8.0);
    SolveOptions opts;
    opts.tol = 1e-8;
    auto a = minimize_subcritical(prob, 4.5, opts);
    auto b = minimize_subcritical(prob, 4.5, opts);
    CHECK(a.profile == b.profile); // bitwise
    CHECK(a.lambda_s == b.lambda_s);
    CHECK(a.iterations == b.iterations);
    CHECK(a.quotient_trace == b.quotient_trace);

    auto sa = shoot_radial(prob, 4.5, 1.0);
    auto sb = shoot_radial(prob, 4.5, 1.0);
    CHECK(sa.profile == sb.profile);
    CHECK(sa.lambda == sb.lambda);
}

TEST_CASE("continuation records non-convergent entries without aborting") {
    auto prob = reference_problem(64, 8.0);
    SolveOptions hopeless;
    hopeless.tol = 1e-30; // below the double-precision iterate floor
    hopeless.max_iter = 60;
    auto rep = continuation(prob, {4.0, 5.0}, hopeless);
    REQUIRE(rep.entries.size() == 2);
    for (const auto& entry : rep.entries) {
        CHECK_FALSE(entry.converged);
        CHECK(entry.lambda_s > 0.0); // best value so far is still reported
        CHECK(entry.residual > hopeless.tol);
    }
    // the sweep still warm-starts from the partial profile
    CHECK(rep.entries[1].warm_started);
}

TEST_CASE("grid refinement shrinks the discretization error at second order") {
    // successive differences at fixed r_max cancel the common truncation
    // error and expose the pure O(h^2) term; the acceptance suite rides the
    // production ladder
    SolveOptions opts;
    opts.tol = 1e-9;
    std::vector<double> lambdas;
    for (int cells : {150, 300, 600})
        lambdas.push_back(
            minimize_subcritical(reference_problem(cells, 10.0), 5.0, opts)
                .lambda_s);
    const double ratio =
        std::abs(lambdas[0] - lambdas[1]) / std::abs(lambdas[1] - lambdas[2]);
    CHECK(ratio > 3.0);
    CHECK(ratio < 5.0);
}
