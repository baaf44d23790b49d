#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "yamabe/errors.hpp"
#include "yamabe/exponents.hpp"
#include "yamabe/factors.hpp"
#include "yamabe/field.hpp"
#include "yamabe/random_field.hpp"

using namespace yamabe;

namespace {

Field line_field(double volume, double curvature, int half_extent, double spacing,
                 std::vector<double> values) {
    return Field(ManifoldFactor::homogeneous(volume, curvature),
                 EuclideanFactor::line1d(half_extent, spacing), std::move(values));
}

} // namespace

TEST_CASE("conformal exponents") {
    auto ce = conformal_exponents(2, 1);
    CHECK(ce.d == 3);
    CHECK(ce.a == doctest::Approx(8.0).epsilon(1e-15));
    CHECK(ce.p == doctest::Approx(6.0).epsilon(1e-15));

    ce = conformal_exponents(2, 2);
    CHECK(ce.d == 4);
    CHECK(ce.a == doctest::Approx(6.0).epsilon(1e-15));
    CHECK(ce.p == doctest::Approx(4.0).epsilon(1e-15));

    CHECK_THROWS_AS(conformal_exponents(1, 3), DimensionError);
    CHECK_THROWS_AS(conformal_exponents(2, 0), DimensionError);
}

TEST_CASE("manifold factor invariants") {
    auto hom = ManifoldFactor::homogeneous(2.0, 1.5);
    CHECK(hom.node_count() == 1);
    CHECK(hom.volume() == 2.0);
    CHECK(hom.scalar_curvature(0) == 1.5);
    CHECK_THROWS_AS(ManifoldFactor::homogeneous(0.0, 1.0), DomainError);

    auto graph = ManifoldFactor::weighted_graph({1.0, 2.0, 0.5}, {1.0, 2.0, 3.0},
                                                {{0, 1, 1.0}, {1, 2, 0.5}});
    CHECK(graph.node_count() == 3);
    CHECK(graph.volume() == doctest::Approx(3.5).epsilon(1e-15));

    // negative weight
    CHECK_THROWS_AS(ManifoldFactor::weighted_graph({1.0, -1.0}, {0.0, 0.0}, {}),
                    DomainError);
    // curvature list length mismatch
    CHECK_THROWS_AS(ManifoldFactor::weighted_graph({1.0, 1.0}, {0.0}, {}),
                    DomainError);
    // self loop
    CHECK_THROWS_AS(
        ManifoldFactor::weighted_graph({1.0, 1.0}, {0.0, 0.0}, {{0, 0, 1.0}}),
        DomainError);
    // bad endpoint
    CHECK_THROWS_AS(
        ManifoldFactor::weighted_graph({1.0, 1.0}, {0.0, 0.0}, {{0, 2, 1.0}}),
        DomainError);
    // nonpositive conductance
    CHECK_THROWS_AS(
        ManifoldFactor::weighted_graph({1.0, 1.0}, {0.0, 0.0}, {{0, 1, 0.0}}),
        DomainError);
}

TEST_CASE("euclidean factor geometry") {
    auto line = EuclideanFactor::line1d(2, 0.5);
    CHECK(line.cell_count() == 5);
    CHECK(line.cell_volume(0) == 0.5);
    CHECK(line.cell_center(0) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(line.cell_center(2) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK_THROWS_AS(EuclideanFactor::line1d(0, 1.0), DomainError);
    CHECK_THROWS_AS(EuclideanFactor::line1d(2, 0.0), DomainError);

    auto radial = EuclideanFactor::radial(2, 1.0, 10);
    CHECK(radial.cell_count() == 10);
    double sum = 0.0;
    for (std::size_t k = 0; k < radial.cell_count(); ++k)
        sum += radial.cell_volume(k);
    CHECK(sum == doctest::Approx(std::numbers::pi).epsilon(1e-13));
    // shell volumes are omega_n (r_k^n - r_{k-1}^n)
    CHECK(radial.cell_volume(0) ==
          doctest::Approx(std::numbers::pi * 0.01).epsilon(1e-13));
    CHECK(radial.cell_volume(9) ==
          doctest::Approx(std::numbers::pi * (1.0 - 0.81)).epsilon(1e-13));

    auto radial1 = EuclideanFactor::radial(1, 3.0, 6);
    sum = 0.0;
    for (std::size_t k = 0; k < radial1.cell_count(); ++k)
        sum += radial1.cell_volume(k);
    CHECK(sum == doctest::Approx(6.0).epsilon(1e-13)); // omega_1 r^1 = 2*3
}

TEST_CASE("field construction rejects bad values") {
    auto m = ManifoldFactor::homogeneous(1.0, 1.0);
    auto e = EuclideanFactor::line1d(1, 1.0);
    CHECK_THROWS_AS(Field(m, e, {0.0, -1.0, 0.0}), DomainError);
    CHECK_THROWS_AS(Field(m, e, {0.0, std::nan(""), 0.0}), DomainError);
    CHECK_THROWS_AS(Field(m, e, {0.0, 1.0}), DomainError); // wrong size
}

TEST_CASE("total volume") {
    CHECK(total_volume(ManifoldFactor::homogeneous(1.0, 0.0),
                       EuclideanFactor::line1d(1, 1.0)) ==
          doctest::Approx(3.0).epsilon(1e-15));
    CHECK(total_volume(ManifoldFactor::homogeneous(2.0, 0.0),
                       EuclideanFactor::line1d(2, 0.5)) ==
          doctest::Approx(5.0).epsilon(1e-15));
    CHECK(total_volume(ManifoldFactor::homogeneous(1.0, 0.0),
                       EuclideanFactor::radial(2, 1.0, 7)) ==
          doctest::Approx(std::numbers::pi).epsilon(1e-13));
}

TEST_CASE("lp norm") {
    auto u = Field::constant(ManifoldFactor::homogeneous(2.0, 0.0),
                             EuclideanFactor::line1d(1, 1.0), 1.0);
    CHECK(lp_norm(u, 2.0) == doctest::Approx(std::sqrt(6.0)).epsilon(1e-14));

    auto spike = line_field(2.0, 0.0, 1, 1.0, {0.0, 2.0, 0.0});
    CHECK(lp_norm(spike, 1.0) == doctest::Approx(4.0).epsilon(1e-14));

    auto hat = line_field(1.0, 0.0, 2, 1.0, {0.0, 1.0, 2.0, 1.0, 0.0});
    CHECK(lp_norm(hat, 2.0) == doctest::Approx(std::sqrt(6.0)).epsilon(1e-14));

    CHECK_THROWS_AS(lp_norm(hat, 0.5), DomainError);
}

TEST_CASE("lp norm homogeneity") {
    std::mt19937_64 rng(20240517);
    for (int t = 0; t < 50; ++t) {
        auto m = (t % 2 == 0) ? random_homogeneous(rng)
                              : random_weighted_graph(rng, 6);
        auto u = random_line_field(rng, m, uniform_int(rng, 2, 16),
                                   uniform_range(rng, 0.25, 1.0));
        double c = uniform_range(rng, 0.0, 5.0);
        double s = uniform_range(rng, 1.0, 6.0);
        std::vector<double> scaled(u.values());
        for (auto& v : scaled) v *= c;
        Field cu(u.manifold_ptr(), u.euclidean_ptr(), std::move(scaled));
        double lhs = lp_norm(cu, s);
        double rhs = c * lp_norm(u, s);
        CHECK(std::abs(lhs - rhs) <= 1e-13 * std::max(1.0, rhs));
    }
}

TEST_CASE("grad lp norm") {
    auto bump = line_field(1.0, 0.0, 1, 1.0, {0.0, 1.0, 0.0});
    CHECK(grad_lp_norm(bump, 2.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));

    auto flat = Field::constant(ManifoldFactor::homogeneous(1.5, 0.0),
                                EuclideanFactor::line1d(3, 0.5), 2.5);
    CHECK(grad_lp_norm(flat, 1.0) == 0.0);
    CHECK(grad_lp_norm(flat, 3.0) == 0.0);

    auto spike = line_field(1.0, 0.0, 2, 1.0, {0.0, 2.0, 0.0, 0.0, 0.0});
    CHECK(grad_lp_norm(spike, 1.0) == doctest::Approx(4.0).epsilon(1e-14));

    CHECK_THROWS_AS(grad_lp_norm(spike, 0.0), DomainError);
}

TEST_CASE("grad vanishes iff constant on connected factors") {
    std::mt19937_64 rng(777);
    for (int t = 0; t < 30; ++t) {
        auto m = random_weighted_graph(rng, 5);
        auto u = random_line_field(rng, m, 4, 0.5);
        bool constant = true;
        for (std::size_t i = 0; i + 1 < u.values().size(); ++i)
            constant = constant && (u.values()[i] == u.values()[i + 1]);
        double g = grad_lp_norm(u, 2.0);
        if (constant)
            CHECK(g == 0.0);
        else
            CHECK(g > 0.0);
    }
    // graph direction alone separates fibers
    auto graph = ManifoldFactor::weighted_graph({1.0, 1.0}, {0.0, 0.0}, {{0, 1, 2.0}});
    Field two_level(graph, EuclideanFactor::line1d(1, 1.0),
                    {1.0, 1.0, 1.0, 3.0, 3.0, 3.0});
    // M-part: c |u_i - u_j|^2 * vol_k summed over 3 cells = 2*4*3 = 24
    CHECK(grad_lp_norm(two_level, 2.0) == doctest::Approx(std::sqrt(24.0)).epsilon(1e-13));
}

TEST_CASE("mass profile") {
    auto u = Field::constant(ManifoldFactor::homogeneous(1.0, 0.0),
                             EuclideanFactor::line1d(2, 1.0), 1.0);
    auto frac = mass_profile(u, 1.0, {1.5});
    CHECK(frac.size() == 1);
    CHECK(frac[0] == doctest::Approx(0.6).epsilon(1e-14));

    // support inside B_1, radius 2 captures all mass
    auto inner = line_field(1.0, 0.0, 3, 0.5, {0, 0, 1, 2, 1, 0, 0});
    CHECK(mass_profile(inner, 2.0, {2.0})[0] == doctest::Approx(1.0).epsilon(1e-14));

    // radius below the support of an off-center field captures nothing
    auto off = line_field(1.0, 0.0, 2, 1.0, {0, 0, 0, 1, 0});
    CHECK(mass_profile(off, 1.0, {0.0})[0] == 0.0);

    auto zero = Field::constant(ManifoldFactor::homogeneous(1.0, 0.0),
                                EuclideanFactor::line1d(2, 1.0), 0.0);
    CHECK_THROWS_AS(mass_profile(zero, 1.0, {1.0}), DomainError);
    CHECK_THROWS_AS(mass_profile(u, 1.0, {2.0, 1.0}), DomainError);
}

TEST_CASE("mass profile is nondecreasing and exhausts the grid") {
    std::mt19937_64 rng(31337);
    for (int t = 0; t < 25; ++t) {
        auto m = random_homogeneous(rng);
        int half = uniform_int(rng, 2, 16);
        double h = uniform_range(rng, 0.25, 1.0);
        auto u = random_line_field(rng, m, half, h);
        if (lp_norm(u, 1.0) == 0.0) continue;
        std::vector<double> radii;
        for (int i = 1; i <= 8; ++i)
            radii.push_back(half * h * i / 7.0); // last one covers the grid
        auto frac = mass_profile(u, 1.0, radii);
        for (std::size_t i = 0; i + 1 < frac.size(); ++i)
            CHECK(frac[i] <= frac[i + 1] + 1e-15);
        CHECK(frac.back() == doctest::Approx(1.0).epsilon(1e-13));
    }
}

TEST_CASE("operations are pure") {
    auto u = line_field(1.3, 0.7, 2, 0.5, {0.0, 0.25, 1.5, 0.75, 0.0});
    double n1 = lp_norm(u, 2.5);
    double g1 = grad_lp_norm(u, 2.5);
    for (int i = 0; i < 3; ++i) {
        CHECK(lp_norm(u, 2.5) == n1);
        CHECK(grad_lp_norm(u, 2.5) == g1);
    }
}
