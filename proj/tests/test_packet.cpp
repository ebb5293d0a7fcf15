#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "revivals/correlation.hpp"
#include "revivals/evolution.hpp"
#include "revivals/observables.hpp"
#include "revivals/packet.hpp"
#include "revivals/timescales.hpp"

using namespace revivals;

TEST_CASE("initial moments of the default packet")
{
    const WellSystem sys;
    const PacketSpec spec = PacketSpec::with_alpha(400, 0.5, 1.0 / (10.0 * std::sqrt(2.0)));
    const auto m = initial_moments(spec, sys);
    CHECK(m.dx0 == doctest::Approx(0.05).epsilon(1e-14));
    CHECK(m.dp0 == doctest::Approx(10.0).epsilon(1e-14));
    CHECK(m.dx0 * m.dp0 == doctest::Approx(0.5).epsilon(1e-14));

    const auto doubled = initial_moments(PacketSpec::with_alpha(400, 0.5, 2.0 / (10.0 * std::sqrt(2.0))), sys);
    CHECK(doubled.dx0 == doctest::Approx(2.0 * m.dx0));
    CHECK(doubled.dp0 == doctest::Approx(0.5 * m.dp0));

    CHECK(level_spread(PacketSpec{}, sys) == doctest::Approx(10.0 / std::numbers::pi).epsilon(1e-14));
}

TEST_CASE("default packet: window, normalization, symmetry")
{
    const WellSystem sys;
    const auto e = build_gaussian_packet(PacketSpec{}, sys);
    CHECK(e.window() == IndexWindow{375, 425});
    CHECK(!e.truncated_at_ground());

    double total = 0.0;
    for (double w : e.weights()) {
        total += w;
    }
    CHECK(std::abs(total - 1.0) < 1e-14);

    const auto c = e.coefficients();
    const std::size_t centre = 400 - e.n_min();
    for (std::size_t i = 0; i < c.size(); ++i) {
        CHECK(std::abs(c[i]) <= std::abs(c[centre]));
    }
    for (std::size_t k = 1; k <= 25; ++k) {
        CHECK(std::abs(std::abs(c[centre + k]) - std::abs(c[centre - k])) < 1e-12);
    }
}

TEST_CASE("default packet momentum spread via matrix elements")
{
    const WellSystem sys;
    const auto e = build_gaussian_packet(PacketSpec{}, sys);
    const auto table = build_matrix_elements(e.window(), sys);
    const double dp = uncertainty(e, table, Quantity::momentum, 0.0);
    CHECK(dp == doctest::Approx(10.0).epsilon(0.01));
}

TEST_CASE("grid width agrees with dx0 for narrow packets")
{
    const WellSystem sys;
    const auto grid = SpatialGrid::uniform(sys, 8192);
    for (double dx0 : {0.02, 0.05, 0.1}) {
        const auto e = build_gaussian_packet(PacketSpec::with_width(400, 0.5, dx0), sys);
        const auto rho = probability_density(position_wavefunction(e, grid, 0.0));
        std::vector<double> m1(rho.size()), m2(rho.size());
        for (std::size_t i = 0; i < rho.size(); ++i) {
            const double x = grid.points()[i];
            m1[i] = x * rho[i];
            m2[i] = x * x * rho[i];
        }
        const double mean = trapezoid(m1, grid.spacing());
        const double var = trapezoid(m2, grid.spacing()) - mean * mean;
        CHECK(std::sqrt(var) == doctest::Approx(dx0).epsilon(0.02));
    }
}

TEST_CASE("construction is deterministic")
{
    const WellSystem sys;
    const auto a = build_gaussian_packet(PacketSpec{}, sys);
    const auto b = build_gaussian_packet(PacketSpec{}, sys);
    REQUIRE(a.size() == b.size());
    CHECK(std::equal(a.coefficients().begin(), a.coefficients().end(), b.coefficients().begin()));
}

TEST_CASE("truncation at the ground state is flagged")
{
    const WellSystem sys;
    // dn = 1/(pi alpha sqrt 2) ~ 6.4 for dx0 = 0.025; n0 = 10 clips the window.
    const auto e = build_gaussian_packet(PacketSpec::with_width(10, 0.5, 0.025), sys);
    CHECK(e.n_min() == 1);
    CHECK(e.truncated_at_ground());
    CHECK(e.discarded_weight() > 1e-8);

    const auto deep = build_gaussian_packet(PacketSpec::with_width(400, 0.5, 0.05), sys);
    CHECK(deep.discarded_weight() == 0.0);
}

TEST_CASE("invalid specs and coefficient lists")
{
    const WellSystem sys;
    CHECK_THROWS_AS(build_gaussian_packet(PacketSpec::with_width(0, 0.5, 0.05), sys), std::invalid_argument);
    CHECK_THROWS_AS(build_gaussian_packet(PacketSpec::with_width(400, 0.5, -1.0), sys), std::invalid_argument);
    CHECK_THROWS_AS(build_gaussian_packet(PacketSpec::with_width(400, 1.5, 0.05), sys), std::invalid_argument);
    CHECK_THROWS_AS(EigenExpansion(1, {}, sys), std::invalid_argument);
    CHECK_THROWS_AS(EigenExpansion(1, {0.0, 0.0}, sys), std::invalid_argument);

    PacketSpec both;
    both.alpha = 0.1;
    CHECK_THROWS_AS(both.validate(sys), std::invalid_argument);
}

TEST_CASE("arbitrary coefficients are renormalized")
{
    const WellSystem sys;
    const EigenExpansion e(3, {{3.0, 0.0}, {0.0, 4.0}}, sys);
    CHECK(e.weights()[0] == doctest::Approx(9.0 / 25.0));
    CHECK(e.weights()[1] == doctest::Approx(16.0 / 25.0));
    CHECK(e.energies()[1] == doctest::Approx(16.0 * std::numbers::pi * std::numbers::pi));
}

TEST_CASE("widening the truncation window from 8 to 12 sigmas")
{
    const WellSystem sys;
    const double p0 = 400 * std::numbers::pi;
    auto build = [&](double w) { return build_gaussian_packet(PacketSpec::with_width(400, 0.5, 0.05, w), sys); };
    const auto narrow = build(8.0);
    const auto mid = build(10.0);
    const auto wide = build(12.0);
    REQUIRE(wide.size() > mid.size());
    REQUIRE(mid.size() > narrow.size());
    const auto tn = build_matrix_elements(narrow.window(), sys);
    const auto tm = build_matrix_elements(mid.window(), sys);
    const auto tw = build_matrix_elements(wide.window(), sys);
    const double T = revival_time(sys);
    const double tau = compute_timescales(sys, PacketSpec{}).tau;

    for (double t : {0.0, 0.3 * tau, T / 4, T / 2, 100 * tau, 124 * tau, T}) {
        CHECK(std::abs(autocorrelation(narrow, t) - autocorrelation(wide, t)) < 1e-10);
        CHECK(std::abs(mirror_correlation(narrow, t) - mirror_correlation(wide, t)) < 1e-10);
        const auto a = moments(narrow, tn, t);
        const auto b = moments(wide, tw, t);
        CHECK(std::abs(a.x_mean - b.x_mean) < 1e-10);
        CHECK(std::abs(a.x_spread - b.x_spread) < 1e-10);
        // Tail amplitudes ~1e-7 at 8 sigmas couple to the centre through p_mn ~ n0/|m-n|,
        // so momentum moments converge only to ~1e-9 p0 at W = 8, and to 1e-10 p0 by W = 10.
        CHECK(std::abs(a.p_mean - b.p_mean) < 1e-9 * p0);
        CHECK(std::abs(a.p_spread - b.p_spread) < 1e-9 * p0);
        const auto c = moments(mid, tm, t);
        CHECK(std::abs(c.p_mean - b.p_mean) < 1e-10 * p0);
        CHECK(std::abs(c.p_spread - b.p_spread) < 1e-10 * p0);
    }
    CHECK(std::abs(fit_collapse(narrow, tau).collapse_time - fit_collapse(wide, tau).collapse_time) < 1e-10);
}
