#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "oracles.hpp"
#include "revivals/core_model.hpp"
#include "revivals/errors.hpp"
#include "revivals/evolution.hpp"
#include "revivals/observables.hpp"
#include "revivals/packet.hpp"
#include "revivals/timescales.hpp"

using namespace revivals;
using std::numbers::pi;

namespace {

const WellSystem sys;

const EigenExpansion& packet()
{
    static const EigenExpansion e = build_gaussian_packet(PacketSpec{}, sys);
    return e;
}

const MatrixElementTable& table()
{
    static const MatrixElementTable t = build_matrix_elements(packet().window(), sys);
    return t;
}

std::complex<double> element_oracle(Operator op, int m, int n, const WellSystem& s)
{
    const double L = s.width;
    const int panels = 8 + (m + n) / 2;
    auto um = [&](double x) { return oracle::box_state(m, x, L); };
    switch (op) {
    case Operator::position:
        return oracle::real_integral([&](double x) { return um(x) * x * oracle::box_state(n, x, L); }, 0.0, L, panels);
    case Operator::position_squared:
        return oracle::real_integral([&](double x) { return um(x) * x * x * oracle::box_state(n, x, L); }, 0.0, L,
                                     panels);
    case Operator::momentum: {
        const double k = n * pi / L;
        const double v = oracle::real_integral(
            [&](double x) { return um(x) * std::sqrt(2.0 / L) * k * std::cos(k * x); }, 0.0, L, panels);
        return {0.0, -s.hbar * v};
    }
    case Operator::momentum_squared: {
        const double k = n * pi / L;
        const double v = oracle::real_integral([&](double x) { return um(x) * k * k * oracle::box_state(n, x, L); },
                                               0.0, L, panels);
        return s.hbar * s.hbar * v;
    }
    }
    return {};
}

}  // namespace

TEST_CASE("matrix element closed forms")
{
    const auto t = build_matrix_elements({1, 40}, sys);
    for (int n = 1; n <= 40; ++n) {
        CHECK(t.element(Operator::position, n, n).real() == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(t.element(Operator::momentum_squared, n, n).real() ==
              doctest::Approx(n * n * pi * pi).epsilon(1e-14));
    }
    CHECK(std::abs(t.element(Operator::position, 3, 7)) == 0.0);
    CHECK(std::abs(t.element(Operator::momentum, 2, 10)) == 0.0);

    const double x12 = oracle::real_integral(
        [](double x) { return 2.0 * x * std::sin(pi * x) * std::sin(2.0 * pi * x); }, 0.0, 1.0, 10);
    CHECK(std::abs(t.element(Operator::position, 1, 2).real() - x12) < 1e-10);

    CHECK_THROWS_AS(t.element(Operator::position, 0, 3), std::out_of_range);
    CHECK_THROWS_AS(t.element(Operator::position, 3, 41), std::out_of_range);
    CHECK_THROWS_AS(build_matrix_elements({5, 3}, sys), std::invalid_argument);
}

TEST_CASE("200 random matrix elements vs quadrature")
{
    std::mt19937_64 rng(42);
    const WellSystem wide{0.7, 1.3, 1.7};
    const auto t = build_matrix_elements({1, 450}, wide);
    std::uniform_int_distribution<int> pick(1, 450);
    const Operator ops[] = {Operator::position, Operator::position_squared, Operator::momentum,
                            Operator::momentum_squared};
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const int m = pick(rng);
        // mix far-apart pairs with near-diagonal ones
        const int n = (i % 3 == 0) ? std::clamp(m + (i % 7) - 3, 1, 450) : pick(rng);
        const Operator op = ops[i % 4];
        const auto got = t.element(op, m, n);
        const auto want = element_oracle(op, m, n, wide);
        // absolute for x, x^2; relative to the diagonal scale for p, p^2
        double scale = 1.0;
        if (op == Operator::momentum) {
            scale = std::max(m, n) * pi * wide.hbar / wide.width;
        } else if (op == Operator::momentum_squared) {
            scale = std::pow(std::max(m, n) * pi * wide.hbar / wide.width, 2);
        }
        worst = std::max(worst, std::abs(got - want) / scale);
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("initial moments of the default packet")
{
    CHECK(expectation(packet(), table(), Operator::position, 0.0) == doctest::Approx(0.5).epsilon(1e-3));
    CHECK(expectation(packet(), table(), Operator::momentum, 0.0) == doctest::Approx(400.0 * pi).epsilon(1e-3));
    CHECK(uncertainty(packet(), table(), Quantity::position, 0.0) == doctest::Approx(0.05).epsilon(0.02));
    CHECK(uncertainty(packet(), table(), Quantity::momentum, 0.0) == doctest::Approx(10.0).epsilon(0.02));
    const auto s = moments(packet(), table(), 0.0);
    CHECK(s.time == 0.0);
    CHECK(s.x_spread == doctest::Approx(uncertainty(packet(), table(), Quantity::position, 0.0)));
}

TEST_CASE("packet follows the classical orbit at early times")
{
    const auto scales = compute_timescales(sys, PacketSpec{});
    for (int n = 0; n <= 2; ++n) {
        const double x = expectation(packet(), table(), Operator::position, (n + 0.125) * scales.tau);
        CHECK(x == doctest::Approx(0.75).epsilon(0.02));
    }
}

TEST_CASE("collapsed phase at 124 tau")
{
    const auto scales = compute_timescales(sys, PacketSpec{});
    const auto s = moments(packet(), table(), 124.0 * scales.tau);
    CHECK(s.x_spread == doctest::Approx(1.0 / std::sqrt(12.0)).epsilon(0.05));
    CHECK(s.p_spread == doctest::Approx(400.0 * pi).epsilon(0.05));
    CHECK(std::abs(s.x_mean - 0.5) < 1e-2);

    // <p> at this stroboscopic instant is not zero: the collapsed phase keeps
    // fluctuating by up to ~p0/3. Reference value from an independent numpy
    // evaluation of the same sum (and of the grid derivative of psi).
    CHECK(s.p_mean == doctest::Approx(191.4234481015).epsilon(1e-9));
}

TEST_CASE("Ehrenfest: <p> = m d<x>/dt")
{
    const auto scales = compute_timescales(sys, PacketSpec{});
    for (double n : {0.3, 17.0, 124.0, 311.7}) {
        const double t = n * scales.tau;
        const double h = 1e-7;
        const double dxdt = (expectation(packet(), table(), Operator::position, t + h) -
                             expectation(packet(), table(), Operator::position, t - h)) /
                            (2.0 * h);
        CHECK(expectation(packet(), table(), Operator::momentum, t) ==
              doctest::Approx(sys.mass * dxdt).epsilon(1e-5).scale(400.0 * pi));
    }
}

TEST_CASE("stroboscopic <x> stays at the centre")
{
    const auto scales = compute_timescales(sys, PacketSpec{});
    const auto series = sample_series(packet(), table(), SeriesQuantity::x_mean,
                                      TimeSchedule::stroboscopic(scales.tau, 0, 800));
    CHECK(series.values.size() == 801);
    double worst = 0.0;
    for (double v : series.values) {
        worst = std::max(worst, std::abs(v - 0.5));
    }
    CHECK(worst < 1e-3);
    CHECK(series.observable == "x");
}

TEST_CASE("single-sample schedule")
{
    const auto series =
        sample_series(packet(), table(), SeriesQuantity::x_spread, TimeSchedule::explicit_times({0.0}));
    REQUIRE(series.values.size() == 1);
    CHECK(series.values[0] == uncertainty(packet(), table(), Quantity::position, 0.0));
}

TEST_CASE("width dips line up with wall collisions")
{
    const auto scales = compute_timescales(sys, PacketSpec{});
    const double tau = scales.tau;
    const auto series = sample_series(packet(), table(), SeriesQuantity::x_spread,
                                      TimeSchedule::dense(0.0, 10.0 * tau, 4001));
    int dips = 0;
    for (std::size_t i = 1; i + 1 < series.values.size(); ++i) {
        const auto& v = series.values;
        if (v[i] < v[i - 1] && v[i] < v[i + 1]) {
            ++dips;
            const double t = series.times[i];
            // collisions of a packet starting at L/2 moving right: (2k+1) tau / 4
            const double k = std::round((4.0 * t / tau - 1.0) / 2.0);
            const double nearest = (2.0 * k + 1.0) * tau / 4.0;
            CHECK(std::abs(t - nearest) < tau / 20.0);
        }
    }
    CHECK(dips >= 18);
}

TEST_CASE("grid moments agree with matrix elements")
{
    const double T = revival_time(sys);
    const auto g = SpatialGrid::uniform(sys);
    const auto m = MomentumGrid::for_packet(PacketSpec{}, sys);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> pick(0.0, T);
    for (int k = 0; k < 10; ++k) {
        const double t = pick(rng);
        const auto rho = probability_density(position_wavefunction(packet(), g, t));
        std::vector<double> fx(rho.size()), fx2(rho.size());
        for (std::size_t i = 0; i < rho.size(); ++i) {
            fx[i] = g.points()[i] * rho[i];
            fx2[i] = g.points()[i] * g.points()[i] * rho[i];
        }
        CHECK(std::abs(trapezoid(fx, g.spacing()) - expectation(packet(), table(), Operator::position, t)) < 1e-4);
        CHECK(std::abs(trapezoid(fx2, g.spacing()) -
                       expectation(packet(), table(), Operator::position_squared, t)) < 1e-4);

        const auto phi = probability_density(momentum_wavefunction(packet(), m, t));
        std::vector<double> fp(phi.size());
        for (std::size_t i = 0; i < phi.size(); ++i) {
            fp[i] = m.points()[i] * phi[i];
        }
        const double grid_p = trapezoid(fp, m.spacing()) / trapezoid(phi, m.spacing());
        CHECK(std::abs(grid_p - expectation(packet(), table(), Operator::momentum, t)) < 0.01 * 400.0 * pi);
    }
}

TEST_CASE("free-Gaussian envelope before the first collisions smear out")
{
    const auto scales = compute_timescales(sys, PacketSpec{});
    const double t0 = scales.spreading;
    const double v0 = 400.0 * pi / sys.mass;
    const auto series = sample_series(packet(), table(), SeriesQuantity::x_spread,
                                      TimeSchedule::dense(0.0, 3.0 * t0, 3001));
    int compared = 0;
    for (std::size_t i = 0; i < series.times.size(); ++i) {
        const double t = series.times[i];
        const double free = free_gaussian_spread(0.05, t0, t);
        if (t <= t0) {
            CHECK(series.values[i] <= free * 1.02);
        }
        const double centre = classical_trajectory(t, 0.5, v0, sys).position;
        if (centre >= 3.0 * free && centre <= 1.0 - 3.0 * free) {
            ++compared;
            CHECK(series.values[i] == doctest::Approx(free).epsilon(0.02));
        }
    }
    CHECK(compared > 300);
}

TEST_CASE("revival and half-revival return")
{
    const double T = revival_time(sys);
    CHECK(uncertainty(packet(), table(), Quantity::position, T) == doctest::Approx(0.05).epsilon(0.01));
    CHECK(expectation(packet(), table(), Operator::momentum, T) == doctest::Approx(400.0 * pi).epsilon(1e-3));
    CHECK(expectation(packet(), table(), Operator::momentum, T / 2) == doctest::Approx(-400.0 * pi).epsilon(1e-3));

    const auto off = build_gaussian_packet(PacketSpec::with_width(400, 0.3, 0.05), sys);
    const auto off_table = build_matrix_elements(off.window(), sys);
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> pick(0.0, T);
    for (int k = 0; k < 10; ++k) {
        const double s = pick(rng);
        const double a = expectation(off, off_table, Operator::position, s);
        const double b = expectation(off, off_table, Operator::position, s + T / 2);
        CHECK(std::abs(b - (1.0 - a)) < 1e-3);
    }
}

TEST_CASE("quasi-revivals at T/4 and 3T/4 for a centred packet")
{
    const double T = revival_time(sys);
    CHECK(uncertainty(packet(), table(), Quantity::position, T / 4) == doctest::Approx(0.05).epsilon(0.05));
    CHECK(uncertainty(packet(), table(), Quantity::position, 3 * T / 4) == doctest::Approx(0.05).epsilon(0.05));
}

TEST_CASE("coverage and consistency errors")
{
    const auto small = build_matrix_elements({380, 420}, sys);
    CHECK_THROWS_AS(expectation(packet(), small, Operator::position, 0.0), std::invalid_argument);

    // A table built for a different width does not match the expansion's
    // energies in any way the code can detect, but a wider window is fine.
    const auto wide = build_matrix_elements({300, 500}, sys);
    CHECK(expectation(packet(), wide, Operator::position, 0.3) ==
          doctest::Approx(expectation(packet(), table(), Operator::position, 0.3)).epsilon(1e-13));
}

TEST_CASE("schedules")
{
    const auto s = TimeSchedule::stroboscopic(0.5, 2, 4, 0.25);
    CHECK(s.times() == std::vector<double>{1.125, 1.625, 2.125});
    CHECK(TimeSchedule::dense(0.0, 1.0, 5).times() == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
    CHECK(TimeSchedule::stepped(0.0, 1.0, 0.25).size() == 5);
    CHECK(TimeSchedule::explicit_times({}).size() == 0);
    CHECK_THROWS_AS(TimeSchedule::explicit_times({1.0, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(TimeSchedule::dense(1.0, 0.0, 5), std::invalid_argument);
    CHECK_THROWS_AS(TimeSchedule::stepped(0.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("series ids and references")
{
    for (auto q : {SeriesQuantity::x_mean, SeriesQuantity::x2_mean, SeriesQuantity::p_mean, SeriesQuantity::p2_mean,
                   SeriesQuantity::x_spread, SeriesQuantity::p_spread}) {
        CHECK(parse_series_id(series_id(q)) == q);
    }
    CHECK_THROWS_AS(parse_series_id("nope"), std::invalid_argument);

    const auto flat = flat_momentum_reference(PacketSpec{}, sys);
    CHECK(flat.p_mean == 0.0);
    CHECK(flat.p_spread == doctest::Approx(400.0 * pi));
    CHECK(free_gaussian_spread(0.05, 0.0025, 0.0025) == doctest::Approx(0.05 * std::sqrt(2.0)));
}
