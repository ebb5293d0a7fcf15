#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "oracles.hpp"
#include "revivals/core_model.hpp"

using namespace revivals;
using std::numbers::pi;

TEST_CASE("eigenenergy in natural units")
{
    const WellSystem sys;
    CHECK(eigenenergy(1, sys) == doctest::Approx(pi * pi).epsilon(1e-15));
    CHECK(eigenenergy(400, sys) == doctest::Approx(400.0 * 400.0 * pi * pi).epsilon(1e-15));
    CHECK(eigenenergy(2, sys) / eigenenergy(1, sys) == 4.0);
    CHECK_THROWS_AS(eigenenergy(0, sys), std::domain_error);
    CHECK_THROWS_AS(eigenenergy(-3, sys), std::domain_error);
}

TEST_CASE("eigenstate_position values and normalization")
{
    const WellSystem sys;
    CHECK(eigenstate_position(1, 0.5, sys) == doctest::Approx(std::sqrt(2.0)));
    CHECK(std::abs(eigenstate_position(2, 0.5, sys)) < 1e-15);
    CHECK(eigenstate_position(3, -0.1, sys) == 0.0);
    CHECK(eigenstate_position(3, 1.1, sys) == 0.0);

    for (int n : {1, 7, 100, 333, 500}) {
        const double norm = oracle::real_integral(
            [&](double x) {
                const double u = eigenstate_position(n, x, sys);
                return u * u;
            },
            0.0, 1.0, 4 * n);
        CHECK(std::abs(norm - 1.0) < 1e-12);
    }
}

TEST_CASE("orthonormality for m, n <= 100")
{
    const WellSystem sys;
    double worst = 0.0;
    for (int m = 1; m <= 100; m += 3) {
        for (int n = 1; n <= 100; n += 7) {
            const double overlap = oracle::real_integral(
                [&](double x) { return eigenstate_position(m, x, sys) * eigenstate_position(n, x, sys); },
                0.0, 1.0, 120);
            worst = std::max(worst, std::abs(overlap - (m == n ? 1.0 : 0.0)));
        }
    }
    CHECK(worst < 1e-10);
}

namespace {

std::complex<double> fourier_oracle(int n, double p, double L, double hbar)
{
    const double scale = 1.0 / std::sqrt(2.0 * pi * hbar);
    return scale * oracle::complex_integral(
                       [&](double x) {
                           return oracle::box_state(n, x, L) *
                                  std::exp(std::complex<double>(0.0, -p * x / hbar));
                       },
                       0.0, L, 40 + 2 * n + static_cast<int>(std::abs(p) * L / hbar / 2.0));
}

}  // namespace

TEST_CASE("eigenstate_momentum at p = 0 and on the singular points")
{
    const WellSystem sys;
    const double p1 = pi;
    CHECK(std::abs(eigenstate_momentum(1, 0.0, sys) - std::sqrt(1.0 / pi) * 2.0 / p1) < 1e-15);

    const double p3 = 3.0 * pi;
    for (double p : {p3, -p3}) {
        const auto direct = fourier_oracle(3, p, 1.0, 1.0);
        CHECK(std::abs(eigenstate_momentum(3, p, sys) - direct) < 1e-9);
    }
}

TEST_CASE("eigenstate_momentum vs Fourier quadrature at random points")
{
    std::mt19937_64 rng(20261016);
    std::uniform_int_distribution<int> pick_n(1, 60);
    std::uniform_real_distribution<double> pick_p(-2.0, 2.0);
    const WellSystem sys{0.5, 1.0, 1.3};
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const int n = pick_n(rng);
        const double pn = n * pi * sys.hbar / sys.width;
        double p = pick_p(rng) * pn;
        // Every fifth sample sits right beside one of the singular points.
        switch (i % 5) {
        case 0: p = pn + 1e-8; break;
        case 1: p = -pn - 1e-8; break;
        case 2: p = pn - 1e-8; break;
        default: break;
        }
        const auto err = std::abs(eigenstate_momentum(n, p, sys) - fourier_oracle(n, p, sys.width, sys.hbar));
        worst = std::max(worst, err);
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("momentum eigenstate is normalized")
{
    const WellSystem sys;
    const int n = 5;
    const double pn = n * pi;
    const double total = oracle::real_integral(
        [&](double p) { return std::norm(eigenstate_momentum(n, p, sys)); }, -40.0 * pn, 40.0 * pn, 4000);
    CHECK(std::abs(total - 1.0) < 1e-3);
}

TEST_CASE("revival time")
{
    CHECK(revival_time(WellSystem{}) == doctest::Approx(2.0 / pi).epsilon(1e-15));
    const WellSystem sys{2.0, 0.5, 3.0};
    CHECK(revival_time(sys) == doctest::Approx(4.0 * 2.0 * 9.0 / (0.5 * pi)).epsilon(1e-15));
}

TEST_CASE("classical trajectory folding")
{
    const WellSystem sys;
    const double v0 = 3.0;
    const double period = 2.0 / v0;

    auto s = classical_trajectory(0.0, 0.5, v0, sys);
    CHECK(s.position == doctest::Approx(0.5));
    CHECK(s.velocity == v0);

    s = classical_trajectory(period / 2, 0.5, v0, sys);
    CHECK(s.position == doctest::Approx(0.5));
    CHECK(s.velocity == -v0);

    s = classical_trajectory(period, 0.5, v0, sys);
    CHECK(s.position == doctest::Approx(0.5));
    CHECK(s.velocity == v0);

    // quarter period from the centre lands on the right wall
    s = classical_trajectory(period / 4 + 1e-9, 0.5, v0, sys);
    CHECK(s.position == doctest::Approx(1.0).epsilon(1e-6));

    s = classical_trajectory(1.234, 0.2, 0.0, sys);
    CHECK(s.position == 0.2);
    CHECK(s.velocity == 0.0);

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> pick(0.0, 10.0);
    for (int i = 0; i < 20; ++i) {
        const double t = pick(rng);
        const auto a = classical_trajectory(t, 0.3, -v0, sys);
        const auto b = classical_trajectory(t + period, 0.3, -v0, sys);
        CHECK(a.position == doctest::Approx(b.position).epsilon(1e-12));
        CHECK(a.velocity == b.velocity);
        CHECK(a.position >= 0.0);
        CHECK(a.position <= 1.0);
    }
}

TEST_CASE("system validation")
{
    CHECK_NOTHROW(WellSystem{}.validate());
    CHECK_THROWS(WellSystem{-1.0, 1.0, 1.0}.validate());
    CHECK_THROWS(WellSystem{0.5, 0.0, 1.0}.validate());
    CHECK_THROWS(WellSystem{0.5, 1.0, 0.0}.validate());
}

TEST_CASE("level phase")
{
    const WellSystem sys{0.5, 1.0, 1.0};
    const double T = revival_time(sys);
    double worst = 0.0;
    for (int n = 1; n <= 1000; ++n) {
        worst = std::max(worst, std::abs(level_phase(n, T, sys) - 1.0));
        worst = std::max(worst, std::abs(level_phase(n, 0.0, sys) - 1.0));
    }
    CHECK(worst < 1e-13);
    // odd/even levels pick up opposite signs at T/2
    CHECK(std::abs(level_phase(7, T / 2, sys) + 1.0) < 1e-13);
    CHECK(std::abs(level_phase(8, T / 2, sys) - 1.0) < 1e-13);
    // small phases agree with the direct exponential
    const double t = 1e-3;
    CHECK(std::abs(level_phase(3, t, sys) - std::polar(1.0, eigenenergy(3, sys) * t)) < 1e-14);
}
