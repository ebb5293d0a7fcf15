#include "revivals/core_model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace revivals {

using std::numbers::pi;

void WellSystem::validate() const
{
    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!positive(mass) || !positive(hbar) || !positive(width)) {
        throw std::invalid_argument("WellSystem: mass, hbar and width must be positive");
    }
}

double level_momentum(int n, const WellSystem& sys)
{
    return n * pi * sys.hbar / sys.width;
}

double eigenenergy(int n, const WellSystem& sys)
{
    if (n < 1) {
        throw std::domain_error("eigenenergy: level index starts at 1, got " + std::to_string(n));
    }
    const double p = level_momentum(n, sys);
    return p * p / (2.0 * sys.mass);
}

double eigenstate_position(int n, double x, const WellSystem& sys)
{
    if (x < 0.0 || x > sys.width) {
        return 0.0;
    }
    return std::sqrt(2.0 / sys.width) * std::sin(n * pi * x / sys.width);
}

std::complex<double> eigenstate_momentum(int n, double p, const WellSystem& sys)
{
    const double L = sys.width;
    const double hbar = sys.hbar;
    const double pn = level_momentum(n, sys);
    // The closed form below is for the e^{+ipx} kernel; phi_n(p) is that at -p.
    p = -p;

    // With s = sign(p): (-1)^n e^{ipL/hbar} - 1 = e^{i delta L/hbar} - 1 and
    // p^2 - p_n^2 = delta (p + s p_n), where delta = p - s p_n.
    const double s = p < 0.0 ? -1.0 : 1.0;
    const double delta = p - s * pn;
    const double u = delta * L / hbar;

    // (e^{iu} - 1)/u without cancellation near u = 0.
    std::complex<double> g{0.0, 1.0};
    if (u != 0.0) {
        const double h = std::sin(0.5 * u);
        g = {-2.0 * h * h / u, std::sin(u) / u};
    }
    const double prefactor = std::sqrt(hbar / (pi * L)) * pn / (p + s * pn) * (L / hbar);
    return prefactor * g;
}

double revival_time(const WellSystem& sys)
{
    return 4.0 * sys.mass * sys.width * sys.width / (sys.hbar * pi);
}

std::complex<double> level_phase(int n, double t, const WellSystem& sys)
{
    // Reduced against the double-rounded T so that t = revival_time(sys) is an exact revival.
    const long double revival = revival_time(sys);
    const long double cycles = static_cast<long double>(n) * n * (static_cast<long double>(t) / revival);
    const long double frac = cycles - std::floor(cycles);
    const double angle = static_cast<double>(2.0L * std::numbers::pi_v<long double> * frac);
    return std::polar(1.0, angle);
}

ClassicalState classical_trajectory(double t, double x0, double v0, const WellSystem& sys)
{
    if (v0 == 0.0) {
        return {x0, 0.0};
    }
    const double L = sys.width;
    const double period = 2.0 * L / std::abs(v0);
    double s = std::fmod(x0 + v0 * std::fmod(t, period), 2.0 * L);
    if (s < 0.0) {
        s += 2.0 * L;
    }
    if (s <= L) {
        return {s, v0};
    }
    return {2.0 * L - s, -v0};
}

}  // namespace revivals
