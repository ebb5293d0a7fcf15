#include "revivals/powerlaw.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace revivals {

using std::numbers::pi;

PowerLawWell PowerLawWell::finite(double k, double v0, double a, double mass, bool half, double hbar)
{
    PowerLawWell w{k, v0, a, mass, hbar, half};
    w.validate();
    return w;
}

PowerLawWell PowerLawWell::box_limit(double a, double mass, bool half, double hbar)
{
    PowerLawWell w{std::nullopt, 1.0, a, mass, hbar, half};
    w.validate();
    return w;
}

void PowerLawWell::validate() const
{
    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (exponent && !positive(*exponent)) {
        throw std::invalid_argument("PowerLawWell: exponent must be positive");
    }
    if (!positive(v0) || !positive(a) || !positive(mass) || !positive(hbar)) {
        throw std::invalid_argument("PowerLawWell: V0, a, mass and hbar must be positive");
    }
}

double log_gamma(double x)
{
    return std::lgamma(x);
}

double maslov_offset(const PowerLawWell& well)
{
    if (well.is_box_limit()) {
        return 1.0;
    }
    return well.half ? 0.75 : 0.5;
}

double spectral_exponent(const PowerLawWell& well)
{
    if (well.is_box_limit()) {
        return 2.0;
    }
    const double k = *well.exponent;
    return 2.0 * k / (k + 2.0);
}

double wkb_energy(const PowerLawWell& well, int n)
{
    if (n < 0) {
        throw std::domain_error("wkb_energy: n must be >= 0, got " + std::to_string(n));
    }
    well.validate();
    const double width_factor = well.half ? 1.0 : 2.0;
    double base = (n + maslov_offset(well)) * well.hbar * pi
                  / (width_factor * well.a * std::sqrt(2.0 * well.mass));
    if (!well.is_box_limit()) {
        const double k = *well.exponent;
        const double ratio = std::exp(log_gamma(1.0 / k + 1.5) - log_gamma(1.0 / k + 1.0)
                                      - log_gamma(1.5));
        base *= std::pow(well.v0, 1.0 / k) * ratio;
    }
    return std::pow(base, spectral_exponent(well));
}

double classical_period_powerlaw(const PowerLawWell& well, int n)
{
    const double e = wkb_energy(well, n);
    return 2.0 * pi * well.hbar / e * (n + maslov_offset(well)) / spectral_exponent(well);
}

std::optional<double> revival_time_powerlaw(const PowerLawWell& well, int n)
{
    if (n < 1) {
        throw std::domain_error("revival_time_powerlaw: n must be >= 1, got " + std::to_string(n));
    }
    if (well.is_oscillator()) {
        return std::nullopt;
    }
    const double curvature = std::abs(spectral_exponent(well) - 1.0);
    return 2.0 * (n + maslov_offset(well)) * classical_period_powerlaw(well, n) / curvature;
}

LevelWeights gaussian_level_weights(double n0, double dn, double window_sigmas)
{
    if (!(dn > 0.0) || !(window_sigmas > 0.0) || n0 < 0.0) {
        throw std::invalid_argument("gaussian_level_weights: need n0 >= 0, dn > 0, window > 0");
    }
    const int lo = std::max(0, static_cast<int>(std::ceil(n0 - window_sigmas * dn)));
    const int hi = static_cast<int>(std::floor(n0 + window_sigmas * dn));
    LevelWeights levels;
    levels.n_min = lo;
    double total = 0.0;
    for (int n = lo; n <= hi; ++n) {
        const double d = (n - n0) / dn;
        levels.weights.push_back(std::exp(-0.5 * d * d));
        total += levels.weights.back();
    }
    if (!(total > 0.0)) {
        throw std::invalid_argument("gaussian_level_weights: empty window");
    }
    for (auto& w : levels.weights) {
        w /= total;
    }
    return levels;
}

std::vector<double> wkb_energies(const PowerLawWell& well, const LevelWeights& levels)
{
    std::vector<double> e(levels.weights.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
        e[i] = wkb_energy(well, levels.n_min + static_cast<int>(i));
    }
    return e;
}

std::complex<double> powerlaw_autocorrelation(const PowerLawWell& well, const LevelWeights& levels,
                                              double t)
{
    const auto e = wkb_energies(well, levels);
    return autocorrelation(levels.weights, e, well.hbar, t);
}

std::optional<double> powerlaw_collapse_time(const PowerLawWell& well, int n0, double dn)
{
    const auto revival = revival_time_powerlaw(well, n0);
    if (!revival) {
        return std::nullopt;
    }
    return *revival / (2.0 * pi * dn * dn);
}

CollapseFit fit_powerlaw_collapse(const PowerLawWell& well, const LevelWeights& levels, int n0,
                                  double threshold)
{
    const auto e = wkb_energies(well, levels);
    const double tau = classical_period_powerlaw(well, n0);
    return fit_collapse(
        [&](double t) { return std::abs(autocorrelation(levels.weights, e, well.hbar, t)); }, tau,
        threshold);
}

}  // namespace revivals
