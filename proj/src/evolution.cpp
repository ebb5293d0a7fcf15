#include "revivals/evolution.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "revivals/parallel.hpp"

namespace revivals {

SpatialGrid SpatialGrid::uniform(const WellSystem& sys, std::size_t points)
{
    sys.validate();
    if (points < 2) {
        throw std::invalid_argument("SpatialGrid: need at least two points");
    }
    const double h = sys.width / static_cast<double>(points - 1);
    std::vector<double> xs(points);
    for (std::size_t i = 0; i < points; ++i) {
        xs[i] = h * static_cast<double>(i);
    }
    xs.back() = sys.width;
    return SpatialGrid(std::move(xs), h);
}

MomentumGrid MomentumGrid::symmetric(double p_max, double max_spacing)
{
    if (!(p_max > 0.0) || !(max_spacing > 0.0)) {
        throw std::invalid_argument("MomentumGrid: range and spacing must be positive");
    }
    const auto half = static_cast<std::size_t>(std::ceil(p_max / max_spacing));
    const double h = p_max / static_cast<double>(half);
    std::vector<double> ps(2 * half + 1);
    for (std::size_t i = 0; i <= half; ++i) {
        const double p = h * static_cast<double>(i);
        ps[half + i] = p;
        ps[half - i] = -p;
    }
    ps.front() = -p_max;
    ps.back() = p_max;
    return MomentumGrid(std::move(ps), h);
}

MomentumGrid MomentumGrid::for_packet(const PacketSpec& spec, const WellSystem& sys)
{
    const double p0 = level_momentum(spec.n0, sys);
    const double dp = initial_moments(spec, sys).dp0;
    return symmetric(1.5 * p0, dp / 10.0);
}

std::vector<std::complex<double>> evolved_coefficients(const EigenExpansion& expansion, double t)
{
    const auto a = expansion.coefficients();
    std::vector<std::complex<double>> c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        c[i] = a[i] * std::conj(level_phase(expansion.n_min() + static_cast<int>(i), t, expansion.system()));
    }
    return c;
}

WaveField position_wavefunction(const EigenExpansion& expansion, const SpatialGrid& grid, double t)
{
    const auto c = evolved_coefficients(expansion, t);
    const WellSystem& sys = expansion.system();
    const int n_min = expansion.n_min();
    const auto xs = grid.points();

    WaveField field;
    field.coordinates.assign(xs.begin(), xs.end());
    field.amplitudes.resize(xs.size());
    field.spacing = grid.spacing();
    field.time = t;
    parallel_for(xs.size(), [&](std::size_t j) {
        std::complex<double> sum{};
        for (std::size_t i = 0; i < c.size(); ++i) {
            sum += c[i] * eigenstate_position(n_min + static_cast<int>(i), xs[j], sys);
        }
        field.amplitudes[j] = sum;
    });
    return field;
}

WaveField momentum_wavefunction(const EigenExpansion& expansion, const MomentumGrid& grid, double t)
{
    const auto c = evolved_coefficients(expansion, t);
    const WellSystem& sys = expansion.system();
    const int n_min = expansion.n_min();
    const auto ps = grid.points();

    WaveField field;
    field.coordinates.assign(ps.begin(), ps.end());
    field.amplitudes.resize(ps.size());
    field.spacing = grid.spacing();
    field.time = t;
    parallel_for(ps.size(), [&](std::size_t j) {
        std::complex<double> sum{};
        for (std::size_t i = 0; i < c.size(); ++i) {
            sum += c[i] * eigenstate_momentum(n_min + static_cast<int>(i), ps[j], sys);
        }
        field.amplitudes[j] = sum;
    });
    return field;
}

std::vector<double> probability_density(const WaveField& field)
{
    std::vector<double> rho(field.amplitudes.size());
    for (std::size_t i = 0; i < rho.size(); ++i) {
        rho[i] = std::norm(field.amplitudes[i]);
    }
    return rho;
}

double trapezoid(std::span<const double> values, double spacing)
{
    if (values.size() < 2) {
        return 0.0;
    }
    double sum = 0.5 * (values.front() + values.back());
    for (std::size_t i = 1; i + 1 < values.size(); ++i) {
        sum += values[i];
    }
    return sum * spacing;
}

}  // namespace revivals
