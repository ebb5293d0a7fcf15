#pragma once

#include <complex>
#include <span>
#include <vector>

#include "revivals/packet.hpp"

namespace revivals {

/// Uniform grid on [0, L] including both walls.
class SpatialGrid {
public:
    static SpatialGrid uniform(const WellSystem& sys, std::size_t points = 4096);

    std::span<const double> points() const { return points_; }
    double spacing() const { return spacing_; }
    std::size_t size() const { return points_.size(); }

private:
    SpatialGrid(std::vector<double> points, double spacing)
        : points_(std::move(points)), spacing_(spacing)
    {
    }
    std::vector<double> points_;
    double spacing_;
};

/// Uniform grid symmetric about p = 0; points()[i] == -points()[size()-1-i].
class MomentumGrid {
public:
    /// Smallest odd point count covering [-p_max, p_max] with spacing <= max_spacing.
    static MomentumGrid symmetric(double p_max, double max_spacing);
    /// [-1.5 p0, 1.5 p0] with spacing <= Delta p0 / 10.
    static MomentumGrid for_packet(const PacketSpec& spec, const WellSystem& sys);

    std::span<const double> points() const { return points_; }
    double spacing() const { return spacing_; }
    std::size_t size() const { return points_.size(); }

private:
    MomentumGrid(std::vector<double> points, double spacing)
        : points_(std::move(points)), spacing_(spacing)
    {
    }
    std::vector<double> points_;
    double spacing_;
};

struct WaveField {
    std::vector<double> coordinates;
    std::vector<std::complex<double>> amplitudes;
    double spacing = 0.0;
    double time = 0.0;
};

/// psi(x, t) = sum_n a_n u_n(x) e^{-i E_n t / hbar} evaluated on the grid.
WaveField position_wavefunction(const EigenExpansion& expansion, const SpatialGrid& grid, double t);

/// phi(p, t) = sum_n a_n phi_n(p) e^{-i E_n t / hbar} evaluated on the grid.
WaveField momentum_wavefunction(const EigenExpansion& expansion, const MomentumGrid& grid, double t);

std::vector<double> probability_density(const WaveField& field);

/// Composite trapezoid rule on a uniform grid.
double trapezoid(std::span<const double> values, double spacing);

/// c_n(t) = a_n e^{-i E_n t / hbar}.
std::vector<std::complex<double>> evolved_coefficients(const EigenExpansion& expansion, double t);

}  // namespace revivals
