#pragma once

#include <complex>

namespace revivals {

/// Infinite square well on [0, L]. Default values are the natural units
/// 2m = hbar = L = 1.
struct WellSystem {
    double mass = 0.5;
    double hbar = 1.0;
    double width = 1.0;

    /// Throws std::invalid_argument unless every constant is positive and finite.
    void validate() const;
};

struct ClassicalState {
    double position;
    double velocity;
};

/// Momentum of level n, p_n = n*pi*hbar/L.
double level_momentum(int n, const WellSystem& sys);

/// E_n = n^2 hbar^2 pi^2 / (2 m L^2). Throws std::domain_error for n < 1.
double eigenenergy(int n, const WellSystem& sys);

/// sqrt(2/L) sin(n pi x / L) inside the well, zero outside.
double eigenstate_position(int n, double x, const WellSystem& sys);

/// Fourier transform (1/sqrt(2 pi hbar)) \int_0^L u_n(x) e^{-ipx/hbar} dx in
/// closed form. Continuous through p = +-p_n. The kernel sign matches the
/// packet phase e^{-i p x0 / hbar}, so a right-moving packet peaks at +p0.
std::complex<double> eigenstate_momentum(int n, double p, const WellSystem& sys);

/// Time 4 m L^2 / (hbar pi) after which every eigenphase returns to one.
double revival_time(const WellSystem& sys);

/// e^{i E_n t / hbar}. The phase n^2 t / T (in cycles) is reduced in extended
/// precision, which keeps the exact revival identities at ~1e-14 even though
/// E_n t / hbar itself reaches 1e6 rad.
std::complex<double> level_phase(int n, double t, const WellSystem& sys);

/// Bounce motion between the walls, computed by folding x0 + v0 t into
/// [0, L]. For v0 == 0 the particle stays at rest.
ClassicalState classical_trajectory(double t, double x0, double v0, const WellSystem& sys);

}  // namespace revivals
