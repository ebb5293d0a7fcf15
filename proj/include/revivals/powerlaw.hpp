#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "revivals/correlation.hpp"

namespace revivals {

/// V(x) = V0 |x/a|^k, or its half-well variant with an infinite wall at x = 0.
/// An empty exponent is the k -> infinity box limit (width 2a, or a for the
/// half well).
struct PowerLawWell {
    std::optional<double> exponent = 4.0;
    double v0 = 1.0;
    double a = 1.0;
    double mass = 0.5;
    double hbar = 1.0;
    bool half = false;

    static PowerLawWell finite(double k, double v0, double a, double mass, bool half = false,
                               double hbar = 1.0);
    static PowerLawWell box_limit(double a, double mass, bool half = false, double hbar = 1.0);

    bool is_box_limit() const { return !exponent.has_value(); }
    bool is_oscillator() const { return exponent && *exponent == 2.0; }
    void validate() const;
};

double log_gamma(double x);

/// WKB offset mu in (n + mu): 1/2 full well, 3/4 half well, 1 in the box limit.
double maslov_offset(const PowerLawWell& well);

/// Exponent 2k/(k+2) of (n + mu) in the WKB spectrum (2 in the box limit).
double spectral_exponent(const PowerLawWell& well);

/// WKB level n >= 0. Throws std::domain_error for negative n.
double wkb_energy(const PowerLawWell& well, int n);

/// tau_n = 2 pi hbar / (dE/dn) = (2 pi hbar / E_n)(n + mu)(k + 2)/(2k).
double classical_period_powerlaw(const PowerLawWell& well, int n);

/// 4 pi hbar / E''_n = |(k+2)/(k-2)| 2 (n + mu) tau_n. nullopt for k = 2, where
/// the spectrum is linear and the motion exactly periodic. Throws
/// std::domain_error for n < 1.
std::optional<double> revival_time_powerlaw(const PowerLawWell& well, int n);

struct LevelWeights {
    int n_min = 0;
    std::vector<double> weights;  // sums to 1
};

/// Normalized exp(-(n - n0)^2 / (2 dn^2)) on n0 +- window_sigmas dn, n >= 0.
LevelWeights gaussian_level_weights(double n0, double dn, double window_sigmas = 8.0);

std::vector<double> wkb_energies(const PowerLawWell& well, const LevelWeights& levels);

/// sum_n w_n e^{i E_n t / hbar} with WKB energies.
std::complex<double> powerlaw_autocorrelation(const PowerLawWell& well, const LevelWeights& levels,
                                              double t);

/// T(k, n0) / (2 pi dn^2); nullopt for the oscillator.
std::optional<double> powerlaw_collapse_time(const PowerLawWell& well, int n0, double dn);

/// Stroboscopic collapse fit at tau = tau(k, n0).
CollapseFit fit_powerlaw_collapse(const PowerLawWell& well, const LevelWeights& levels, int n0,
                                  double threshold = kCollapseThreshold);

}  // namespace revivals
