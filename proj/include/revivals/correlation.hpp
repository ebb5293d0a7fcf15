#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "revivals/packet.hpp"

namespace revivals {

/// C(t) = sum_n w_n e^{i E_n t / hbar} for level weights w_n = |a_n|^2.
std::complex<double> autocorrelation(std::span<const double> weights, std::span<const double> energies,
                                     double hbar, double t);

std::complex<double> autocorrelation(const EigenExpansion& expansion, double t);

/// Overlap of psi(L - x, t) with psi(x, 0):
/// sum_n (-1)^{n+1} |a_n|^2 e^{i E_n t / hbar}.
std::complex<double> mirror_correlation(const EigenExpansion& expansion, double t);

struct CollapseFit {
    double collapse_time = 0.0;
    int points_used = 0;
    double residual = 0.0;   // rms of the ln|C| fit
    double threshold = 0.0;  // |C| cutoff used
    double quartic = 0.0;    // coefficient of the t^4 correction term

    friend bool operator==(const CollapseFit&, const CollapseFit&) = default;
};

/// Default |C| cutoff for the stroboscopic collapse fit.
inline constexpr double kCollapseThreshold = 0.8;

/// Least-squares fit of ln|C(n tau)| = -(n tau / T_C)^2 + c (n tau)^4 over
/// n = 1, 2, ... while |C(n tau)| > threshold. The quartic term absorbs the
/// leading departure of the sampled decay from a pure Gaussian.
/// Throws FitError with fewer than three usable samples or a non-decaying fit.
CollapseFit fit_collapse(const std::function<double(double)>& modulus, double tau,
                         double threshold = kCollapseThreshold);

CollapseFit fit_collapse(const EigenExpansion& expansion, double tau,
                         double threshold = kCollapseThreshold);

struct Rational {
    int numerator;
    int denominator;
    double value() const { return static_cast<double>(numerator) / denominator; }
    friend bool operator==(const Rational&, const Rational&) = default;
};

/// Stern-Brocot search for the simplest p/q (q <= max_denominator) within
/// tolerance of x, for x in [0, 1]. Returns nullopt if none qualifies.
std::optional<Rational> nearest_rational(double x, int max_denominator, double tolerance);

struct RevivalPeak {
    double time;
    double fraction;        // time / T
    double autocorrelation; // |C(time)|
    double mirror;          // |Cbar(time)|
    std::optional<Rational> annotation;

    friend bool operator==(const RevivalPeak&, const RevivalPeak&) = default;
};

struct ScanOptions {
    int max_denominator = 8;
    double prominence = 0.05;
};

/// Local maxima of max(|C|, |Cbar|) sampled every `resolution` on [start, stop],
/// refined by golden-section search and annotated with p/q T when such a
/// fraction lies within resolution / 2.
std::vector<RevivalPeak> revival_scan(const EigenExpansion& expansion, double start, double stop,
                                      double resolution, const ScanOptions& options = {});

}  // namespace revivals
