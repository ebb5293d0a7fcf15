#pragma once

#include <optional>

#include "revivals/observables.hpp"
#include "revivals/packet.hpp"

namespace revivals {

struct TimeScaleReport {
    double tau = 0.0;        // classical period 2L / (p0 / m)
    double revival = 0.0;    // T = 4 m L^2 / (hbar pi)
    double spreading = 0.0;  // t0 = m hbar alpha^2 = 2 m dx0^2 / hbar
    double collapse = 0.0;   // T_C = T / (2 pi dn^2)
    double flattening = 0.0; // t_flat = (8 / sqrt 12) m L dx0 / hbar
    double crossing = 0.0;   // time at which dx0 sqrt(1 + (t/t0)^2) ~ dx0 t/t0 reaches L/sqrt 12
    std::optional<double> flattening_measured;

    friend bool operator==(const TimeScaleReport&, const TimeScaleReport&) = default;
};

TimeScaleReport compute_timescales(const WellSystem& sys, const PacketSpec& spec);

struct FlatReference {
    double x_mean;
    double x2_mean;
    double x_spread;
};

/// Moments of the uniform density 1/L: (L/2, L^2/3, L/sqrt 12).
FlatReference flat_reference(const WellSystem& sys);

/// First sample time from which `hold` consecutive values of a Delta x series
/// stay within +-epsilon (relative) of L/sqrt 12. nullopt if the series never
/// settles. The series should be sampled at least every tau/4 and span a few
/// flattening times.
std::optional<double> detect_flattening(const TimeSeries& series, const WellSystem& sys,
                                         double epsilon = 0.05, int hold = 10);

}  // namespace revivals
