#include "revivals/timescales.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace revivals {

using std::numbers::pi;

TimeScaleReport compute_timescales(const WellSystem& sys, const PacketSpec& spec)
{
    spec.validate(sys);
    const double m = sys.mass;
    const double L = sys.width;
    const double hbar = sys.hbar;
    const double alpha = spec.alpha_value(sys);
    const double dx0 = spec.width_value(sys);
    const double p0 = level_momentum(spec.n0, sys);
    const double dn = level_spread(spec, sys);

    TimeScaleReport r;
    r.tau = 2.0 * L / (p0 / m);
    r.revival = revival_time(sys);
    r.spreading = m * hbar * alpha * alpha;
    r.collapse = r.revival / (2.0 * pi * dn * dn);
    r.flattening = 8.0 / std::sqrt(12.0) * m * L * dx0 / hbar;
    r.crossing = r.spreading * L / (std::sqrt(12.0) * dx0);
    return r;
}

FlatReference flat_reference(const WellSystem& sys)
{
    const double L = sys.width;
    return {0.5 * L, L * L / 3.0, L / std::sqrt(12.0)};
}

std::optional<double> detect_flattening(const TimeSeries& series, const WellSystem& sys,
                                        double epsilon, int hold)
{
    if (!(epsilon > 0.0) || hold < 1) {
        throw std::invalid_argument("detect_flattening: need epsilon > 0 and hold >= 1");
    }
    if (series.times.size() != series.values.size()) {
        throw std::invalid_argument("detect_flattening: malformed series");
    }
    const double flat = flat_reference(sys).x_spread;
    int run = 0;
    for (std::size_t i = 0; i < series.values.size(); ++i) {
        if (std::abs(series.values[i] - flat) <= epsilon * flat) {
            if (++run >= hold) {
                return series.times[i + 1 - static_cast<std::size_t>(hold)];
            }
        } else {
            run = 0;
        }
    }
    return std::nullopt;
}

}  // namespace revivals
