#include "revivals/packet.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace revivals {

using std::numbers::pi;

PacketSpec PacketSpec::with_width(int n0, double x0, double dx0, double window_sigmas)
{
    PacketSpec spec;
    spec.n0 = n0;
    spec.x0 = x0;
    spec.alpha.reset();
    spec.dx0 = dx0;
    spec.window_sigmas = window_sigmas;
    return spec;
}

PacketSpec PacketSpec::with_alpha(int n0, double x0, double alpha, double window_sigmas)
{
    PacketSpec spec;
    spec.n0 = n0;
    spec.x0 = x0;
    spec.alpha = alpha;
    spec.dx0.reset();
    spec.window_sigmas = window_sigmas;
    return spec;
}

void PacketSpec::validate(const WellSystem& sys) const
{
    sys.validate();
    if (alpha.has_value() == dx0.has_value()) {
        throw std::invalid_argument("PacketSpec: exactly one of alpha / dx0 must be given");
    }
    const double w = alpha ? *alpha : *dx0;
    if (!std::isfinite(w) || w <= 0.0) {
        throw std::invalid_argument("PacketSpec: width parameter must be positive");
    }
    if (n0 < 1) {
        throw std::invalid_argument("PacketSpec: n0 must be >= 1");
    }
    if (!(x0 > 0.0 && x0 < sys.width)) {
        throw std::invalid_argument("PacketSpec: x0 must lie strictly inside the well");
    }
    if (!std::isfinite(window_sigmas) || window_sigmas <= 0.0) {
        throw std::invalid_argument("PacketSpec: window_sigmas must be positive");
    }
}

double PacketSpec::alpha_value(const WellSystem& sys) const
{
    return alpha ? *alpha : *dx0 * std::numbers::sqrt2 / sys.hbar;
}

double PacketSpec::width_value(const WellSystem& sys) const
{
    return dx0 ? *dx0 : *alpha * sys.hbar / std::numbers::sqrt2;
}

InitialMoments initial_moments(const PacketSpec& spec, const WellSystem& sys)
{
    spec.validate(sys);
    const double alpha = spec.alpha_value(sys);
    return {alpha * sys.hbar / std::numbers::sqrt2, 1.0 / (alpha * std::numbers::sqrt2)};
}

double level_spread(const PacketSpec& spec, const WellSystem& sys)
{
    const double dp = initial_moments(spec, sys).dp0;
    return dp * sys.width / (pi * sys.hbar);
}

EigenExpansion::EigenExpansion(int n_min, std::vector<std::complex<double>> coefficients,
                               const WellSystem& sys)
    : n_min_(n_min), coeffs_(std::move(coefficients)), sys_(sys)
{
    sys_.validate();
    if (n_min_ < 1) {
        throw std::invalid_argument("EigenExpansion: n_min must be >= 1");
    }
    if (coeffs_.empty()) {
        throw std::invalid_argument("EigenExpansion: empty coefficient window");
    }
    double norm2 = 0.0;
    for (const auto& c : coeffs_) {
        norm2 += std::norm(c);
    }
    if (!(norm2 > 0.0) || !std::isfinite(norm2)) {
        throw std::invalid_argument("EigenExpansion: coefficients have zero or non-finite norm");
    }
    const double scale = 1.0 / std::sqrt(norm2);
    energies_.reserve(coeffs_.size());
    weights_.reserve(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        coeffs_[i] *= scale;
        weights_.push_back(std::norm(coeffs_[i]));
        energies_.push_back(eigenenergy(n_min_ + static_cast<int>(i), sys_));
    }
}

void EigenExpansion::mark_truncation(double discarded_weight)
{
    discarded_weight_ = discarded_weight;
    truncated_at_ground_ = discarded_weight > 1e-8;
}

EigenExpansion build_gaussian_packet(const PacketSpec& spec, const WellSystem& sys)
{
    spec.validate(sys);
    const double alpha = spec.alpha_value(sys);
    const double dn = level_spread(spec, sys);
    const double half_width = spec.window_sigmas * dn;

    const int lo_raw = static_cast<int>(std::ceil(spec.n0 - half_width));
    const int hi = static_cast<int>(std::floor(spec.n0 + half_width));
    const int lo = std::max(1, lo_raw);
    if (hi < lo) {
        throw std::invalid_argument("build_gaussian_packet: empty truncation window");
    }

    const double p0 = level_momentum(spec.n0, sys);
    const double amplitude = std::sqrt(alpha * sys.hbar * std::sqrt(pi) / sys.width);
    auto gaussian = [&](int n) {
        const double d = level_momentum(n, sys) - p0;
        return amplitude * std::exp(-0.5 * alpha * alpha * d * d);
    };

    std::vector<std::complex<double>> coeffs;
    coeffs.reserve(static_cast<std::size_t>(hi - lo + 1));
    for (int n = lo; n <= hi; ++n) {
        const double phase = -level_momentum(n, sys) * spec.x0 / sys.hbar;
        coeffs.push_back(std::polar(gaussian(n), phase));
    }

    double discarded = 0.0;
    for (int n = lo_raw; n < 1; ++n) {
        const double g = gaussian(n);
        discarded += g * g;
    }

    EigenExpansion expansion(lo, std::move(coeffs), sys);
    expansion.mark_truncation(discarded);
    return expansion;
}

}  // namespace revivals
