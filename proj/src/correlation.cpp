#include "revivals/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "revivals/core_model.hpp"
#include "revivals/errors.hpp"
#include "revivals/parallel.hpp"

namespace revivals {

std::complex<double> autocorrelation(std::span<const double> weights, std::span<const double> energies,
                                     double hbar, double t)
{
    if (weights.size() != energies.size()) {
        throw std::invalid_argument("autocorrelation: weights and energies differ in length");
    }
    std::complex<double> sum{};
    for (std::size_t i = 0; i < weights.size(); ++i) {
        sum += weights[i] * std::polar(1.0, energies[i] * t / hbar);
    }
    return sum;
}

std::complex<double> autocorrelation(const EigenExpansion& expansion, double t)
{
    const auto w = expansion.weights();
    std::complex<double> sum{};
    for (std::size_t i = 0; i < w.size(); ++i) {
        sum += w[i] * level_phase(expansion.n_min() + static_cast<int>(i), t, expansion.system());
    }
    return sum;
}

std::complex<double> mirror_correlation(const EigenExpansion& expansion, double t)
{
    const auto w = expansion.weights();
    std::complex<double> sum{};
    for (std::size_t i = 0; i < w.size(); ++i) {
        const int n = expansion.n_min() + static_cast<int>(i);
        const double sign = n % 2 == 1 ? 1.0 : -1.0;
        sum += sign * w[i] * level_phase(n, t, expansion.system());
    }
    return sum;
}

CollapseFit fit_collapse(const std::function<double(double)>& modulus, double tau, double threshold)
{
    if (!(tau > 0.0)) {
        throw std::invalid_argument("fit_collapse: tau must be positive");
    }
    constexpr int kMaxPeriods = 1'000'000;
    std::vector<double> ts;
    std::vector<double> ys;
    for (int n = 1; n <= kMaxPeriods; ++n) {
        const double t = n * tau;
        const double c = modulus(t);
        if (!(c > threshold)) {
            break;
        }
        ts.push_back(t);
        ys.push_back(std::log(c));
    }
    if (ts.size() < 3) {
        throw FitError("fit_collapse: only " + std::to_string(ts.size())
                       + " stroboscopic samples above |C| = " + std::to_string(threshold));
    }

    // y = -b s^2 + c s^4 with s = t / t_last, solved through the 2x2 normal equations.
    const double t_last = ts.back();
    double s4 = 0.0, s6 = 0.0, s8 = 0.0, ys2 = 0.0, ys4 = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const double s = ts[i] / t_last;
        const double q = s * s;
        s4 += q * q;
        s6 += q * q * q;
        s8 += q * q * q * q;
        ys2 += ys[i] * q;
        ys4 += ys[i] * q * q;
    }
    // Columns: u = -s^2, v = s^4.
    const double uu = s4, uv = -s6, vv = s8;
    const double uy = -ys2, vy = ys4;
    const double det = uu * vv - uv * uv;
    if (!(std::abs(det) > 1e-14 * uu * vv)) {
        throw FitError("fit_collapse: degenerate normal equations");
    }
    const double b = (uy * vv - uv * vy) / det;
    const double c = (uu * vy - uv * uy) / det;
    if (!(b > 0.0)) {
        throw FitError("fit_collapse: stroboscopic samples do not decay");
    }

    double rss = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const double s = ts[i] / t_last;
        const double r = ys[i] - (-b * s * s + c * s * s * s * s);
        rss += r * r;
    }

    CollapseFit fit;
    fit.collapse_time = t_last / std::sqrt(b);
    fit.points_used = static_cast<int>(ts.size());
    fit.residual = std::sqrt(rss / static_cast<double>(ts.size()));
    fit.threshold = threshold;
    fit.quartic = c / std::pow(t_last, 4);
    return fit;
}

CollapseFit fit_collapse(const EigenExpansion& expansion, double tau, double threshold)
{
    return fit_collapse([&](double t) { return std::abs(autocorrelation(expansion, t)); }, tau,
                        threshold);
}

std::optional<Rational> nearest_rational(double x, int max_denominator, double tolerance)
{
    if (!(x >= -tolerance && x <= 1.0 + tolerance) || max_denominator < 1) {
        return std::nullopt;
    }
    Rational lo{0, 1};
    Rational hi{1, 1};
    if (std::abs(x) <= tolerance) {
        return lo;
    }
    if (std::abs(x - 1.0) <= tolerance) {
        return hi;
    }
    while (true) {
        const Rational mid{lo.numerator + hi.numerator, lo.denominator + hi.denominator};
        if (mid.denominator > max_denominator) {
            return std::nullopt;
        }
        const double v = mid.value();
        if (std::abs(v - x) <= tolerance) {
            return mid;
        }
        if (x < v) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
}

namespace {

double golden_maximum(const std::function<double(double)>& f, double a, double b)
{
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (int it = 0; it < 200 && (b - a) > 4e-16 * std::max(1.0, std::abs(a)); ++it) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    // Compare against the bracket ends so boundary maxima are not lost.
    double best = 0.5 * (a + b);
    double best_value = f(best);
    for (double t : {a, b}) {
        const double v = f(t);
        if (v > best_value) {
            best = t;
            best_value = v;
        }
    }
    return best;
}

}  // namespace

std::vector<RevivalPeak> revival_scan(const EigenExpansion& expansion, double start, double stop,
                                      double resolution, const ScanOptions& options)
{
    if (!(resolution > 0.0) || !(stop > start)) {
        throw std::invalid_argument("revival_scan: need stop > start and resolution > 0");
    }
    const double period = revival_time(expansion.system());
    auto envelope = [&](double t) {
        return std::max(std::abs(autocorrelation(expansion, t)),
                        std::abs(mirror_correlation(expansion, t)));
    };

    const auto count = static_cast<std::size_t>(std::ceil((stop - start) / resolution)) + 1;
    std::vector<double> ts(count);
    std::vector<double> fs(count);
    for (std::size_t i = 0; i < count; ++i) {
        ts[i] = std::min(stop, start + resolution * static_cast<double>(i));
    }
    parallel_for(count, [&](std::size_t i) { fs[i] = envelope(ts[i]); });

    std::vector<RevivalPeak> peaks;
    for (std::size_t i = 0; i < count; ++i) {
        const bool left_ok = i == 0 || fs[i] >= fs[i - 1];
        const bool right_ok = i + 1 == count || fs[i] > fs[i + 1];
        if (!left_ok || !right_ok || count == 1) {
            continue;
        }
        // Topographic prominence on the sampled envelope.
        double left_base = fs[i];
        bool left_bounded = false;
        for (std::size_t j = i; j-- > 0;) {
            if (fs[j] > fs[i]) {
                left_bounded = true;
                break;
            }
            left_base = std::min(left_base, fs[j]);
        }
        double right_base = fs[i];
        bool right_bounded = false;
        for (std::size_t j = i + 1; j < count; ++j) {
            if (fs[j] > fs[i]) {
                right_bounded = true;
                break;
            }
            right_base = std::min(right_base, fs[j]);
        }
        double base;
        if (i == 0) {
            base = right_base;
        } else if (i + 1 == count) {
            base = left_base;
        } else if (left_bounded && right_bounded) {
            base = std::max(left_base, right_base);
        } else if (left_bounded) {
            base = left_base;
        } else if (right_bounded) {
            base = right_base;
        } else {
            base = std::min(left_base, right_base);
        }
        if (fs[i] - base < options.prominence) {
            continue;
        }

        const double a = std::max(start, ts[i] - resolution);
        const double b = std::min(stop, ts[i] + resolution);
        const double t_peak = golden_maximum(envelope, a, b);

        RevivalPeak peak;
        peak.time = t_peak;
        peak.fraction = t_peak / period;
        peak.autocorrelation = std::abs(autocorrelation(expansion, t_peak));
        peak.mirror = std::abs(mirror_correlation(expansion, t_peak));

        const double whole = std::floor(peak.fraction);
        auto r = nearest_rational(peak.fraction - whole, options.max_denominator,
                                  0.5 * resolution / period);
        if (r) {
            r->numerator += static_cast<int>(whole) * r->denominator;
        }
        peak.annotation = r;
        peaks.push_back(peak);
    }
    return peaks;
}

}  // namespace revivals
