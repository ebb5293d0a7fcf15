#include "revivals/observables.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "revivals/errors.hpp"
#include "revivals/evolution.hpp"
#include "revivals/parallel.hpp"

namespace revivals {

using std::numbers::pi;

MatrixElementTable::MatrixElementTable(IndexWindow window, const WellSystem& sys)
    : window_(window), sys_(sys)
{
    sys_.validate();
    if (window.n_min < 1 || window.n_max < window.n_min) {
        throw std::invalid_argument("MatrixElementTable: need 1 <= n_min <= n_max");
    }
    const auto size = static_cast<std::size_t>(window.size());
    const double L = sys.width;
    x_.assign(size * size, 0.0);
    x2_.assign(size * size, 0.0);
    p_imag_.assign(size * size, 0.0);
    p2_diag_.resize(size);

    for (int m = window.n_min; m <= window.n_max; ++m) {
        const double pm = level_momentum(m, sys);
        p2_diag_[static_cast<std::size_t>(m - window.n_min)] = pm * pm;
        for (int n = window.n_min; n <= window.n_max; ++n) {
            const std::size_t k = index(m, n);
            if (m == n) {
                x_[k] = 0.5 * L;
                x2_[k] = L * L * (1.0 / 3.0 - 1.0 / (2.0 * n * n * pi * pi));
                continue;
            }
            const double mn = static_cast<double>(m) * n;
            const double diff = static_cast<double>(m) * m - static_cast<double>(n) * n;
            const double denom = pi * pi * diff * diff;
            const bool odd = (m + n) % 2 != 0;
            x2_[k] = (odd ? -8.0 : 8.0) * L * L * mn / denom;
            if (odd) {
                x_[k] = -8.0 * L * mn / denom;
                p_imag_[k] = -4.0 * sys.hbar * mn / (L * diff);
            }
        }
    }
}

std::complex<double> MatrixElementTable::element(Operator op, int m, int n) const
{
    if (m < window_.n_min || m > window_.n_max || n < window_.n_min || n > window_.n_max) {
        throw std::out_of_range("MatrixElementTable: index outside window");
    }
    switch (op) {
    case Operator::position:
        return x_[index(m, n)];
    case Operator::position_squared:
        return x2_[index(m, n)];
    case Operator::momentum:
        return {0.0, p_imag_[index(m, n)]};
    case Operator::momentum_squared:
        return m == n ? p2_diag_[static_cast<std::size_t>(m - window_.n_min)] : 0.0;
    }
    return 0.0;
}

MatrixElementTable build_matrix_elements(IndexWindow window, const WellSystem& sys)
{
    return MatrixElementTable(window, sys);
}

namespace {

void require_cover(const EigenExpansion& expansion, const MatrixElementTable& table)
{
    if (!table.window().contains(expansion.window())) {
        throw std::invalid_argument("matrix-element window does not cover the expansion window");
    }
}

double assemble(std::span<const std::complex<double>> c, int n_min, const MatrixElementTable& table,
                Operator op)
{
    std::complex<double> sum{};
    double bound = 0.0;
    const int size = static_cast<int>(c.size());
    for (int i = 0; i < size; ++i) {
        for (int j = 0; j < size; ++j) {
            const auto element = table.element(op, n_min + i, n_min + j);
            if (element == 0.0) {
                continue;
            }
            const auto term = std::conj(c[i]) * element * c[j];
            sum += term;
            bound += std::abs(term);
        }
    }
    if (std::abs(sum.imag()) > 1e-12 * std::max(bound, 1e-300)) {
        throw NumericalConsistencyError("expectation value has imaginary residue "
                                        + std::to_string(sum.imag()));
    }
    return sum.real();
}

double spread_from(double mean, double mean_sq)
{
    const double var = mean_sq - mean * mean;
    if (var < -1e-12 * std::abs(mean_sq)) {
        throw NumericalConsistencyError("negative variance " + std::to_string(var));
    }
    return std::sqrt(std::max(var, 0.0));
}

}  // namespace

double expectation(const EigenExpansion& expansion, const MatrixElementTable& table, Operator op,
                   double t)
{
    require_cover(expansion, table);
    const auto c = evolved_coefficients(expansion, t);
    return assemble(c, expansion.n_min(), table, op);
}

double uncertainty(const EigenExpansion& expansion, const MatrixElementTable& table, Quantity which,
                   double t)
{
    require_cover(expansion, table);
    const auto c = evolved_coefficients(expansion, t);
    const Operator first = which == Quantity::position ? Operator::position : Operator::momentum;
    const Operator second =
        which == Quantity::position ? Operator::position_squared : Operator::momentum_squared;
    return spread_from(assemble(c, expansion.n_min(), table, first),
                       assemble(c, expansion.n_min(), table, second));
}

MomentSnapshot moments(const EigenExpansion& expansion, const MatrixElementTable& table, double t)
{
    require_cover(expansion, table);
    const auto c = evolved_coefficients(expansion, t);
    const int n_min = expansion.n_min();
    const double x = assemble(c, n_min, table, Operator::position);
    const double x2 = assemble(c, n_min, table, Operator::position_squared);
    const double p = assemble(c, n_min, table, Operator::momentum);
    const double p2 = assemble(c, n_min, table, Operator::momentum_squared);
    return {t, x, spread_from(x, x2), p, spread_from(p, p2)};
}

std::string_view series_id(SeriesQuantity q)
{
    switch (q) {
    case SeriesQuantity::x_mean:
        return "x";
    case SeriesQuantity::x2_mean:
        return "x2";
    case SeriesQuantity::p_mean:
        return "p";
    case SeriesQuantity::p2_mean:
        return "p2";
    case SeriesQuantity::x_spread:
        return "dx";
    case SeriesQuantity::p_spread:
        return "dp";
    }
    return "?";
}

SeriesQuantity parse_series_id(std::string_view id)
{
    for (auto q : {SeriesQuantity::x_mean, SeriesQuantity::x2_mean, SeriesQuantity::p_mean,
                   SeriesQuantity::p2_mean, SeriesQuantity::x_spread, SeriesQuantity::p_spread}) {
        if (series_id(q) == id) {
            return q;
        }
    }
    throw std::invalid_argument("unknown series id '" + std::string(id) + "'");
}

TimeSchedule::TimeSchedule(std::vector<double> times) : times_(std::move(times))
{
    for (std::size_t i = 0; i < times_.size(); ++i) {
        if (!std::isfinite(times_[i])) {
            throw std::invalid_argument("TimeSchedule: non-finite time");
        }
        if (i > 0 && !(times_[i] > times_[i - 1])) {
            throw std::invalid_argument("TimeSchedule: times must be strictly increasing");
        }
    }
}

TimeSchedule TimeSchedule::stroboscopic(double tau, int first, int last, double offset)
{
    if (!(tau > 0.0) || last < first) {
        throw std::invalid_argument("TimeSchedule::stroboscopic: need tau > 0 and first <= last");
    }
    std::vector<double> ts;
    ts.reserve(static_cast<std::size_t>(last - first + 1));
    for (int n = first; n <= last; ++n) {
        ts.push_back((n + offset) * tau);
    }
    return TimeSchedule(std::move(ts));
}

TimeSchedule TimeSchedule::dense(double start, double stop, std::size_t count)
{
    if (count == 0) {
        throw std::invalid_argument("TimeSchedule::dense: count must be positive");
    }
    if (count == 1) {
        return TimeSchedule({start});
    }
    if (!(stop > start)) {
        throw std::invalid_argument("TimeSchedule::dense: stop must exceed start");
    }
    std::vector<double> ts(count);
    const double h = (stop - start) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) {
        ts[i] = start + h * static_cast<double>(i);
    }
    ts.back() = stop;
    return TimeSchedule(std::move(ts));
}

TimeSchedule TimeSchedule::stepped(double start, double stop, double step)
{
    if (!(step > 0.0) || stop < start) {
        throw std::invalid_argument("TimeSchedule::stepped: need step > 0 and stop >= start");
    }
    const auto steps = static_cast<std::size_t>(std::floor((stop - start) / step * (1.0 + 1e-12)));
    std::vector<double> ts(steps + 1);
    for (std::size_t i = 0; i <= steps; ++i) {
        ts[i] = start + step * static_cast<double>(i);
    }
    return TimeSchedule(std::move(ts));
}

TimeSchedule TimeSchedule::explicit_times(std::vector<double> times)
{
    return TimeSchedule(std::move(times));
}

TimeSeries sample_series(const EigenExpansion& expansion, const MatrixElementTable& table,
                         SeriesQuantity which, const TimeSchedule& schedule)
{
    require_cover(expansion, table);
    TimeSeries series;
    series.observable = std::string(series_id(which));
    series.times = schedule.times();
    series.values.resize(series.times.size());
    parallel_for(series.times.size(), [&](std::size_t i) {
        const double t = series.times[i];
        switch (which) {
        case SeriesQuantity::x_mean:
            series.values[i] = expectation(expansion, table, Operator::position, t);
            break;
        case SeriesQuantity::x2_mean:
            series.values[i] = expectation(expansion, table, Operator::position_squared, t);
            break;
        case SeriesQuantity::p_mean:
            series.values[i] = expectation(expansion, table, Operator::momentum, t);
            break;
        case SeriesQuantity::p2_mean:
            series.values[i] = expectation(expansion, table, Operator::momentum_squared, t);
            break;
        case SeriesQuantity::x_spread:
            series.values[i] = uncertainty(expansion, table, Quantity::position, t);
            break;
        case SeriesQuantity::p_spread:
            series.values[i] = uncertainty(expansion, table, Quantity::momentum, t);
            break;
        }
    });
    const auto w = expansion.window();
    series.metadata["window"] = std::to_string(w.n_min) + ".." + std::to_string(w.n_max);
    series.metadata["samples"] = std::to_string(series.times.size());
    return series;
}

double free_gaussian_spread(double dx0, double t0, double t)
{
    const double r = t / t0;
    return dx0 * std::sqrt(1.0 + r * r);
}

FlatMomentumReference flat_momentum_reference(const PacketSpec& spec, const WellSystem& sys)
{
    return {0.0, level_momentum(spec.n0, sys)};
}

}  // namespace revivals
