#pragma once

#include <complex>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "revivals/packet.hpp"

namespace revivals {

enum class Operator { position, position_squared, momentum, momentum_squared };
enum class Quantity { position, momentum };

/// Closed-form infinite-well matrix elements <m|O|n> over a level window.
/// x and x^2 are real symmetric, p is purely imaginary and Hermitian, p^2 is
/// diagonal with entries (n pi hbar / L)^2.
class MatrixElementTable {
public:
    MatrixElementTable(IndexWindow window, const WellSystem& sys);

    IndexWindow window() const { return window_; }
    const WellSystem& system() const { return sys_; }
    std::complex<double> element(Operator op, int m, int n) const;

private:
    std::size_t index(int m, int n) const
    {
        const auto size = static_cast<std::size_t>(window_.size());
        return static_cast<std::size_t>(m - window_.n_min) * size
               + static_cast<std::size_t>(n - window_.n_min);
    }

    IndexWindow window_;
    WellSystem sys_;
    std::vector<double> x_;
    std::vector<double> x2_;
    std::vector<double> p_imag_;
    std::vector<double> p2_diag_;
};

/// Throws std::invalid_argument unless 1 <= n_min <= n_max.
MatrixElementTable build_matrix_elements(IndexWindow window, const WellSystem& sys);

/// <O>_t = sum_{m,n} a_m^* a_n <m|O|n> e^{i (E_m - E_n) t / hbar}.
/// Throws std::invalid_argument if the table does not cover the expansion
/// window, NumericalConsistencyError if the imaginary residue exceeds 1e-12
/// relative to the absolute size of the sum.
double expectation(const EigenExpansion& expansion, const MatrixElementTable& table, Operator op,
                   double t);

/// sqrt(<O^2> - <O>^2). Variances below -1e-12 <O^2> raise NumericalConsistencyError;
/// smaller negative rounding residue is clamped to zero.
double uncertainty(const EigenExpansion& expansion, const MatrixElementTable& table, Quantity which,
                   double t);

struct MomentSnapshot {
    double time;
    double x_mean;
    double x_spread;
    double p_mean;
    double p_spread;
};

MomentSnapshot moments(const EigenExpansion& expansion, const MatrixElementTable& table, double t);

enum class SeriesQuantity { x_mean, x2_mean, p_mean, p2_mean, x_spread, p_spread };

std::string_view series_id(SeriesQuantity q);
SeriesQuantity parse_series_id(std::string_view id);

/// Strictly increasing list of sample times.
class TimeSchedule {
public:
    /// t = (n + offset) * tau for n = first..last.
    static TimeSchedule stroboscopic(double tau, int first, int last, double offset = 0.0);
    /// count equally spaced samples on [start, stop] (both ends included).
    static TimeSchedule dense(double start, double stop, std::size_t count);
    /// Samples start, start + step, ... up to stop (inclusive within rounding).
    static TimeSchedule stepped(double start, double stop, double step);
    static TimeSchedule explicit_times(std::vector<double> times);

    const std::vector<double>& times() const { return times_; }
    std::size_t size() const { return times_.size(); }

private:
    explicit TimeSchedule(std::vector<double> times);
    std::vector<double> times_;
};

struct TimeSeries {
    std::string observable;
    std::vector<double> times;
    std::vector<double> values;
    std::map<std::string, std::string> metadata;
};

TimeSeries sample_series(const EigenExpansion& expansion, const MatrixElementTable& table,
                         SeriesQuantity which, const TimeSchedule& schedule);

/// Free-particle Gaussian width dx0 sqrt(1 + (t/t0)^2).
double free_gaussian_spread(double dx0, double t0, double t);

/// Two-delta momentum model 1/2[delta(p - p0) + delta(p + p0)]: <p> = 0, Delta p = p0.
struct FlatMomentumReference {
    double p_mean;
    double p_spread;
};
FlatMomentumReference flat_momentum_reference(const PacketSpec& spec, const WellSystem& sys);

}  // namespace revivals
