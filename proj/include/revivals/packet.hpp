#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "revivals/core_model.hpp"

namespace revivals {

/// Inclusive range of level indices [n_min, n_max].
struct IndexWindow {
    int n_min = 1;
    int n_max = 1;

    int size() const { return n_max - n_min + 1; }
    bool contains(const IndexWindow& other) const
    {
        return other.n_min >= n_min && other.n_max <= n_max;
    }
    friend bool operator==(const IndexWindow&, const IndexWindow&) = default;
};

/// Quasi-Gaussian packet parameters. Exactly one of `alpha` / `dx0` is set;
/// alpha = dx0 * sqrt(2) / hbar.
struct PacketSpec {
    int n0 = 400;
    double x0 = 0.5;
    std::optional<double> alpha;
    std::optional<double> dx0 = 0.05;
    double window_sigmas = 8.0;

    static PacketSpec with_width(int n0, double x0, double dx0, double window_sigmas = 8.0);
    static PacketSpec with_alpha(int n0, double x0, double alpha, double window_sigmas = 8.0);

    void validate(const WellSystem& sys) const;

    double alpha_value(const WellSystem& sys) const;
    double width_value(const WellSystem& sys) const;
};

struct InitialMoments {
    double dx0;
    double dp0;
};

/// Minimum-uncertainty pair (alpha hbar / sqrt 2, 1 / (alpha sqrt 2)).
InitialMoments initial_moments(const PacketSpec& spec, const WellSystem& sys);

/// Standard deviation of the |a_n|^2 distribution over n: Delta p L / (pi hbar).
double level_spread(const PacketSpec& spec, const WellSystem& sys);

/// Normalized eigenbasis expansion psi = sum_n a_n u_n e^{-i E_n t / hbar}.
/// Immutable after construction.
class EigenExpansion {
public:
    /// Takes arbitrary coefficients for levels n_min, n_min+1, ... and
    /// rescales them to unit norm. Throws std::invalid_argument on an empty or
    /// zero-norm coefficient list.
    EigenExpansion(int n_min, std::vector<std::complex<double>> coefficients, const WellSystem& sys);

    const WellSystem& system() const { return sys_; }
    IndexWindow window() const { return {n_min_, n_min_ + static_cast<int>(coeffs_.size()) - 1}; }
    int n_min() const { return n_min_; }
    std::size_t size() const { return coeffs_.size(); }

    std::span<const std::complex<double>> coefficients() const { return coeffs_; }
    std::span<const double> energies() const { return energies_; }
    std::span<const double> weights() const { return weights_; }

    /// Set when the window was clipped at n = 1 with more than 1e-8 of
    /// pre-normalization weight discarded.
    bool truncated_at_ground() const { return truncated_at_ground_; }
    double discarded_weight() const { return discarded_weight_; }

private:
    friend EigenExpansion build_gaussian_packet(const PacketSpec&, const WellSystem&);
    void mark_truncation(double discarded_weight);

    int n_min_;
    std::vector<std::complex<double>> coeffs_;
    std::vector<double> energies_;
    std::vector<double> weights_;
    WellSystem sys_;
    bool truncated_at_ground_ = false;
    double discarded_weight_ = 0.0;
};

/// a_n = sqrt(alpha hbar sqrt(pi) / L) exp(-alpha^2 (p_n - p_0)^2 / 2) exp(-i p_n x_0 / hbar)
/// on n0 +- window_sigmas * Delta n, clipped to n >= 1, then renormalized.
EigenExpansion build_gaussian_packet(const PacketSpec& spec, const WellSystem& sys);

}  // namespace revivals
