#pragma once

#include <filesystem>
#include <vector>

#include "revivals/cli_io/config.hpp"
#include "revivals/cli_io/reports.hpp"

namespace revivals::cli {

struct RunResult {
    std::vector<std::filesystem::path> files;
};

/// One density file per explicit schedule time and requested representation.
RunResult run_evolve(const RunConfig& config);

/// t, <x>, dx, <p>, dp plus free-Gaussian, classical and flat reference columns.
RunResult run_observables(const RunConfig& config);

/// |C| and |Cbar| over the schedule; optional collapse fit and revival scan reports.
RunResult run_correlate(const RunConfig& config);

/// WKB spectrum table (k, half, n, E_n, tau_n, T_rev) and optional collapse fits.
RunResult run_powerlaw(const RunConfig& config);

/// Delta x series per initial width and the flattening summary.
RunResult run_scan_flatten(const RunConfig& config);

RunResult run_timescales(const RunConfig& config);

/// In-memory forms of the report-producing runs, shared with the writers.
FlattenSummary compute_flatten_summary(const RunConfig& config,
                                       std::vector<TimeSeries>* series = nullptr);
PowerLawFitReport compute_powerlaw_fits(const RunConfig& config);
RevivalScanReport compute_revival_scan(const RunConfig& config);

}  // namespace revivals::cli
