#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "revivals/core_model.hpp"
#include "revivals/correlation.hpp"
#include "revivals/observables.hpp"
#include "revivals/packet.hpp"
#include "revivals/timescales.hpp"

namespace revivals::cli {

enum class OutputFormat { csv, json };
enum class ScheduleMode { stroboscopic, dense, explicit_list };
enum class Representation { position, momentum, both };

struct GridConfig {
    std::size_t x_points = 4096;
    double p_range = 1.5;    // in units of p0
    double p_spacing = 0.1;  // in units of Delta p0
};

/// Time values are kept as text until the packet's tau and T are known;
/// "124tau", "0.5T" and plain numbers are accepted.
struct ScheduleConfig {
    ScheduleMode mode = ScheduleMode::stroboscopic;
    int first = 0;
    int last = 800;
    double offset = 0.0;
    std::string start = "0";
    std::string stop = "10tau";
    std::optional<std::size_t> count;
    std::optional<std::string> step;
    std::vector<std::string> times;
};

struct OutputConfig {
    OutputFormat format = OutputFormat::csv;
    std::string path = "out";
    int precision = 12;
};

struct EvolveConfig {
    Representation representation = Representation::both;
};

struct CorrelateConfig {
    bool fit = true;
    double threshold = kCollapseThreshold;
    bool scan = false;
    std::string scan_start = "0";
    std::string scan_stop = "1T";
    std::string resolution = "0.25tau";
    int max_denominator = 8;
    double prominence = 0.05;
};

/// An empty exponent entry is the k -> infinity box limit ("inf" in the file).
struct PowerLawConfig {
    std::vector<std::optional<double>> exponents{1.0, 2.0, 4.0};
    int n_min = 50;
    int n_max = 200;
    bool half = false;
    double v0 = 1.0;
    double a = 1.0;
    std::optional<double> mass;  // defaults to the system mass
    bool fit = false;
    int fit_n0 = 200;
    double fit_dn = 3.0;
    double threshold = kCollapseThreshold;
};

struct FlattenConfig {
    std::vector<double> widths{0.025, 0.05, 0.10};
    double epsilon = 0.05;
    int hold = 10;
    std::string step = "0.25tau";
    double span = 4.0;  // series length in units of the flattening time
};

struct RunConfig {
    WellSystem system;
    PacketSpec packet;
    GridConfig grids;
    ScheduleConfig schedule;
    OutputConfig output;
    EvolveConfig evolve;
    CorrelateConfig correlate;
    PowerLawConfig powerlaw;
    FlattenConfig flatten;

    /// Canonical "section.key=value" lines for every key that was set
    /// explicitly, sorted. Feeds the provenance hash.
    std::vector<std::string> canonical;

    /// FNV-1a 64 of the canonical listing, as 16 hex digits. output.path is
    /// left out: it says where results go, not what they are.
    std::string hash() const;
    void validate() const;
};

RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

/// Sets "section.key" as if it appeared in the file, replacing any earlier
/// value in the canonical listing. Used for command-line overrides.
void apply_override(RunConfig& config, const std::string& key, const std::string& value);

/// "124tau" -> 124 tau, "0.5T" -> 0.5 T, otherwise a plain number.
double parse_time(std::string_view text, double tau, double revival);

TimeSchedule resolve_schedule(const ScheduleConfig& schedule, const TimeScaleReport& scales);

std::uint64_t fnv1a64(std::string_view data);

}  // namespace revivals::cli
