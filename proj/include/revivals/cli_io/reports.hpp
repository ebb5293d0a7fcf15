#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "revivals/correlation.hpp"
#include "revivals/timescales.hpp"

namespace revivals {

void to_json(nlohmann::json& j, const TimeScaleReport& r);
void from_json(const nlohmann::json& j, TimeScaleReport& r);
void to_json(nlohmann::json& j, const CollapseFit& f);
void from_json(const nlohmann::json& j, CollapseFit& f);
void to_json(nlohmann::json& j, const RevivalPeak& p);
void from_json(const nlohmann::json& j, RevivalPeak& p);

}  // namespace revivals

namespace revivals::cli {

inline constexpr const char* kSchemaVersion = "1";

struct RevivalScanReport {
    double start = 0.0;
    double stop = 0.0;
    double resolution = 0.0;
    int max_denominator = 8;
    double prominence = 0.05;
    std::vector<RevivalPeak> peaks;

    friend bool operator==(const RevivalScanReport&, const RevivalScanReport&) = default;
};

struct FlattenEntry {
    double dx0 = 0.0;
    std::optional<double> detected;
    double flattening = 0.0;
    double crossing = 0.0;

    friend bool operator==(const FlattenEntry&, const FlattenEntry&) = default;
};

/// Detected saturation times per initial width and the log-log slope of
/// detected time against width (absent with fewer than two detections).
struct FlattenSummary {
    double epsilon = 0.05;
    int hold = 10;
    std::vector<FlattenEntry> entries;
    std::optional<double> slope;

    friend bool operator==(const FlattenSummary&, const FlattenSummary&) = default;
};

struct PowerLawFitEntry {
    std::optional<double> exponent;  // empty: box limit
    bool half = false;
    int n0 = 0;
    double dn = 0.0;
    std::optional<double> predicted;  // T(k, n0) / (2 pi dn^2); empty for k = 2
    std::optional<CollapseFit> fit;
    std::string error;

    friend bool operator==(const PowerLawFitEntry&, const PowerLawFitEntry&) = default;
};

struct PowerLawFitReport {
    std::vector<PowerLawFitEntry> entries;

    friend bool operator==(const PowerLawFitReport&, const PowerLawFitReport&) = default;
};

void to_json(nlohmann::json& j, const RevivalScanReport& r);
void from_json(const nlohmann::json& j, RevivalScanReport& r);
void to_json(nlohmann::json& j, const FlattenEntry& e);
void from_json(const nlohmann::json& j, FlattenEntry& e);
void to_json(nlohmann::json& j, const FlattenSummary& s);
void from_json(const nlohmann::json& j, FlattenSummary& s);
void to_json(nlohmann::json& j, const PowerLawFitEntry& e);
void from_json(const nlohmann::json& j, PowerLawFitEntry& e);
void to_json(nlohmann::json& j, const PowerLawFitReport& r);
void from_json(const nlohmann::json& j, PowerLawFitReport& r);

/// {"schema_version": "1", "kind": kind, "config_hash": hash, "report": body}
nlohmann::json make_envelope(std::string_view kind, const std::string& config_hash,
                             nlohmann::json body);

/// Throws ConfigError unless j is a schema-version-1 envelope of the given kind.
void check_envelope(const nlohmann::json& j, std::string_view kind);

template <class Report>
Report parse_report(std::string_view text, std::string_view kind)
{
    const auto j = nlohmann::json::parse(text);
    check_envelope(j, kind);
    return j.at("report").get<Report>();
}

}  // namespace revivals::cli
