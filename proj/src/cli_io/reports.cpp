#include "revivals/cli_io/reports.hpp"

#include "revivals/errors.hpp"

namespace revivals {

namespace {

template <class T>
nlohmann::json optional_json(const std::optional<T>& v)
{
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

template <class T>
std::optional<T> optional_from(const nlohmann::json& j, const char* key)
{
    if (!j.contains(key) || j.at(key).is_null()) {
        return std::nullopt;
    }
    return j.at(key).get<T>();
}

}  // namespace

void to_json(nlohmann::json& j, const TimeScaleReport& r)
{
    j = {{"tau", r.tau},
         {"revival", r.revival},
         {"spreading", r.spreading},
         {"collapse", r.collapse},
         {"flattening", r.flattening},
         {"crossing", r.crossing},
         {"flattening_measured", optional_json(r.flattening_measured)}};
}

void from_json(const nlohmann::json& j, TimeScaleReport& r)
{
    j.at("tau").get_to(r.tau);
    j.at("revival").get_to(r.revival);
    j.at("spreading").get_to(r.spreading);
    j.at("collapse").get_to(r.collapse);
    j.at("flattening").get_to(r.flattening);
    j.at("crossing").get_to(r.crossing);
    r.flattening_measured = optional_from<double>(j, "flattening_measured");
}

void to_json(nlohmann::json& j, const CollapseFit& f)
{
    j = {{"collapse_time", f.collapse_time},
         {"points_used", f.points_used},
         {"residual", f.residual},
         {"threshold", f.threshold},
         {"quartic", f.quartic}};
}

void from_json(const nlohmann::json& j, CollapseFit& f)
{
    j.at("collapse_time").get_to(f.collapse_time);
    j.at("points_used").get_to(f.points_used);
    j.at("residual").get_to(f.residual);
    j.at("threshold").get_to(f.threshold);
    j.at("quartic").get_to(f.quartic);
}

void to_json(nlohmann::json& j, const RevivalPeak& p)
{
    j = {{"time", p.time},
         {"fraction", p.fraction},
         {"autocorrelation", p.autocorrelation},
         {"mirror", p.mirror},
         {"annotation", nullptr}};
    if (p.annotation) {
        j["annotation"] = {{"p", p.annotation->numerator}, {"q", p.annotation->denominator}};
    }
}

void from_json(const nlohmann::json& j, RevivalPeak& p)
{
    j.at("time").get_to(p.time);
    j.at("fraction").get_to(p.fraction);
    j.at("autocorrelation").get_to(p.autocorrelation);
    j.at("mirror").get_to(p.mirror);
    p.annotation.reset();
    if (j.contains("annotation") && !j.at("annotation").is_null()) {
        const auto& a = j.at("annotation");
        p.annotation = Rational{a.at("p").get<int>(), a.at("q").get<int>()};
    }
}

}  // namespace revivals

namespace revivals::cli {

namespace {

nlohmann::json exponent_json(const std::optional<double>& k)
{
    return k ? nlohmann::json(*k) : nlohmann::json("inf");
}

std::optional<double> exponent_from(const nlohmann::json& j)
{
    if (j.is_string()) {
        if (j.get<std::string>() != "inf") {
            throw ConfigError("exponent must be a number or \"inf\"");
        }
        return std::nullopt;
    }
    return j.get<double>();
}

}  // namespace

void to_json(nlohmann::json& j, const RevivalScanReport& r)
{
    j = {{"start", r.start},
         {"stop", r.stop},
         {"resolution", r.resolution},
         {"max_denominator", r.max_denominator},
         {"prominence", r.prominence},
         {"peaks", r.peaks}};
}

void from_json(const nlohmann::json& j, RevivalScanReport& r)
{
    j.at("start").get_to(r.start);
    j.at("stop").get_to(r.stop);
    j.at("resolution").get_to(r.resolution);
    j.at("max_denominator").get_to(r.max_denominator);
    j.at("prominence").get_to(r.prominence);
    j.at("peaks").get_to(r.peaks);
}

void to_json(nlohmann::json& j, const FlattenEntry& e)
{
    j = {{"dx0", e.dx0},
         {"detected", e.detected ? nlohmann::json(*e.detected) : nlohmann::json(nullptr)},
         {"flattening", e.flattening},
         {"crossing", e.crossing}};
}

void from_json(const nlohmann::json& j, FlattenEntry& e)
{
    j.at("dx0").get_to(e.dx0);
    e.detected.reset();
    if (!j.at("detected").is_null()) {
        e.detected = j.at("detected").get<double>();
    }
    j.at("flattening").get_to(e.flattening);
    j.at("crossing").get_to(e.crossing);
}

void to_json(nlohmann::json& j, const FlattenSummary& s)
{
    j = {{"epsilon", s.epsilon},
         {"hold", s.hold},
         {"entries", s.entries},
         {"slope", s.slope ? nlohmann::json(*s.slope) : nlohmann::json(nullptr)}};
}

void from_json(const nlohmann::json& j, FlattenSummary& s)
{
    j.at("epsilon").get_to(s.epsilon);
    j.at("hold").get_to(s.hold);
    j.at("entries").get_to(s.entries);
    s.slope.reset();
    if (!j.at("slope").is_null()) {
        s.slope = j.at("slope").get<double>();
    }
}

void to_json(nlohmann::json& j, const PowerLawFitEntry& e)
{
    j = {{"k", exponent_json(e.exponent)},
         {"half", e.half},
         {"n0", e.n0},
         {"dn", e.dn},
         {"predicted", e.predicted ? nlohmann::json(*e.predicted) : nlohmann::json("periodic")},
         {"fit", e.fit ? nlohmann::json(*e.fit) : nlohmann::json(nullptr)},
         {"error", e.error}};
}

void from_json(const nlohmann::json& j, PowerLawFitEntry& e)
{
    e.exponent = exponent_from(j.at("k"));
    j.at("half").get_to(e.half);
    j.at("n0").get_to(e.n0);
    j.at("dn").get_to(e.dn);
    e.predicted.reset();
    if (!j.at("predicted").is_string()) {
        e.predicted = j.at("predicted").get<double>();
    }
    e.fit.reset();
    if (!j.at("fit").is_null()) {
        e.fit = j.at("fit").get<CollapseFit>();
    }
    j.at("error").get_to(e.error);
}

void to_json(nlohmann::json& j, const PowerLawFitReport& r)
{
    j = {{"entries", r.entries}};
}

void from_json(const nlohmann::json& j, PowerLawFitReport& r)
{
    j.at("entries").get_to(r.entries);
}

nlohmann::json make_envelope(std::string_view kind, const std::string& config_hash,
                             nlohmann::json body)
{
    return {{"schema_version", kSchemaVersion},
            {"kind", std::string(kind)},
            {"config_hash", config_hash},
            {"report", std::move(body)}};
}

void check_envelope(const nlohmann::json& j, std::string_view kind)
{
    if (!j.contains("schema_version") || j.at("schema_version") != kSchemaVersion) {
        throw ConfigError("report: unsupported schema_version");
    }
    if (!j.contains("kind") || j.at("kind").get<std::string>() != kind) {
        throw ConfigError("report: expected kind '" + std::string(kind) + "'");
    }
}

}  // namespace revivals::cli
