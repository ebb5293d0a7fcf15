#include "revivals/cli_io/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "revivals/errors.hpp"

namespace revivals::cli {

namespace {

std::string trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(std::string_view s)
{
    std::vector<std::string> out;
    std::size_t begin = 0;
    while (begin <= s.size()) {
        const auto end = s.find(',', begin);
        auto item = trim(s.substr(begin, end == std::string_view::npos ? s.npos : end - begin));
        if (!item.empty()) {
            out.push_back(std::move(item));
        }
        if (end == std::string_view::npos) {
            break;
        }
        begin = end + 1;
    }
    return out;
}

double to_double(std::string_view s)
{
    const auto t = trim(s);
    double v = 0.0;
    const auto* first = t.data();
    const auto* last = t.data() + t.size();
    const auto res = std::from_chars(first, last, v);
    if (t.empty() || res.ec != std::errc{} || res.ptr != last || !std::isfinite(v)) {
        throw std::invalid_argument("expected a number, got '" + t + "'");
    }
    return v;
}

long to_integer(std::string_view s)
{
    const auto t = trim(s);
    long v = 0;
    const auto* last = t.data() + t.size();
    const auto res = std::from_chars(t.data(), last, v);
    if (t.empty() || res.ec != std::errc{} || res.ptr != last) {
        throw std::invalid_argument("expected an integer, got '" + t + "'");
    }
    return v;
}

bool to_bool(std::string_view s)
{
    const auto t = trim(s);
    if (t == "true" || t == "yes" || t == "1") {
        return true;
    }
    if (t == "false" || t == "no" || t == "0") {
        return false;
    }
    throw std::invalid_argument("expected true/false, got '" + t + "'");
}

std::optional<double> to_exponent(std::string_view s)
{
    const auto t = trim(s);
    if (t == "inf" || t == "infinity") {
        return std::nullopt;
    }
    const double k = to_double(t);
    if (k >= 1e6) {
        throw std::invalid_argument("exponent " + t
                                    + " is a large-k sentinel; use the keyword 'inf' for the box limit");
    }
    return k;
}

using Setter = std::function<void(RunConfig&, const std::string&)>;

const std::map<std::string, Setter>& setters()
{
    static const std::map<std::string, Setter> table = {
        {"system.mass", [](RunConfig& c, const std::string& v) { c.system.mass = to_double(v); }},
        {"system.hbar", [](RunConfig& c, const std::string& v) { c.system.hbar = to_double(v); }},
        {"system.width", [](RunConfig& c, const std::string& v) { c.system.width = to_double(v); }},

        {"packet.n0",
         [](RunConfig& c, const std::string& v) { c.packet.n0 = static_cast<int>(to_integer(v)); }},
        {"packet.x0", [](RunConfig& c, const std::string& v) { c.packet.x0 = to_double(v); }},
        {"packet.dx0",
         [](RunConfig& c, const std::string& v) {
             c.packet.dx0 = to_double(v);
             c.packet.alpha.reset();
         }},
        {"packet.alpha",
         [](RunConfig& c, const std::string& v) {
             c.packet.alpha = to_double(v);
             c.packet.dx0.reset();
         }},
        {"packet.window_sigmas",
         [](RunConfig& c, const std::string& v) { c.packet.window_sigmas = to_double(v); }},

        {"grids.x_points",
         [](RunConfig& c, const std::string& v) {
             const long n = to_integer(v);
             if (n < 2) {
                 throw std::invalid_argument("x_points must be >= 2");
             }
             c.grids.x_points = static_cast<std::size_t>(n);
         }},
        {"grids.p_range", [](RunConfig& c, const std::string& v) { c.grids.p_range = to_double(v); }},
        {"grids.p_spacing",
         [](RunConfig& c, const std::string& v) { c.grids.p_spacing = to_double(v); }},

        {"schedule.mode",
         [](RunConfig& c, const std::string& v) {
             if (v == "stroboscopic") {
                 c.schedule.mode = ScheduleMode::stroboscopic;
             } else if (v == "dense") {
                 c.schedule.mode = ScheduleMode::dense;
             } else if (v == "explicit") {
                 c.schedule.mode = ScheduleMode::explicit_list;
             } else {
                 throw std::invalid_argument("mode must be stroboscopic, dense or explicit");
             }
         }},
        {"schedule.first",
         [](RunConfig& c, const std::string& v) { c.schedule.first = static_cast<int>(to_integer(v)); }},
        {"schedule.last",
         [](RunConfig& c, const std::string& v) { c.schedule.last = static_cast<int>(to_integer(v)); }},
        {"schedule.offset",
         [](RunConfig& c, const std::string& v) { c.schedule.offset = to_double(v); }},
        {"schedule.start", [](RunConfig& c, const std::string& v) { c.schedule.start = v; }},
        {"schedule.stop", [](RunConfig& c, const std::string& v) { c.schedule.stop = v; }},
        {"schedule.count",
         [](RunConfig& c, const std::string& v) {
             const long n = to_integer(v);
             if (n < 1) {
                 throw std::invalid_argument("count must be >= 1");
             }
             c.schedule.count = static_cast<std::size_t>(n);
         }},
        {"schedule.step", [](RunConfig& c, const std::string& v) { c.schedule.step = v; }},
        {"schedule.times", [](RunConfig& c, const std::string& v) { c.schedule.times = split_list(v); }},

        {"output.format",
         [](RunConfig& c, const std::string& v) {
             if (v == "csv") {
                 c.output.format = OutputFormat::csv;
             } else if (v == "json") {
                 c.output.format = OutputFormat::json;
             } else {
                 throw std::invalid_argument("format must be csv or json");
             }
         }},
        {"output.path", [](RunConfig& c, const std::string& v) { c.output.path = v; }},
        {"output.precision",
         [](RunConfig& c, const std::string& v) {
             const long p = to_integer(v);
             if (p < 1 || p > 17) {
                 throw std::invalid_argument("precision must be in [1, 17]");
             }
             c.output.precision = static_cast<int>(p);
         }},

        {"evolve.representation",
         [](RunConfig& c, const std::string& v) {
             if (v == "position") {
                 c.evolve.representation = Representation::position;
             } else if (v == "momentum") {
                 c.evolve.representation = Representation::momentum;
             } else if (v == "both") {
                 c.evolve.representation = Representation::both;
             } else {
                 throw std::invalid_argument("representation must be position, momentum or both");
             }
         }},

        {"correlate.fit", [](RunConfig& c, const std::string& v) { c.correlate.fit = to_bool(v); }},
        {"correlate.threshold",
         [](RunConfig& c, const std::string& v) { c.correlate.threshold = to_double(v); }},
        {"correlate.scan", [](RunConfig& c, const std::string& v) { c.correlate.scan = to_bool(v); }},
        {"correlate.scan_start",
         [](RunConfig& c, const std::string& v) { c.correlate.scan_start = v; }},
        {"correlate.scan_stop", [](RunConfig& c, const std::string& v) { c.correlate.scan_stop = v; }},
        {"correlate.resolution",
         [](RunConfig& c, const std::string& v) { c.correlate.resolution = v; }},
        {"correlate.max_denominator",
         [](RunConfig& c, const std::string& v) {
             c.correlate.max_denominator = static_cast<int>(to_integer(v));
         }},
        {"correlate.prominence",
         [](RunConfig& c, const std::string& v) { c.correlate.prominence = to_double(v); }},

        {"powerlaw.k",
         [](RunConfig& c, const std::string& v) {
             c.powerlaw.exponents.clear();
             for (const auto& item : split_list(v)) {
                 c.powerlaw.exponents.push_back(to_exponent(item));
             }
         }},
        {"powerlaw.n_min",
         [](RunConfig& c, const std::string& v) { c.powerlaw.n_min = static_cast<int>(to_integer(v)); }},
        {"powerlaw.n_max",
         [](RunConfig& c, const std::string& v) { c.powerlaw.n_max = static_cast<int>(to_integer(v)); }},
        {"powerlaw.half", [](RunConfig& c, const std::string& v) { c.powerlaw.half = to_bool(v); }},
        {"powerlaw.v0", [](RunConfig& c, const std::string& v) { c.powerlaw.v0 = to_double(v); }},
        {"powerlaw.a", [](RunConfig& c, const std::string& v) { c.powerlaw.a = to_double(v); }},
        {"powerlaw.mass", [](RunConfig& c, const std::string& v) { c.powerlaw.mass = to_double(v); }},
        {"powerlaw.fit", [](RunConfig& c, const std::string& v) { c.powerlaw.fit = to_bool(v); }},
        {"powerlaw.fit_n0",
         [](RunConfig& c, const std::string& v) { c.powerlaw.fit_n0 = static_cast<int>(to_integer(v)); }},
        {"powerlaw.fit_dn", [](RunConfig& c, const std::string& v) { c.powerlaw.fit_dn = to_double(v); }},
        {"powerlaw.threshold",
         [](RunConfig& c, const std::string& v) { c.powerlaw.threshold = to_double(v); }},

        {"flatten.dx0",
         [](RunConfig& c, const std::string& v) {
             c.flatten.widths.clear();
             for (const auto& item : split_list(v)) {
                 c.flatten.widths.push_back(to_double(item));
             }
         }},
        {"flatten.epsilon", [](RunConfig& c, const std::string& v) { c.flatten.epsilon = to_double(v); }},
        {"flatten.hold",
         [](RunConfig& c, const std::string& v) { c.flatten.hold = static_cast<int>(to_integer(v)); }},
        {"flatten.step", [](RunConfig& c, const std::string& v) { c.flatten.step = v; }},
        {"flatten.span", [](RunConfig& c, const std::string& v) { c.flatten.span = to_double(v); }},
    };
    return table;
}

}  // namespace

std::uint64_t fnv1a64(std::string_view data)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : data) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string RunConfig::hash() const
{
    std::string joined;
    for (const auto& line : canonical) {
        if (line.rfind("output.path=", 0) == 0) {
            continue;
        }
        joined += line;
        joined += '\n';
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(joined)));
    return buf;
}

void RunConfig::validate() const
{
    try {
        system.validate();
        packet.validate(system);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (!(grids.p_range > 0.0) || !(grids.p_spacing > 0.0)) {
        throw ConfigError("grids: p_range and p_spacing must be positive");
    }
    if (!(correlate.threshold > 0.0 && correlate.threshold < 1.0)) {
        throw ConfigError("correlate: threshold must lie in (0, 1)");
    }
    if (correlate.max_denominator < 1 || correlate.prominence < 0.0) {
        throw ConfigError("correlate: max_denominator >= 1 and prominence >= 0 required");
    }
    if (powerlaw.n_min < 0 || powerlaw.n_max < powerlaw.n_min) {
        throw ConfigError("powerlaw: need 0 <= n_min <= n_max");
    }
    if (!(flatten.epsilon > 0.0) || flatten.hold < 1 || !(flatten.span > 0.0)) {
        throw ConfigError("flatten: epsilon > 0, hold >= 1 and span > 0 required");
    }
    for (double w : flatten.widths) {
        if (!(w > 0.0)) {
            throw ConfigError("flatten: widths must be positive");
        }
    }
}

RunConfig parse_config(std::string_view text)
{
    RunConfig config;
    std::set<std::string> seen;
    std::string section;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        auto hash_pos = raw.find_first_of("#;");
        const auto line = trim(std::string_view(raw).substr(0, hash_pos));
        if (line.empty()) {
            continue;
        }
        const auto where = "line " + std::to_string(line_no) + ": ";
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ConfigError(where + "malformed section header '" + line + "'");
            }
            section = trim(std::string_view(line).substr(1, line.size() - 2));
            const auto& table = setters();
            const auto it = table.lower_bound(section + ".");
            if (it == table.end() || it->first.rfind(section + ".", 0) != 0) {
                throw ConfigError(where + "unknown section [" + section + "]");
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(where + "expected key = value");
        }
        if (section.empty()) {
            throw ConfigError(where + "key outside of any section");
        }
        const auto key = trim(std::string_view(line).substr(0, eq));
        const auto value = trim(std::string_view(line).substr(eq + 1));
        const auto full = section + "." + key;
        const auto& table = setters();
        const auto it = table.find(full);
        if (it == table.end()) {
            throw ConfigError(where + "unknown key '" + key + "' in [" + section + "]");
        }
        if (!seen.insert(full).second) {
            throw ConfigError(where + "duplicate key '" + key + "' in [" + section + "]");
        }
        try {
            it->second(config, value);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(where + full + ": " + e.what());
        }
        config.canonical.push_back(full + "=" + value);
    }
    if (seen.count("packet.dx0") && seen.count("packet.alpha")) {
        throw ConfigError("packet: give exactly one of dx0 / alpha");
    }
    std::sort(config.canonical.begin(), config.canonical.end());
    config.validate();
    return config;
}

void apply_override(RunConfig& config, const std::string& key, const std::string& value)
{
    const auto it = setters().find(key);
    if (it == setters().end()) {
        throw ConfigError("unknown setting '" + key + "'");
    }
    try {
        it->second(config, value);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(key + ": " + e.what());
    }
    auto& lines = config.canonical;
    lines.erase(std::remove_if(lines.begin(), lines.end(),
                               [&](const std::string& l) { return l.rfind(key + "=", 0) == 0; }),
                lines.end());
    lines.push_back(key + "=" + value);
    std::sort(lines.begin(), lines.end());
    config.validate();
}

RunConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot read config file '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

double parse_time(std::string_view text, double tau, double revival)
{
    const auto t = trim(text);
    try {
        if (t.size() > 3 && t.compare(t.size() - 3, 3, "tau") == 0) {
            return to_double(std::string_view(t).substr(0, t.size() - 3)) * tau;
        }
        if (t.size() > 1 && t.back() == 'T') {
            return to_double(std::string_view(t).substr(0, t.size() - 1)) * revival;
        }
        return to_double(t);
    } catch (const std::invalid_argument&) {
        throw ConfigError("invalid time value '" + t + "'");
    }
}

TimeSchedule resolve_schedule(const ScheduleConfig& schedule, const TimeScaleReport& scales)
{
    auto time = [&](const std::string& s) { return parse_time(s, scales.tau, scales.revival); };
    try {
        switch (schedule.mode) {
        case ScheduleMode::stroboscopic:
            return TimeSchedule::stroboscopic(scales.tau, schedule.first, schedule.last,
                                              schedule.offset);
        case ScheduleMode::dense:
            if (schedule.step) {
                return TimeSchedule::stepped(time(schedule.start), time(schedule.stop),
                                             time(*schedule.step));
            }
            return TimeSchedule::dense(time(schedule.start), time(schedule.stop),
                                       schedule.count.value_or(401));
        case ScheduleMode::explicit_list: {
            std::vector<double> ts;
            for (const auto& s : schedule.times) {
                ts.push_back(time(s));
            }
            return TimeSchedule::explicit_times(std::move(ts));
        }
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("schedule: ") + e.what());
    }
    throw ConfigError("schedule: unknown mode");
}

}  // namespace revivals::cli
