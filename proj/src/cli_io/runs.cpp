#include "revivals/cli_io/runs.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "revivals/cli_io/writers.hpp"
#include "revivals/correlation.hpp"
#include "revivals/errors.hpp"
#include "revivals/evolution.hpp"
#include "revivals/observables.hpp"
#include "revivals/parallel.hpp"
#include "revivals/powerlaw.hpp"
#include "revivals/timescales.hpp"

namespace revivals::cli {

namespace fs = std::filesystem;

namespace {

std::string indexed_name(const char* stem, std::size_t index, const char* ext)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s_%03zu.%s", stem, index, ext);
    return buf;
}

CsvTable make_table(const RunConfig& config, const char* command, std::vector<std::string> columns)
{
    CsvTable table(std::move(columns));
    table.add_metadata(std::string("revivals ") + command);
    table.add_metadata(std::string("schema_version: ") + kSchemaVersion);
    table.add_metadata("config_hash: " + config.hash());
    return table;
}

fs::path output_dir(const RunConfig& config)
{
    fs::path dir(config.output.path);
    ensure_directory(dir);
    return dir;
}

EigenExpansion build_packet(const RunConfig& config)
{
    try {
        return build_gaussian_packet(config.packet, config.system);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

std::string num(const RunConfig& config, double v)
{
    return format_number(v, config.output.precision);
}

void write_json(const fs::path& path, const nlohmann::json& j)
{
    write_text(path, j.dump(2) + "\n");
}

nlohmann::json columns_json(const std::vector<std::string>& names,
                            const std::vector<std::vector<double>>& columns)
{
    nlohmann::json body = nlohmann::json::object();
    for (std::size_t i = 0; i < names.size(); ++i) {
        body[names[i]] = columns[i];
    }
    return body;
}

RunResult emit_columns(const RunConfig& config, const char* command, const char* stem,
                       const std::vector<std::string>& names,
                       const std::vector<std::vector<double>>& columns,
                       const std::vector<std::string>& extra_metadata = {})
{
    const fs::path dir = output_dir(config);
    RunResult result;
    if (config.output.format == OutputFormat::json) {
        auto body = columns_json(names, columns);
        const auto path = dir / (std::string(stem) + ".json");
        write_json(path, make_envelope(command, config.hash(), std::move(body)));
        result.files.push_back(path);
        return result;
    }
    auto table = make_table(config, command, names);
    for (const auto& m : extra_metadata) {
        table.add_metadata(m);
    }
    const std::size_t rows = columns.empty() ? 0 : columns.front().size();
    for (std::size_t r = 0; r < rows; ++r) {
        std::vector<std::string> cells;
        cells.reserve(columns.size());
        for (const auto& col : columns) {
            cells.push_back(num(config, col[r]));
        }
        table.add_row(std::move(cells));
    }
    const auto path = dir / (std::string(stem) + ".csv");
    write_text(path, table.render());
    result.files.push_back(path);
    return result;
}

}  // namespace

RunResult run_evolve(const RunConfig& config)
{
    config.validate();
    if (config.schedule.mode != ScheduleMode::explicit_list) {
        throw ConfigError("evolve: requires [schedule] mode = explicit with a times list");
    }
    const auto scales = compute_timescales(config.system, config.packet);
    const auto schedule = resolve_schedule(config.schedule, scales);
    RunResult result;
    if (schedule.size() == 0) {
        return result;
    }
    const auto expansion = build_packet(config);
    const fs::path dir = output_dir(config);
    const bool want_x = config.evolve.representation != Representation::momentum;
    const bool want_p = config.evolve.representation != Representation::position;
    const auto xgrid = SpatialGrid::uniform(config.system, config.grids.x_points);
    const double p0 = level_momentum(config.packet.n0, config.system);
    const double dp0 = initial_moments(config.packet, config.system).dp0;
    const auto pgrid = MomentumGrid::symmetric(config.grids.p_range * p0, config.grids.p_spacing * dp0);

    auto emit = [&](const WaveField& field, const char* stem, const char* coord, std::size_t index) {
        const auto density = probability_density(field);
        fs::path path;
        if (config.output.format == OutputFormat::json) {
            nlohmann::json body = {{"time", field.time},
                                   {"representation", stem},
                                   {coord, field.coordinates},
                                   {"density", density}};
            path = dir / indexed_name(stem, index, "json");
            write_json(path, make_envelope("evolve", config.hash(), std::move(body)));
        } else {
            auto table = make_table(config, "evolve", {coord, "density"});
            table.add_metadata("representation: " + std::string(stem));
            table.add_metadata("time: " + format_number(field.time, 17));
            for (std::size_t i = 0; i < density.size(); ++i) {
                table.add_row({num(config, field.coordinates[i]), num(config, density[i])});
            }
            path = dir / indexed_name(stem, index, "csv");
            write_text(path, table.render());
        }
        result.files.push_back(path);
    };

    for (std::size_t i = 0; i < schedule.size(); ++i) {
        const double t = schedule.times()[i];
        if (want_x) {
            emit(position_wavefunction(expansion, xgrid, t), "position", "x", i);
        }
        if (want_p) {
            emit(momentum_wavefunction(expansion, pgrid, t), "momentum", "p", i);
        }
    }
    return result;
}

RunResult run_observables(const RunConfig& config)
{
    config.validate();
    const auto scales = compute_timescales(config.system, config.packet);
    const auto schedule = resolve_schedule(config.schedule, scales);
    const auto expansion = build_packet(config);
    const auto table = build_matrix_elements(expansion.window(), config.system);
    const auto flat = flat_reference(config.system);
    const auto flat_p = flat_momentum_reference(config.packet, config.system);
    const double dx0 = config.packet.width_value(config.system);
    const double v0 = level_momentum(config.packet.n0, config.system) / config.system.mass;

    const auto& ts = schedule.times();
    std::vector<MomentSnapshot> snaps(ts.size());
    parallel_for(ts.size(), [&](std::size_t i) { snaps[i] = moments(expansion, table, ts[i]); });

    const std::vector<std::string> names{"t",        "x_mean",      "dx",          "p_mean",
                                         "dp",       "dx_free",     "x_classical", "v_classical",
                                         "x_flat",   "dx_flat",     "p_flat",      "dp_flat"};
    std::vector<std::vector<double>> cols(names.size());
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const auto cl = classical_trajectory(ts[i], config.packet.x0, v0, config.system);
        const double row[] = {ts[i],
                              snaps[i].x_mean,
                              snaps[i].x_spread,
                              snaps[i].p_mean,
                              snaps[i].p_spread,
                              free_gaussian_spread(dx0, scales.spreading, ts[i]),
                              cl.position,
                              cl.velocity,
                              flat.x_mean,
                              flat.x_spread,
                              flat_p.p_mean,
                              flat_p.p_spread};
        for (std::size_t c = 0; c < names.size(); ++c) {
            cols[c].push_back(row[c]);
        }
    }
    return emit_columns(config, "observables", "observables", names, cols,
                        {"tau: " + format_number(scales.tau, 17),
                         "revival: " + format_number(scales.revival, 17)});
}

RevivalScanReport compute_revival_scan(const RunConfig& config)
{
    const auto scales = compute_timescales(config.system, config.packet);
    const auto expansion = build_packet(config);
    RevivalScanReport report;
    report.start = parse_time(config.correlate.scan_start, scales.tau, scales.revival);
    report.stop = parse_time(config.correlate.scan_stop, scales.tau, scales.revival);
    report.resolution = parse_time(config.correlate.resolution, scales.tau, scales.revival);
    report.max_denominator = config.correlate.max_denominator;
    report.prominence = config.correlate.prominence;
    try {
        report.peaks = revival_scan(expansion, report.start, report.stop, report.resolution,
                                    {report.max_denominator, report.prominence});
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("correlate scan: ") + e.what());
    }
    return report;
}

RunResult run_correlate(const RunConfig& config)
{
    config.validate();
    const auto scales = compute_timescales(config.system, config.packet);
    const auto schedule = resolve_schedule(config.schedule, scales);
    const auto expansion = build_packet(config);

    const auto& ts = schedule.times();
    std::vector<std::vector<double>> cols(3, std::vector<double>(ts.size()));
    parallel_for(ts.size(), [&](std::size_t i) {
        cols[0][i] = ts[i];
        cols[1][i] = std::abs(autocorrelation(expansion, ts[i]));
        cols[2][i] = std::abs(mirror_correlation(expansion, ts[i]));
    });
    auto result = emit_columns(config, "correlate", "correlation", {"t", "abs_C", "abs_Cbar"}, cols);

    const fs::path dir = output_dir(config);
    if (config.correlate.fit) {
        const auto fit = fit_collapse(expansion, scales.tau, config.correlate.threshold);
        nlohmann::json body = fit;
        body["predicted"] = scales.collapse;
        const auto path = dir / "collapse_fit.json";
        write_json(path, make_envelope("collapse_fit", config.hash(), std::move(body)));
        result.files.push_back(path);
    }
    if (config.correlate.scan) {
        const auto report = compute_revival_scan(config);
        const auto path = dir / "revival_scan.json";
        write_json(path, make_envelope("revival_scan", config.hash(), report));
        result.files.push_back(path);
    }
    return result;
}

namespace {

PowerLawWell make_well(const RunConfig& config, const std::optional<double>& k)
{
    const auto& pl = config.powerlaw;
    const double mass = pl.mass.value_or(config.system.mass);
    try {
        if (!k) {
            return PowerLawWell::box_limit(pl.a, mass, pl.half, config.system.hbar);
        }
        return PowerLawWell::finite(*k, pl.v0, pl.a, mass, pl.half, config.system.hbar);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("powerlaw: ") + e.what());
    }
}

std::string exponent_text(const RunConfig& config, const std::optional<double>& k)
{
    return k ? format_number(*k, config.output.precision) : "inf";
}

}  // namespace

PowerLawFitReport compute_powerlaw_fits(const RunConfig& config)
{
    PowerLawFitReport report;
    const auto& pl = config.powerlaw;
    for (const auto& k : pl.exponents) {
        const auto well = make_well(config, k);
        PowerLawFitEntry entry;
        entry.exponent = k;
        entry.half = pl.half;
        entry.n0 = pl.fit_n0;
        entry.dn = pl.fit_dn;
        entry.predicted = powerlaw_collapse_time(well, pl.fit_n0, pl.fit_dn);
        if (well.is_oscillator()) {
            entry.error = "periodic: no collapse";
        } else {
            try {
                const auto levels = gaussian_level_weights(pl.fit_n0, pl.fit_dn);
                entry.fit = fit_powerlaw_collapse(well, levels, pl.fit_n0, pl.threshold);
            } catch (const FitError& e) {
                entry.error = e.what();
            }
        }
        report.entries.push_back(std::move(entry));
    }
    return report;
}

RunResult run_powerlaw(const RunConfig& config)
{
    config.validate();
    const auto& pl = config.powerlaw;
    const fs::path dir = output_dir(config);
    RunResult result;

    struct Row {
        std::optional<double> k;
        int n;
        double energy;
        double period;
        std::optional<double> revival;
    };
    std::vector<Row> rows;
    for (const auto& k : pl.exponents) {
        const auto well = make_well(config, k);
        for (int n = pl.n_min; n <= pl.n_max; ++n) {
            Row row{k, n, wkb_energy(well, n), classical_period_powerlaw(well, n), std::nullopt};
            if (n >= 1) {
                row.revival = revival_time_powerlaw(well, n);
            }
            rows.push_back(row);
        }
    }

    if (config.output.format == OutputFormat::json) {
        nlohmann::json body = nlohmann::json::array();
        for (const auto& r : rows) {
            body.push_back({{"k", r.k ? nlohmann::json(*r.k) : nlohmann::json("inf")},
                            {"half", pl.half},
                            {"n", r.n},
                            {"energy", r.energy},
                            {"period", r.period},
                            {"revival", r.revival ? nlohmann::json(*r.revival)
                                                  : nlohmann::json(r.n >= 1 ? "periodic" : "")}});
        }
        const auto path = dir / "powerlaw.json";
        write_json(path, make_envelope("powerlaw", config.hash(), std::move(body)));
        result.files.push_back(path);
    } else {
        auto table = make_table(config, "powerlaw", {"k", "half", "n", "energy", "period", "revival"});
        for (const auto& r : rows) {
            std::string revival = r.revival ? num(config, *r.revival) : (r.n >= 1 ? "periodic" : "");
            table.add_row({exponent_text(config, r.k), pl.half ? "1" : "0", std::to_string(r.n),
                           num(config, r.energy), num(config, r.period), std::move(revival)});
        }
        const auto path = dir / "powerlaw.csv";
        write_text(path, table.render());
        result.files.push_back(path);
    }

    if (pl.fit) {
        const auto report = compute_powerlaw_fits(config);
        const auto path = dir / "powerlaw_fits.json";
        write_json(path, make_envelope("powerlaw_fits", config.hash(), report));
        result.files.push_back(path);
    }
    return result;
}

FlattenSummary compute_flatten_summary(const RunConfig& config, std::vector<TimeSeries>* series)
{
    FlattenSummary summary;
    summary.epsilon = config.flatten.epsilon;
    summary.hold = config.flatten.hold;
    std::vector<double> log_w;
    std::vector<double> log_t;
    for (double width : config.flatten.widths) {
        PacketSpec spec = config.packet;
        spec.dx0 = width;
        spec.alpha.reset();
        EigenExpansion expansion = [&] {
            try {
                return build_gaussian_packet(spec, config.system);
            } catch (const std::invalid_argument& e) {
                throw ConfigError(e.what());
            }
        }();
        const auto scales = compute_timescales(config.system, spec);
        const double step = parse_time(config.flatten.step, scales.tau, scales.revival);
        const auto schedule =
            TimeSchedule::stepped(0.0, config.flatten.span * scales.flattening, step);
        const auto table = build_matrix_elements(expansion.window(), config.system);
        auto dx = sample_series(expansion, table, SeriesQuantity::x_spread, schedule);
        dx.metadata["dx0"] = format_number(width, 17);

        FlattenEntry entry;
        entry.dx0 = width;
        entry.detected = detect_flattening(dx, config.system, config.flatten.epsilon, config.flatten.hold);
        entry.flattening = scales.flattening;
        entry.crossing = scales.crossing;
        if (entry.detected && *entry.detected > 0.0) {
            log_w.push_back(std::log(width));
            log_t.push_back(std::log(*entry.detected));
        }
        summary.entries.push_back(entry);
        if (series) {
            series->push_back(std::move(dx));
        }
    }
    if (log_w.size() >= 2) {
        double mw = 0.0, mt = 0.0;
        for (std::size_t i = 0; i < log_w.size(); ++i) {
            mw += log_w[i];
            mt += log_t[i];
        }
        mw /= static_cast<double>(log_w.size());
        mt /= static_cast<double>(log_w.size());
        double sxy = 0.0, sxx = 0.0;
        for (std::size_t i = 0; i < log_w.size(); ++i) {
            sxy += (log_w[i] - mw) * (log_t[i] - mt);
            sxx += (log_w[i] - mw) * (log_w[i] - mw);
        }
        if (sxx > 0.0) {
            summary.slope = sxy / sxx;
        }
    }
    return summary;
}

RunResult run_scan_flatten(const RunConfig& config)
{
    config.validate();
    std::vector<TimeSeries> series;
    const auto summary = compute_flatten_summary(config, &series);
    const fs::path dir = output_dir(config);
    RunResult result;
    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto& s = series[i];
        fs::path path;
        if (config.output.format == OutputFormat::json) {
            nlohmann::json body = {{"dx0", summary.entries[i].dx0}, {"t", s.times}, {"dx", s.values}};
            path = dir / indexed_name("flatten", i, "json");
            write_json(path, make_envelope("flatten_series", config.hash(), std::move(body)));
        } else {
            auto table = make_table(config, "scan-flatten", {"t", "dx"});
            table.add_metadata("dx0: " + format_number(summary.entries[i].dx0, 17));
            for (std::size_t r = 0; r < s.times.size(); ++r) {
                table.add_row({num(config, s.times[r]), num(config, s.values[r])});
            }
            path = dir / indexed_name("flatten", i, "csv");
            write_text(path, table.render());
        }
        result.files.push_back(path);
    }
    const auto path = dir / "flatten_summary.json";
    write_json(path, make_envelope("flatten_summary", config.hash(), summary));
    result.files.push_back(path);
    return result;
}

RunResult run_timescales(const RunConfig& config)
{
    config.validate();
    const auto scales = compute_timescales(config.system, config.packet);
    const fs::path dir = output_dir(config);
    RunResult result;
    if (config.output.format == OutputFormat::json) {
        const auto path = dir / "timescales.json";
        write_json(path, make_envelope("timescales", config.hash(), scales));
        result.files.push_back(path);
        return result;
    }
    auto table = make_table(config, "timescales", {"name", "value"});
    const std::pair<const char*, double> rows[] = {{"tau", scales.tau},
                                                   {"revival", scales.revival},
                                                   {"spreading", scales.spreading},
                                                   {"collapse", scales.collapse},
                                                   {"flattening", scales.flattening},
                                                   {"crossing", scales.crossing}};
    for (const auto& [name, value] : rows) {
        table.add_row({name, num(config, value)});
    }
    const auto path = dir / "timescales.csv";
    write_text(path, table.render());
    result.files.push_back(path);
    return result;
}

}  // namespace revivals::cli
