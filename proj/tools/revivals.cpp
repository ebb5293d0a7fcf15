// Command-line driver: each subcommand loads an INI config, applies overrides
// and writes its tables/reports into the output directory.

#include <cstdio>
#include <exception>
#include <functional>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "revivals/cli_io/config.hpp"
#include "revivals/cli_io/runs.hpp"
#include "revivals/errors.hpp"
#include "revivals/parallel.hpp"

namespace {

using revivals::cli::RunConfig;
using revivals::cli::RunResult;

enum ExitCode { kOk = 0, kConfig = 1, kNumerical = 2, kIo = 3 };

struct Common {
    std::string config_path;
    std::optional<std::string> out;
    std::optional<std::string> format;
    std::optional<int> precision;
    unsigned threads = 1;
};

RunConfig load(const Common& c)
{
    RunConfig config = c.config_path.empty() ? revivals::cli::parse_config("")
                                             : revivals::cli::load_config(c.config_path);
    if (c.out) {
        revivals::cli::apply_override(config, "output.path", *c.out);
    }
    if (c.format) {
        revivals::cli::apply_override(config, "output.format", *c.format);
    }
    if (c.precision) {
        revivals::cli::apply_override(config, "output.precision", std::to_string(*c.precision));
    }
    return config;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Wave-packet revivals in the infinite square well and power-law wells"};
    app.require_subcommand(1);

    Common common;
    std::function<RunResult(const RunConfig&)> action;

    auto add = [&](const char* name, const char* help, RunResult (*fn)(const RunConfig&)) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("-c,--config", common.config_path, "INI configuration file")->check(CLI::ExistingFile);
        sub->add_option("-o,--out", common.out, "output directory (overrides [output] path)");
        sub->add_option("--format", common.format, "csv or json");
        sub->add_option("--precision", common.precision, "significant digits in text output");
        sub->add_option("-j,--threads", common.threads, "worker threads (0 = all cores)");
        sub->callback([&action, fn] { action = fn; });
    };
    add("evolve", "position/momentum densities at explicit times", revivals::cli::run_evolve);
    add("observables", "<x>, dx, <p>, dp with reference curves", revivals::cli::run_observables);
    add("correlate", "autocorrelation, collapse fit and revival scan", revivals::cli::run_correlate);
    add("powerlaw", "WKB spectra and time scales for power-law wells", revivals::cli::run_powerlaw);
    add("scan-flatten", "flattening of dx for several initial widths", revivals::cli::run_scan_flatten);
    add("timescales", "analytic time scales of the configured packet", revivals::cli::run_timescales);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfig;
    }

    try {
        revivals::set_thread_count(common.threads);
        const RunConfig config = load(common);
        const RunResult result = action(config);
        for (const auto& f : result.files) {
            std::printf("%s\n", f.string().c_str());
        }
        return kOk;
    } catch (const revivals::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kConfig;
    } catch (const revivals::IoError& e) {
        std::fprintf(stderr, "i/o error: %s\n", e.what());
        return kIo;
    } catch (const revivals::FitError& e) {
        std::fprintf(stderr, "fit error: %s\n", e.what());
        return kNumerical;
    } catch (const revivals::NumericalConsistencyError& e) {
        std::fprintf(stderr, "numerical error: %s\n", e.what());
        return kNumerical;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kConfig;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "numerical error: %s\n", e.what());
        return kNumerical;
    }
}
