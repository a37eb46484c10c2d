// jcdamp: scenario runner for the driven Jaynes-Cummings damping-basis model.
//
//   jcdamp fig1 --config run.ini --out results/ --format csv
//
// exit codes: 0 ok, 1 a validation/tolerance check failed, 2 bad config,
// parameters or output path

#include <filesystem>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "jcdamp_cli/config.hpp"
#include "jcdamp_cli/scenarios.hpp"

namespace cli = jcdamp::cli;

namespace {

constexpr int kOk = 0;
constexpr int kValidationFailed = 1;
constexpr int kConfigError = 2;

void print_summary(const cli::ScenarioResult& r,
                   const std::vector<std::filesystem::path>& written) {
    for (const auto& w : r.warnings) fmt::print(stderr, "warning: {}\n", w);
    for (const auto& ch : r.checks)
        fmt::print("{:<46} {:>12.4e} <= {:<10.3e} {}\n", ch.name, ch.value, ch.tolerance,
                   ch.passed ? "PASS" : "FAIL");
    fmt::print("{}\n", r.summary.dump(1));
    for (const auto& p : written) fmt::print("wrote {}\n", p.string());
    fmt::print("{}: {}\n", cli::to_string(r.scenario), r.passed ? "ok" : "FAILED");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weakly driven Jaynes-Cummings model: damping-basis observables"};
    app.require_subcommand(1);
    app.fallthrough();

    std::optional<std::string> config_path;
    std::string out_dir = ".";
    std::optional<std::string> format;
    bool allow_strong = false;
    app.add_option("--config", config_path, "INI file ([model] [bath] [state] [grid] [scenario] [output])");
    app.add_option("--out", out_dir, "output directory (created if missing)");
    app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_flag("--allow-strong-drive", allow_strong,
                 "downgrade the weak-drive guard to a warning");

    for (const char* name : {"fig1", "fig2", "fig3", "fig4", "validate", "sweep"}) {
        auto* sub = app.add_subcommand(name);
        sub->fallthrough();
    }
    app.get_subcommand("fig1")->description("excited-state population, closed form vs oracle");
    app.get_subcommand("fig2")->description("quadrature noise spectrum and peak finder");
    app.get_subcommand("fig3")->description("decoherence factor for several c_e/c_g");
    app.get_subcommand("fig4")->description("phase dependence of the decoherence shift");
    app.get_subcommand("validate")->description("invariant suite; exits 1 on any failure");
    app.get_subcommand("sweep")->description("fig1 comparison over a list of drives, in parallel");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfigError;
    }

    const cli::Scenario scenario = cli::parse_scenario(app.get_subcommands().front()->get_name());
    cli::ScenarioConfig config;
    std::filesystem::path out(out_dir);
    try {
        std::optional<std::filesystem::path> path;
        if (config_path) path = *config_path;
        config = cli::load_config(scenario, path);
        if (format) config.format = cli::parse_format(*format);
        if (allow_strong) config.model.allow_strong_drive = true;
        cli::validate_config(config);
        std::filesystem::create_directories(out);
    } catch (const std::exception& e) {
        fmt::print(stderr, "config error: {}\n", e.what());
        return kConfigError;
    }

    try {
        const cli::ScenarioResult result = cli::run_scenario(config, out);
        const auto written = cli::write_result(result, config, out);
        print_summary(result, written);
        return result.passed ? kOk : kValidationFailed;
    } catch (const jcdamp::ParameterError& e) {
        fmt::print(stderr, "parameter error: {}\n", e.what());
        return kConfigError;
    } catch (const std::filesystem::filesystem_error& e) {
        fmt::print(stderr, "output error: {}\n", e.what());
        return kConfigError;
    } catch (const std::exception& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return kValidationFailed;
    }
}
