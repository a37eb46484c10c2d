#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "jcdamp/liouvillian.hpp"
#include "jcdamp/model.hpp"
#include "jcdamp/observables.hpp"

namespace jcdamp::cli {

/// Malformed or inconsistent configuration (exit code 2).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Scenario { fig1, fig2, fig3, fig4, validate, sweep };
enum class OutputFormat { csv, json };

Scenario parse_scenario(std::string_view name);
std::string_view to_string(Scenario s);
OutputFormat parse_format(std::string_view name);
std::string_view to_string(OutputFormat f);

struct ModelSection {
    double omega_z_ghz = 5.0;
    double coupling = 0.2;   ///< Omega / omega_z
    double drive = 0.1;      ///< xi / omega_z
    double cavity_ratio = 1.0;
    double weak_drive_threshold = 0.5;
    bool allow_strong_drive = false;
};

struct BathSection {
    BathSpec::Kind kind = BathSpec::Kind::direct_rates;
    double gamma_minus = 0.002;
    double gamma_plus = 0.006;
    double kappa = 1.0;
    double cutoff = 0.2;  ///< omega_C / omega_z
    double temperature = 0.0;
};

struct GridSection {
    double t_max = 200.0;
    std::size_t n_points = 4001;
    double omega_min = 0.6;
    double omega_max = 1.4;
    std::size_t n_omega = 16001;
};

/// Everything a scenario run needs, in units of omega_z.
struct ScenarioConfig {
    Scenario scenario = Scenario::fig1;
    ModelSection model;
    BathSection bath;
    double ce_over_cg = 1.0;
    double phi = 0.0;
    GridSection grid;
    std::vector<double> xi_values;
    std::vector<double> ratios;
    std::vector<double> phases;  ///< radians
    std::size_t workers = 0;     ///< 0: hardware concurrency
    OutputFormat format = OutputFormat::csv;

    ModelParams params() const;
    ModelParams params(double drive) const;
    BathSpec bath_spec() const;
    InitialQubitState state() const;
    std::vector<double> time_grid() const;
    std::vector<double> omega_grid() const;
};

/// Built-in defaults for a scenario.
ScenarioConfig default_config(Scenario scenario);

/// Defaults overlaid with an INI file. Unknown sections or keys, bad numbers
/// and conflicting unit choices raise ConfigError. Physics checks happen in
/// validate_config().
ScenarioConfig load_config(Scenario scenario, const std::optional<std::filesystem::path>& path);

/// Grid sanity plus the library's own parameter checks; throws ConfigError or
/// ParameterError.
void validate_config(const ScenarioConfig& config);

/// Resolved configuration, written next to every data file.
nlohmann::ordered_json to_json(const ScenarioConfig& config);

}  // namespace jcdamp::cli
