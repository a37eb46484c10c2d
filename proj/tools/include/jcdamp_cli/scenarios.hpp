#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "jcdamp_cli/config.hpp"
#include "jcdamp_cli/output.hpp"

namespace jcdamp::cli {

/// One line of the invariant report.
struct Check {
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

struct ScenarioResult {
    Scenario scenario = Scenario::fig1;
    std::vector<Table> tables;
    std::vector<Check> checks;  ///< validate only
    nlohmann::ordered_json summary;
    std::vector<std::string> warnings;
    std::vector<std::filesystem::path> written;  ///< files already on disk (sweep)
    bool passed = true;
};

ScenarioResult run_fig1(const ScenarioConfig& config);
ScenarioResult run_fig2(const ScenarioConfig& config);
ScenarioResult run_fig3(const ScenarioConfig& config);
ScenarioResult run_fig4(const ScenarioConfig& config);
ScenarioResult run_validate(const ScenarioConfig& config);
/// Fans the xi values out to a worker pool. Each worker writes its own
/// sweep_xi_<xi> table and sidecar into out_dir.
ScenarioResult run_sweep(const ScenarioConfig& config, const std::filesystem::path& out_dir);

ScenarioResult run_scenario(const ScenarioConfig& config, const std::filesystem::path& out_dir);

/// Invariant suite for one parameter point: eigen-relations, Liouvillian
/// spectrum, trace/Hermiticity/positivity, xi -> 0 reductions, KMS, and the
/// closed-form vs oracle agreements.
std::vector<Check> invariant_suite(const ScenarioConfig& config);

/// Writes the result tables, a <table>.config.json sidecar for each, and
/// <scenario>.summary.json. Returns every path written.
std::vector<std::filesystem::path> write_result(const ScenarioResult& result,
                                                const ScenarioConfig& config,
                                                const std::filesystem::path& out_dir);

/// L2 distance sqrt(int (a - b)^2 dt) by the trapezoid rule.
double l2_distance(std::span<const double> t, std::span<const double> a,
                   std::span<const double> b);

}  // namespace jcdamp::cli
