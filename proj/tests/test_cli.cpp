#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "jcdamp_cli/config.hpp"
#include "jcdamp_cli/output.hpp"
#include "jcdamp_cli/scenarios.hpp"

using namespace jcdamp;
using namespace jcdamp::cli;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("jcdamp_test_" + tag);
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

fs::path write_ini(const fs::path& dir, const std::string& text) {
    const auto p = dir / "config.ini";
    std::ofstream(p) << text;
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

ScenarioConfig small(Scenario s) {
    ScenarioConfig c = default_config(s);
    c.grid.t_max = 40.0;
    c.grid.n_points = 401;
    return c;
}

}  // namespace

TEST_CASE("config: defaults per scenario") {
    const auto f1 = default_config(Scenario::fig1);
    CHECK(f1.model.coupling == 0.2);
    CHECK(f1.bath.gamma_minus == 0.002);
    CHECK(f1.bath.gamma_plus == 0.006);
    CHECK(f1.xi_values == std::vector<double>{0.02, 0.1});
    const auto f2 = default_config(Scenario::fig2);
    CHECK(f2.xi_values == std::vector<double>{0.0, 0.2});
    CHECK(f2.bath.kind == BathSpec::Kind::ohmic);
    const auto f3 = default_config(Scenario::fig3);
    CHECK(f3.bath.gamma_minus == 0.05);
    CHECK(f3.bath.gamma_plus == 0.055);
    CHECK(f3.ratios == std::vector<double>{0.1, 1.0, 100.0});
    const auto f4 = default_config(Scenario::fig4);
    CHECK(f4.phases.size() == 5);
    CHECK(f4.grid.t_max == doctest::Approx(4.0 * std::numbers::pi / 0.5));
}

TEST_CASE("config: INI overlay, GHz conversion and lists") {
    TempDir dir("ini");
    const auto p = write_ini(dir.path, R"(
[model]
omega_z_ghz = 4
omega_ghz = 0.8
xi_ratio = 0.05

[bath]
kind = ohmic
kappa = 0.5
omega_cutoff_ghz = 1

[state]
ce_over_cg = 2
phi = 0.3

[grid]
t_max = 50
n_points = 101

[scenario]
xi_values = 0.01, 0.03
phases_over_pi = 0, 1
workers = 3

[output]
format = json
)");
    const ScenarioConfig c = load_config(Scenario::fig4, p);
    CHECK(c.model.coupling == doctest::Approx(0.2));
    CHECK(c.model.drive == 0.05);
    CHECK(c.bath.kind == BathSpec::Kind::ohmic);
    CHECK(c.bath.cutoff == doctest::Approx(0.25));
    CHECK(c.ce_over_cg == 2.0);
    CHECK(c.grid.t_max == 50.0);
    CHECK(c.xi_values == std::vector<double>{0.01, 0.03});
    CHECK(c.phases[1] == doctest::Approx(std::numbers::pi));
    CHECK(c.workers == 3);
    CHECK(c.format == OutputFormat::json);
    CHECK_NOTHROW(validate_config(c));
}

TEST_CASE("config: malformed input is a ConfigError") {
    TempDir dir("bad");
    auto expect_error = [&](const std::string& text) {
        const auto p = write_ini(dir.path, text);
        CHECK_THROWS_AS(load_config(Scenario::fig1, p), ConfigError);
    };
    expect_error("[model]\nomega_ratio = 0.2x\n");
    expect_error("[model]\nunknown = 1\n");
    expect_error("[nonsense]\na = 1\n");
    expect_error("[model]\nomega_ratio = 0.2\nomega_ghz = 1\n");
    expect_error("[bath]\nkind = thermal\n");
    expect_error("[grid]\nn_points = -3\n");
    expect_error("[output]\nformat = xml\n");
    expect_error("[model\n");
    CHECK_THROWS_AS(load_config(Scenario::fig1, dir.path / "missing.ini"), ConfigError);
}

TEST_CASE("config: physics checks at load") {
    ScenarioConfig c = default_config(Scenario::fig1);
    c.model.drive = 0.5;  // xi / (1 - Omega) = 0.625
    CHECK_THROWS_AS(validate_config(c), DriveGuardError);
    c.model.allow_strong_drive = true;
    CHECK_NOTHROW(validate_config(c));

    ScenarioConfig detuned = default_config(Scenario::fig1);
    detuned.model.cavity_ratio = 1.1;
    CHECK_THROWS_AS(validate_config(detuned), ParameterError);

    ScenarioConfig grid = default_config(Scenario::fig1);
    grid.grid.t_max = 0.0;
    CHECK_THROWS_AS(validate_config(grid), ConfigError);
    grid = default_config(Scenario::fig1);
    grid.xi_values.clear();
    CHECK_THROWS_AS(validate_config(grid), ConfigError);

    ScenarioConfig rates = default_config(Scenario::fig1);
    rates.bath.gamma_minus = -1.0;
    CHECK_THROWS_AS(validate_config(rates), ParameterError);
}

TEST_CASE("output: CSV formatting is round-trip exact") {
    Table t("x");
    t.add_column("a", {0.1, 1.0 / 3.0});
    t.add_column("b", {-2.5e-300, 7.0});
    const std::string csv = to_csv(t);
    CHECK(csv.rfind("a,b\n0.10000000000000001,", 0) == 0);
    CHECK(csv.find("\n0.33333333333333331,7\n") != std::string::npos);
    // every printed value parses back to the same double
    const auto row = csv.substr(csv.find('\n') + 1);
    CHECK(std::stod(row.substr(0, row.find(','))) == 0.1);
    CHECK(std::stod(row.substr(row.find(',') + 1)) == -2.5e-300);
    CHECK(std::stod("0.33333333333333331") == 1.0 / 3.0);
    CHECK_THROWS(t.add_column("c", {1.0}));
    CHECK(compact(0.02) == "0.02");
}

TEST_CASE("fig1: columns, t = 0 value and oracle tolerance") {
    const ScenarioResult r = run_fig1(small(Scenario::fig1));
    REQUIRE(r.tables.size() == 1);
    const Table& t = r.tables[0];
    CHECK(t.headers() == std::vector<std::string>{
                             "t", "Pe_analytic_xi0", "Pe_analytic_xi_0.02", "Pe_oracle_xi_0.02",
                             "delta_Pe_xi_0.02", "Pe_analytic_xi_0.1", "Pe_oracle_xi_0.1",
                             "delta_Pe_xi_0.1"});
    CHECK(t.column("Pe_analytic_xi0")[0] == 1.0);
    CHECK(r.passed);
    for (const auto& s : r.summary["series"]) {
        const double xi = s["xi"].get<double>();
        CHECK(s["max_abs_diff"].get<double>() <= 20.0 * xi * xi * xi);
    }
}

TEST_CASE("fig2: undriven splitting is 2 Omega, driven one matches the formula") {
    ScenarioConfig c = default_config(Scenario::fig2);
    const ScenarioResult r = run_fig2(c);
    CHECK(r.passed);
    const auto& s = r.summary["spectra"];
    CHECK(s[0]["splitting_peaks"].get<double>() == doctest::Approx(0.4).epsilon(1e-9));
    CHECK(s[0]["splitting_equals_2_omega"].get<bool>());
    const double spacing = r.summary["grid_spacing"].get<double>();
    CHECK(std::abs(s[1]["splitting_peaks"].get<double>() - 0.39166666666666666) <= spacing);
    CHECK(s[1]["lines_move_away_from_zero_unequally"].get<bool>());
    const Table& peaks = r.tables[1];
    CHECK(peaks.rows() == 2);
    // gamma_+ < gamma_- for the ohmic bath: the omega_+ line is taller
    CHECK(peaks.column("peak_plus_height")[1] > peaks.column("peak_minus_height")[1]);
}

TEST_CASE("fig3: equal populations stay closest to the undriven factor") {
    ScenarioConfig c = default_config(Scenario::fig3);
    const ScenarioResult r = run_fig3(c);
    CHECK(r.passed);
    CHECK(r.summary["closest_to_D0_ratio"].get<double>() == 1.0);
    for (double v : r.tables[0].column("D_ratio_1")) CHECK(v >= 0.0);
}

TEST_CASE("fig4: antisymmetric pair, distinct pi/2 column, period markers") {
    const ScenarioResult r = run_fig4(default_config(Scenario::fig4));
    CHECK(r.passed);
    CHECK(r.summary["antisymmetry_passed"].get<bool>());
    CHECK(r.summary["undamped_periodic"].get<bool>());
    const double period = r.summary["period_omega_t_2pi"].get<double>();
    CHECK(period == doctest::Approx(2.0 * std::numbers::pi / 0.5));
    CHECK(r.summary["period_markers"].size() == 2);
    const Table& t = r.tables[0];
    const auto& a = t.column("delta_D_phi_0pi");
    const auto& b = t.column("delta_D_phi_1pi");
    const auto& h = t.column("delta_D_phi_0.5pi");
    double apart = 0.0;
    for (std::size_t k = 0; k < t.rows(); ++k) {
        if (!std::isfinite(a[k])) continue;
        CHECK(std::abs(a[k] + b[k]) <= 1e-10);
        apart = std::max(apart, std::min(std::abs(h[k] - a[k]), std::abs(h[k] - b[k])));
    }
    CHECK(apart > 1e-3);
}

TEST_CASE("validate: default parameters pass every check") {
    const ScenarioResult r = run_validate(small(Scenario::validate));
    CHECK(r.passed);
    CHECK(r.checks.size() >= 12);
    for (const auto& ch : r.checks) {
        CAPTURE(ch.name);
        CHECK(ch.passed);
    }
    CHECK(r.warnings.empty());
}

TEST_CASE("validate: degenerate rates and strong coupling raise warnings") {
    ScenarioConfig c = small(Scenario::validate);
    c.bath.gamma_plus = c.bath.gamma_minus;
    ScenarioResult r = run_validate(c);
    REQUIRE(r.warnings.size() == 1);
    CHECK(r.warnings[0].find("degenerate") != std::string::npos);

    ScenarioConfig strong = small(Scenario::validate);
    strong.model.coupling = 0.99;
    strong.model.drive = 0.0;
    r = run_validate(strong);
    bool flagged = false;
    for (const auto& w : r.warnings) flagged |= w.find("perturbative validity") != std::string::npos;
    CHECK(flagged);
}

TEST_CASE("sweep: workers write distinct files matching the serial result") {
    TempDir dir("sweep");
    ScenarioConfig c = small(Scenario::sweep);
    c.workers = 3;
    const ScenarioResult r = run_sweep(c, dir.path);
    CHECK(r.passed);
    CHECK(r.written.size() == 2 * c.xi_values.size());
    for (double xi : c.xi_values) {
        const auto data = dir.path / ("sweep_xi_" + compact(xi) + ".csv");
        REQUIRE(fs::exists(data));
        CHECK(fs::exists(dir.path / ("sweep_xi_" + compact(xi) + ".config.json")));
        ScenarioConfig one = small(Scenario::fig1);
        one.xi_values = {xi};
        const ScenarioResult serial = run_fig1(one);
        const Table& ref = serial.tables[0];
        const std::string text = slurp(data);
        // same oracle column, same bytes
        Table expected("ref");
        expected.add_column("t", ref.column("t"));
        expected.add_column("Pe_analytic", ref.column("Pe_analytic_xi_" + compact(xi)));
        expected.add_column("Pe_oracle", ref.column("Pe_oracle_xi_" + compact(xi)));
        expected.add_column("delta_Pe", ref.column("delta_Pe_xi_" + compact(xi)));
        CHECK(text == to_csv(expected));
    }
}

TEST_CASE("identical configs give byte-identical files") {
    TempDir a("det_a"), b("det_b");
    for (Scenario s : {Scenario::fig1, Scenario::fig2, Scenario::fig4}) {
        ScenarioConfig c = small(s);
        c.grid.n_omega = 2001;
        const auto wa = write_result(run_scenario(c, a.path), c, a.path);
        const auto wb = write_result(run_scenario(c, b.path), c, b.path);
        REQUIRE(wa.size() == wb.size());
        for (std::size_t k = 0; k < wa.size(); ++k) {
            CHECK(wa[k].filename() == wb[k].filename());
            CHECK(slurp(wa[k]) == slurp(wb[k]));
        }
    }
}

TEST_CASE("every data file has a header row and a config sidecar") {
    TempDir dir("sidecar");
    for (OutputFormat f : {OutputFormat::csv, OutputFormat::json}) {
        ScenarioConfig c = small(Scenario::fig2);
        c.grid.n_omega = 501;
        c.format = f;
        const auto written = write_result(run_fig2(c), c, dir.path);
        for (const auto& name : {"fig2", "fig2_peaks"}) {
            const auto data = dir.path / (std::string(name) + (f == OutputFormat::csv ? ".csv" : ".json"));
            REQUIRE(fs::exists(data));
            const std::string text = slurp(data);
            if (f == OutputFormat::csv) {
                CHECK(text.rfind(name == std::string("fig2") ? "omega," : "xi,", 0) == 0);
            } else {
                const auto j = nlohmann::json::parse(text);
                CHECK(j["columns"].size() >= 2);
            }
            const auto side = nlohmann::json::parse(slurp(dir.path / (std::string(name) + ".config.json")));
            CHECK(side["scenario"] == "fig2");
            CHECK(side["file"] == data.filename().string());
        }
    }
}
