#include "jcdamp_cli/config.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <numbers>
#include <set>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

namespace jcdamp::cli {

namespace pt = boost::property_tree;

namespace {

constexpr double kPi = std::numbers::pi;

const std::map<std::string, std::set<std::string>>& allowed_keys() {
    static const std::map<std::string, std::set<std::string>> keys{
        {"model",
         {"omega_z_ghz", "omega_ratio", "omega_ghz", "xi_ratio", "xi_ghz", "omega_c_ghz",
          "weak_drive_threshold"}},
        {"bath",
         {"kind", "gamma_minus", "gamma_plus", "kappa", "omega_cutoff", "omega_cutoff_ghz",
          "temperature"}},
        {"state", {"ce_over_cg", "phi"}},
        {"grid", {"t_max", "n_points", "omega_min", "omega_max", "n_omega"}},
        {"scenario", {"xi_values", "ce_over_cg_values", "phases_over_pi", "workers"}},
        {"output", {"format"}},
    };
    return keys;
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

double parse_double(const std::string& where, std::string_view text) {
    const std::string t = trim(text);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty() || !std::isfinite(v))
        throw ConfigError(fmt::format("{}: '{}' is not a finite number", where, t));
    return v;
}

std::size_t parse_count(const std::string& where, std::string_view text) {
    const std::string t = trim(text);
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
        throw ConfigError(fmt::format("{}: '{}' is not a non-negative integer", where, t));
    return v;
}

std::vector<double> parse_list(const std::string& where, std::string_view text) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto piece = text.substr(start, comma == std::string_view::npos ? text.npos
                                                                             : comma - start);
        out.push_back(parse_double(where, piece));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

class Reader {
public:
    explicit Reader(const pt::ptree& tree) : tree_(tree) {}

    std::optional<std::string> raw(const std::string& section, const std::string& key) const {
        const auto sec = tree_.get_child_optional(pt::ptree::path_type(section, '\0'));
        if (!sec) return std::nullopt;
        const auto v = sec->get_optional<std::string>(pt::ptree::path_type(key, '\0'));
        if (!v) return std::nullopt;
        return trim(*v);
    }
    std::optional<double> number(const std::string& section, const std::string& key) const {
        const auto r = raw(section, key);
        if (!r) return std::nullopt;
        return parse_double(section + "." + key, *r);
    }
    std::optional<std::size_t> count(const std::string& section, const std::string& key) const {
        const auto r = raw(section, key);
        if (!r) return std::nullopt;
        return parse_count(section + "." + key, *r);
    }
    std::optional<std::vector<double>> list(const std::string& section,
                                            const std::string& key) const {
        const auto r = raw(section, key);
        if (!r) return std::nullopt;
        return parse_list(section + "." + key, *r);
    }

private:
    const pt::ptree& tree_;
};

void reject_unknown(const pt::ptree& tree) {
    const auto& allowed = allowed_keys();
    for (const auto& [section, body] : tree) {
        const auto it = allowed.find(section);
        if (it == allowed.end()) {
            if (body.empty()) throw ConfigError(fmt::format("key '{}' outside any section", section));
            throw ConfigError(fmt::format("unknown section [{}]", section));
        }
        for (const auto& [key, value] : body) {
            (void)value;
            if (!it->second.contains(key))
                throw ConfigError(fmt::format("unknown key '{}' in [{}]", key, section));
        }
    }
}

template <class T>
void assign(T& target, const std::optional<T>& value) {
    if (value) target = *value;
}

/// Ratio given directly or as GHz over omega_z; both at once is an error.
std::optional<double> ratio_or_ghz(const Reader& r, const std::string& section,
                                   const std::string& ratio_key, const std::string& ghz_key,
                                   double omega_z_ghz) {
    const auto ratio = r.number(section, ratio_key);
    const auto ghz = r.number(section, ghz_key);
    if (ratio && ghz)
        throw ConfigError(fmt::format("[{}] sets both {} and {}", section, ratio_key, ghz_key));
    if (ghz) return *ghz / omega_z_ghz;
    return ratio;
}

}  // namespace

Scenario parse_scenario(std::string_view name) {
    if (name == "fig1") return Scenario::fig1;
    if (name == "fig2") return Scenario::fig2;
    if (name == "fig3") return Scenario::fig3;
    if (name == "fig4") return Scenario::fig4;
    if (name == "validate") return Scenario::validate;
    if (name == "sweep") return Scenario::sweep;
    throw ConfigError(fmt::format("unknown scenario '{}'", name));
}

std::string_view to_string(Scenario s) {
    switch (s) {
        case Scenario::fig1: return "fig1";
        case Scenario::fig2: return "fig2";
        case Scenario::fig3: return "fig3";
        case Scenario::fig4: return "fig4";
        case Scenario::validate: return "validate";
        case Scenario::sweep: return "sweep";
    }
    return "?";
}

OutputFormat parse_format(std::string_view name) {
    if (name == "csv") return OutputFormat::csv;
    if (name == "json") return OutputFormat::json;
    throw ConfigError(fmt::format("unknown output format '{}' (csv or json)", name));
}

std::string_view to_string(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

ModelParams ScenarioConfig::params() const { return params(model.drive); }

ModelParams ScenarioConfig::params(double drive) const {
    ParamOptions opt;
    opt.weak_drive_threshold = model.weak_drive_threshold;
    opt.allow_strong_drive = model.allow_strong_drive;
    opt.cavity_ratio = model.cavity_ratio;
    return build_params(model.omega_z_ghz, model.coupling, drive, opt);
}

BathSpec ScenarioConfig::bath_spec() const {
    if (bath.kind == BathSpec::Kind::ohmic)
        return BathSpec::ohmic(bath.kappa, bath.cutoff, bath.temperature);
    return BathSpec::direct(bath.gamma_minus, bath.gamma_plus, bath.temperature);
}

InitialQubitState ScenarioConfig::state() const {
    return InitialQubitState::from_ratio(ce_over_cg, phi);
}

std::vector<double> ScenarioConfig::time_grid() const {
    return uniform_grid(0.0, grid.t_max, grid.n_points);
}

std::vector<double> ScenarioConfig::omega_grid() const {
    return uniform_grid(grid.omega_min, grid.omega_max, grid.n_omega);
}

ScenarioConfig default_config(Scenario scenario) {
    ScenarioConfig c;
    c.scenario = scenario;
    switch (scenario) {
        case Scenario::fig1:
        case Scenario::validate:
            c.xi_values = {0.02, 0.1};
            break;
        case Scenario::sweep:
            c.xi_values = {0.01, 0.02, 0.05, 0.1};
            break;
        case Scenario::fig2:
            c.xi_values = {0.0, 0.2};
            c.bath.kind = BathSpec::Kind::ohmic;
            break;
        case Scenario::fig3:
        case Scenario::fig4:
            // no Omega is fixed for these; 0.5 is the edge of the
            // warning-free region
            c.model.coupling = 0.5;
            c.bath.gamma_minus = 0.05;
            c.bath.gamma_plus = 0.055;
            c.ratios = {0.1, 1.0, 100.0};
            c.phases = {0.0, kPi / 4.0, kPi / 2.0, 3.0 * kPi / 4.0, kPi};
            if (scenario == Scenario::fig4) c.grid.t_max = 4.0 * kPi / c.model.coupling;
            c.grid.n_points = 2001;
            break;
    }
    return c;
}

ScenarioConfig load_config(Scenario scenario, const std::optional<std::filesystem::path>& path) {
    ScenarioConfig c = default_config(scenario);
    if (!path) return c;

    pt::ptree tree;
    try {
        pt::ini_parser::read_ini(path->string(), tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(e.what());
    }
    reject_unknown(tree);
    const Reader r(tree);

    assign(c.model.omega_z_ghz, r.number("model", "omega_z_ghz"));
    if (!(c.model.omega_z_ghz > 0.0)) throw ConfigError("model.omega_z_ghz must be positive");
    const double wz = c.model.omega_z_ghz;
    assign(c.model.coupling, ratio_or_ghz(r, "model", "omega_ratio", "omega_ghz", wz));
    assign(c.model.drive, ratio_or_ghz(r, "model", "xi_ratio", "xi_ghz", wz));
    if (const auto wc = r.number("model", "omega_c_ghz")) c.model.cavity_ratio = *wc / wz;
    assign(c.model.weak_drive_threshold, r.number("model", "weak_drive_threshold"));

    if (const auto kind = r.raw("bath", "kind")) {
        if (*kind == "direct")
            c.bath.kind = BathSpec::Kind::direct_rates;
        else if (*kind == "ohmic")
            c.bath.kind = BathSpec::Kind::ohmic;
        else
            throw ConfigError(fmt::format("bath.kind: '{}' (direct or ohmic)", *kind));
    }
    assign(c.bath.gamma_minus, r.number("bath", "gamma_minus"));
    assign(c.bath.gamma_plus, r.number("bath", "gamma_plus"));
    assign(c.bath.kappa, r.number("bath", "kappa"));
    assign(c.bath.cutoff, ratio_or_ghz(r, "bath", "omega_cutoff", "omega_cutoff_ghz", wz));
    assign(c.bath.temperature, r.number("bath", "temperature"));

    assign(c.ce_over_cg, r.number("state", "ce_over_cg"));
    assign(c.phi, r.number("state", "phi"));

    const bool t_max_given = r.raw("grid", "t_max").has_value();
    assign(c.grid.t_max, r.number("grid", "t_max"));
    if (scenario == Scenario::fig4 && !t_max_given) c.grid.t_max = 4.0 * kPi / c.model.coupling;
    assign(c.grid.n_points, r.count("grid", "n_points"));
    assign(c.grid.omega_min, r.number("grid", "omega_min"));
    assign(c.grid.omega_max, r.number("grid", "omega_max"));
    assign(c.grid.n_omega, r.count("grid", "n_omega"));

    assign(c.xi_values, r.list("scenario", "xi_values"));
    assign(c.ratios, r.list("scenario", "ce_over_cg_values"));
    if (const auto phases = r.list("scenario", "phases_over_pi")) {
        c.phases.clear();
        for (double p : *phases) c.phases.push_back(p * kPi);
    }
    assign(c.workers, r.count("scenario", "workers"));

    if (const auto fmt_name = r.raw("output", "format")) c.format = parse_format(*fmt_name);
    return c;
}

void validate_config(const ScenarioConfig& c) {
    if (!(c.grid.t_max > 0.0)) throw ConfigError("grid.t_max must be positive");
    if (c.grid.n_points < 2) throw ConfigError("grid.n_points must be at least 2");
    if (!(c.grid.omega_max > c.grid.omega_min)) throw ConfigError("grid.omega_max <= omega_min");
    if (c.grid.n_omega < 2) throw ConfigError("grid.n_omega must be at least 2");
    if (!(c.bath.temperature >= 0.0)) throw ConfigError("bath.temperature must be >= 0");
    if (c.bath.kind == BathSpec::Kind::ohmic && !(c.bath.cutoff > 0.0))
        throw ConfigError("bath.omega_cutoff must be positive");

    const bool needs_xi = c.scenario == Scenario::fig1 || c.scenario == Scenario::fig2 ||
                          c.scenario == Scenario::sweep;
    if (needs_xi && c.xi_values.empty()) throw ConfigError("scenario.xi_values is empty");
    if (c.scenario == Scenario::fig3 && c.ratios.empty())
        throw ConfigError("scenario.ce_over_cg_values is empty");
    if (c.scenario == Scenario::fig4 && c.phases.empty())
        throw ConfigError("scenario.phases_over_pi is empty");

    // library checks: guard, resonance, ranges, rates, state
    (void)c.params();
    if (needs_xi)
        for (double xi : c.xi_values) (void)c.params(xi);
    (void)RatePair(c.bath.gamma_minus, c.bath.gamma_plus);
    (void)c.bath_spec();
    (void)c.state();
}

nlohmann::ordered_json to_json(const ScenarioConfig& c) {
    nlohmann::ordered_json j;
    j["scenario"] = to_string(c.scenario);
    j["units"] = "omega_z = 1 (frequencies, rates, temperature); time in 1/omega_z";
    j["model"] = {{"omega_z_ghz", c.model.omega_z_ghz},
                  {"omega_ratio", c.model.coupling},
                  {"xi_ratio", c.model.drive},
                  {"omega_c_ratio", c.model.cavity_ratio},
                  {"weak_drive_threshold", c.model.weak_drive_threshold},
                  {"allow_strong_drive", c.model.allow_strong_drive}};
    j["bath"] = {{"kind", c.bath.kind == BathSpec::Kind::ohmic ? "ohmic" : "direct"},
                 {"gamma_minus", c.bath.gamma_minus},
                 {"gamma_plus", c.bath.gamma_plus},
                 {"kappa", c.bath.kappa},
                 {"omega_cutoff", c.bath.cutoff},
                 {"temperature", c.bath.temperature}};
    j["state"] = {{"ce_over_cg", c.ce_over_cg}, {"phi", c.phi}};
    j["grid"] = {{"t_max", c.grid.t_max},
                 {"n_points", c.grid.n_points},
                 {"omega_min", c.grid.omega_min},
                 {"omega_max", c.grid.omega_max},
                 {"n_omega", c.grid.n_omega}};
    nlohmann::ordered_json phases = nlohmann::ordered_json::array();
    for (double p : c.phases) phases.push_back(p / kPi);
    j["scenario_values"] = {{"xi_values", c.xi_values},
                            {"ce_over_cg_values", c.ratios},
                            {"phases_over_pi", phases},
                            {"workers", c.workers}};
    j["output"] = {{"format", to_string(c.format)}};
    return j;
}

}  // namespace jcdamp::cli
