#include "jcdamp_cli/scenarios.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <numbers>
#include <thread>

#include <fmt/format.h>

#include "jcdamp/analysis.hpp"
#include "jcdamp/damping.hpp"
#include "jcdamp/liouvillian.hpp"
#include "jcdamp/model.hpp"
#include "jcdamp/observables.hpp"

namespace jcdamp::cli {

namespace {

constexpr double kPi = std::numbers::pi;
using json = nlohmann::ordered_json;

std::vector<double> sample(std::span<const double> grid, const std::function<double(double)>& f) {
    std::vector<double> out;
    out.reserve(grid.size());
    for (double x : grid) out.push_back(f(x));
    return out;
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    double worst = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
    return worst;
}

void add_warnings(ScenarioResult& r, const ModelParams& p) {
    for (const auto& w : p.warnings())
        if (std::find(r.warnings.begin(), r.warnings.end(), w) == r.warnings.end())
            r.warnings.push_back(w);
}

void add_rate_warning(ScenarioResult& r, const RatePair& rates) {
    if (!rates.degenerate()) return;
    const std::string w =
        "degenerate decay rates (gamma_- == gamma_+): both lines share one width and the "
        "E+/E- decay channels cannot be told apart";
    if (std::find(r.warnings.begin(), r.warnings.end(), w) == r.warnings.end())
        r.warnings.push_back(w);
}

/// Excited population for the inverted qubit: closed form vs the RK4 oracle.
struct PopulationSeries {
    std::vector<double> analytic;
    std::vector<double> oracle;
    std::vector<double> delta;
    double max_abs = 0.0;
    double tolerance = 0.0;
    DressedSpectrum spectrum;
    RatePair rates;
};

PopulationSeries population_series(const ScenarioConfig& c, double xi,
                                   std::span<const double> t) {
    const DressedSpectrum s = dressed_spectrum(c.params(xi));
    const RatePair rates = transition_rates(s, c.bath_spec());
    const LiouvillianMatrix l = build_liouvillian(s, rates);
    const Trajectory tr = integrate(l, dressed_density(bare_state(BareState::e0), s), t);

    PopulationSeries p{.spectrum = s, .rates = rates};
    p.analytic = sample(t, [&](double x) { return excited_population_analytic(s, rates, x); });
    p.oracle = excited_population_numeric(tr, s);
    for (std::size_t k = 0; k < t.size(); ++k) p.delta.push_back(p.analytic[k] - p.oracle[k]);
    p.max_abs = max_abs_diff(p.analytic, p.oracle);
    p.tolerance = std::max(20.0 * xi * xi * xi, 1e-8);
    return p;
}

std::string xi_tag(double xi) { return "xi_" + compact(xi); }

json spectral_summary(const AmplitudeSpectrum& spec) {
    json lines = json::array();
    for (const auto& l : spec.lines(0.1))
        lines.push_back({{"frequency", l.frequency}, {"relative_amplitude",
                                                      l.amplitude / spec.dominant().amplitude}});
    return {{"dominant_frequency", spec.dominant().frequency},
            {"bin_width", spec.bin_width},
            {"lines_above_10pct", lines}};
}

}  // namespace

double l2_distance(std::span<const double> t, std::span<const double> a,
                   std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t k = 1; k < t.size(); ++k) {
        const double d0 = a[k - 1] - b[k - 1];
        const double d1 = a[k] - b[k];
        acc += 0.5 * (d0 * d0 + d1 * d1) * (t[k] - t[k - 1]);
    }
    return std::sqrt(acc);
}

// ---------------------------------------------------------------------------

ScenarioResult run_fig1(const ScenarioConfig& c) {
    ScenarioResult r{.scenario = Scenario::fig1};
    const auto t = c.time_grid();

    const DressedSpectrum s0 = dressed_spectrum(c.params(0.0));
    const RatePair rates0 = transition_rates(s0, c.bath_spec());
    add_rate_warning(r, rates0);

    Table table("fig1");
    table.add_column("t", t);
    table.add_column("Pe_analytic_xi0", sample(t, [&](double x) {
                         return excited_population_analytic(s0, rates0, x);
                     }));

    json series = json::array();
    for (double xi : c.xi_values) {
        add_warnings(r, c.params(xi));
        PopulationSeries p = population_series(c, xi, t);
        const bool ok = p.max_abs <= p.tolerance;
        r.passed = r.passed && ok;
        series.push_back({{"xi", xi},
                          {"max_abs_diff", p.max_abs},
                          {"tolerance_20_xi3", p.tolerance},
                          {"passed", ok},
                          {"rabi_frequency", p.spectrum.splitting},
                          {"minute_amplitude", minute_oscillation_amplitude(p.spectrum.params)},
                          {"omega_minus", p.spectrum.omega_minus},
                          {"omega_plus", p.spectrum.omega_plus},
                          {"gamma_minus", p.rates.gamma_minus},
                          {"gamma_plus", p.rates.gamma_plus}});
        table.add_column("Pe_analytic_" + xi_tag(xi), std::move(p.analytic));
        table.add_column("Pe_oracle_" + xi_tag(xi), std::move(p.oracle));
        table.add_column("delta_Pe_" + xi_tag(xi), std::move(p.delta));
    }
    r.tables.push_back(std::move(table));
    r.summary = {{"series", series}};
    return r;
}

ScenarioResult run_fig2(const ScenarioConfig& c) {
    ScenarioResult r{.scenario = Scenario::fig2};
    const auto w = c.omega_grid();
    const double spacing = w[1] - w[0];

    Table curves("fig2");
    curves.add_column("omega", w);
    std::vector<double> p_xi, p_lm, p_hm, p_wm, p_lp, p_hp, p_wp, p_split, p_formula, p_zero,
        p_gm, p_gp;
    json entries = json::array();
    std::optional<std::pair<double, double>> undriven;

    for (double xi : c.xi_values) {
        const ModelParams params = c.params(xi);
        add_warnings(r, params);
        const DressedSpectrum s = dressed_spectrum(params);
        const RatePair rates = transition_rates(s, c.bath_spec());
        add_rate_warning(r, rates);
        const SpectrumCurve curve = spectrum_xx(s, rates, w);
        const auto peaks = find_peaks(curve.omega, curve.density, 2);

        json e{{"xi", xi},
               {"gamma_minus", rates.gamma_minus},
               {"gamma_plus", rates.gamma_plus},
               {"omega_minus", s.omega_minus},
               {"omega_plus", s.omega_plus},
               {"splitting_formula", vacuum_splitting(s)},
               {"zero_frequency_weight", curve.zero_frequency_weight}};
        const double nan = std::numeric_limits<double>::quiet_NaN();
        Peak lo{}, hi{};
        double split = nan;
        if (peaks.size() == 2) {
            lo = peaks[0];
            hi = peaks[1];
            split = hi.location - lo.location;
            const bool ok = std::abs(split - vacuum_splitting(s)) <= spacing;
            r.passed = r.passed && ok;
            e["peaks"] = json::array(
                {{{"location", lo.location}, {"height", lo.height}, {"fwhm", lo.fwhm}},
                 {{"location", hi.location}, {"height", hi.height}, {"fwhm", hi.fwhm}}});
            e["splitting_peaks"] = split;
            e["splitting_within_one_grid_step"] = ok;
        } else {
            r.passed = false;
            e["peaks"] = json::array();
            r.warnings.push_back(fmt::format(
                "xi = {}: {} resolved peaks on [{}, {}]", xi, peaks.size(), w.front(), w.back()));
        }
        if (xi == 0.0) {
            undriven = std::pair{s.omega_minus, s.omega_plus};
            e["splitting_equals_2_omega"] = std::abs(vacuum_splitting(s) - 2.0 * params.coupling()) <= 1e-15;
        }
        entries.push_back(std::move(e));

        curves.add_column("S_xx_" + xi_tag(xi), curve.density);
        p_xi.push_back(xi);
        p_lm.push_back(peaks.size() == 2 ? lo.location : nan);
        p_hm.push_back(peaks.size() == 2 ? lo.height : nan);
        p_wm.push_back(peaks.size() == 2 ? lo.fwhm : nan);
        p_lp.push_back(peaks.size() == 2 ? hi.location : nan);
        p_hp.push_back(peaks.size() == 2 ? hi.height : nan);
        p_wp.push_back(peaks.size() == 2 ? hi.fwhm : nan);
        p_split.push_back(split);
        p_formula.push_back(vacuum_splitting(s));
        p_zero.push_back(curve.zero_frequency_weight);
        p_gm.push_back(rates.gamma_minus);
        p_gp.push_back(rates.gamma_plus);
    }

    // line shifts relative to the undriven pair; on a -omega axis these
    // positive shifts point left
    if (undriven) {
        for (auto& e : entries) {
            const double dm = e["omega_minus"].get<double>() - undriven->first;
            const double dp = e["omega_plus"].get<double>() - undriven->second;
            e["shift_minus"] = dm;
            e["shift_plus"] = dp;
            if (e["xi"].get<double>() > 0.0)
                e["lines_move_away_from_zero_unequally"] = dm > 0.0 && dp > 0.0 && dm != dp;
        }
    }

    Table peaks("fig2_peaks");
    peaks.add_column("xi", p_xi);
    peaks.add_column("peak_minus_location", p_lm);
    peaks.add_column("peak_minus_height", p_hm);
    peaks.add_column("peak_minus_fwhm", p_wm);
    peaks.add_column("peak_plus_location", p_lp);
    peaks.add_column("peak_plus_height", p_hp);
    peaks.add_column("peak_plus_fwhm", p_wp);
    peaks.add_column("splitting_peaks", p_split);
    peaks.add_column("splitting_formula", p_formula);
    peaks.add_column("zero_frequency_weight", p_zero);
    peaks.add_column("gamma_minus", p_gm);
    peaks.add_column("gamma_plus", p_gp);

    r.tables.push_back(std::move(curves));
    r.tables.push_back(std::move(peaks));
    r.summary = {{"grid_spacing", spacing}, {"spectra", entries}};
    return r;
}

ScenarioResult run_fig3(const ScenarioConfig& c) {
    ScenarioResult r{.scenario = Scenario::fig3};
    const auto t = c.time_grid();
    const double dt = t[1] - t[0];
    const ModelParams params = c.params();
    add_warnings(r, params);
    const DressedSpectrum s = dressed_spectrum(params);
    const RatePair rates = transition_rates(s, c.bath_spec());
    add_rate_warning(r, rates);

    const auto d0 = undriven_decoherence_factor(params.coupling(), rates, t);
    Table table("fig3");
    table.add_column("t", t);
    table.add_column("D0", d0);

    json curves = json::array();
    double best = std::numeric_limits<double>::infinity();
    double best_ratio = 0.0;
    for (double ratio : c.ratios) {
        const auto st = InitialQubitState::from_ratio(ratio, c.phi);
        auto d = decoherence_factor(st, s, rates, t);
        const bool physical =
            std::all_of(d.begin(), d.end(), [](double v) { return std::isfinite(v) && v >= 0.0; });
        r.passed = r.passed && physical;
        const double dist = l2_distance(t, d, d0);
        if (dist < best) {
            best = dist;
            best_ratio = ratio;
        }
        json e = spectral_summary(amplitude_spectrum(d, dt));
        e["ce_over_cg"] = ratio;
        e["l2_distance_to_D0"] = dist;
        e["finite_and_nonnegative"] = physical;
        curves.push_back(std::move(e));
        table.add_column("D_ratio_" + compact(ratio), std::move(d));
    }
    r.tables.push_back(std::move(table));
    json base = spectral_summary(amplitude_spectrum(d0, dt));
    r.summary = {{"rabi_frequency", s.splitting},
                 {"omega_minus", s.omega_minus},
                 {"omega_plus", s.omega_plus},
                 {"D0", base},
                 {"curves", curves},
                 {"closest_to_D0_ratio", best_ratio}};
    return r;
}

ScenarioResult run_fig4(const ScenarioConfig& c) {
    ScenarioResult r{.scenario = Scenario::fig4};
    const auto t = c.time_grid();
    const ModelParams params = c.params();
    add_warnings(r, params);
    const DressedSpectrum s = dressed_spectrum(params);
    const RatePair rates = transition_rates(s, c.bath_spec());
    add_rate_warning(r, rates);
    const double coupling = params.coupling();
    const double period = 2.0 * kPi / coupling;

    Table table("fig4");
    table.add_column("t", t);
    table.add_column("omega_t", sample(t, [&](double x) { return coupling * x; }));
    table.add_column("D0", undriven_decoherence_factor(coupling, rates, t));

    std::vector<std::vector<double>> shifts;
    for (double phi : c.phases) {
        const auto st = InitialQubitState::from_ratio(c.ce_over_cg, phi);
        shifts.push_back(decoherence_shift(st, s, rates, t));
        table.add_column("delta_D_phi_" + compact(phi / kPi) + "pi", shifts.back());
    }
    for (double phi : c.phases) {
        const auto st = InitialQubitState::from_ratio(c.ce_over_cg, phi);
        table.add_column("delta_D_full_phi_" + compact(phi / kPi) + "pi",
                         decoherence_shift_full(st, s, rates, t));
    }

    json summary{{"period_omega_t_2pi", period}};
    json markers = json::array();
    for (double m = period; m <= t.back() + 1e-12; m += period) markers.push_back(m);
    summary["period_markers"] = markers;

    // phi = 0 against phi = pi, when both were requested
    std::optional<std::size_t> at0, atpi;
    for (std::size_t k = 0; k < c.phases.size(); ++k) {
        if (c.phases[k] == 0.0) at0 = k;
        if (std::abs(c.phases[k] - kPi) < 1e-15) atpi = k;
    }
    if (at0 && atpi) {
        double worst = 0.0;
        for (std::size_t i = 0; i < t.size(); ++i) {
            const double a = shifts[*at0][i], b = shifts[*atpi][i];
            if (std::isfinite(a) && std::isfinite(b)) worst = std::max(worst, std::abs(a + b));
        }
        const bool ok = worst <= 1e-10;
        r.passed = r.passed && ok;
        summary["antisymmetry_max_abs_sum"] = worst;
        summary["antisymmetry_passed"] = ok;
    }

    // undamped companion: the first-order shift repeats with period 2 pi / Omega
    const RatePair none(0.0, 0.0);
    Table undamped("fig4_undamped");
    undamped.add_column("t", t);
    undamped.add_column("omega_t", sample(t, [&](double x) { return coupling * x; }));
    double worst_period = 0.0;
    std::vector<double> shifted;
    std::vector<double> base;
    for (double x : t)
        if (x + period <= t.back() + 1e-12) {
            base.push_back(x);
            shifted.push_back(x + period);
        }
    for (double phi : c.phases) {
        const auto st = InitialQubitState::from_ratio(c.ce_over_cg, phi);
        undamped.add_column("delta_D_undamped_phi_" + compact(phi / kPi) + "pi",
                            decoherence_shift(st, s, none, t));
        const auto a = decoherence_shift(st, s, none, base);
        const auto b = decoherence_shift(st, s, none, shifted);
        for (std::size_t i = 0; i < base.size(); ++i)
            if (std::isfinite(a[i]) && std::isfinite(b[i]) &&
                std::abs(std::cos(coupling * base[i])) > 1e-2)
                worst_period = std::max(worst_period, std::abs(a[i] - b[i]));
    }
    if (!base.empty()) {
        summary["undamped_period_max_abs_diff"] = worst_period;
        summary["undamped_periodic"] = worst_period <= 1e-9;
    }

    r.tables.push_back(std::move(table));
    r.tables.push_back(std::move(undamped));
    r.summary = std::move(summary);
    return r;
}

// ---------------------------------------------------------------------------

std::vector<Check> invariant_suite(const ScenarioConfig& c) {
    std::vector<Check> out;
    auto add = [&](std::string name, double value, double tolerance) {
        out.push_back({std::move(name), value, tolerance, value <= tolerance});
    };

    const ModelParams params = c.params();
    const double xi = params.drive();
    const DressedSpectrum s = dressed_spectrum(params);
    const RatePair rates = transition_rates(s, c.bath_spec());
    const DampingBasisSet bases = build_damping_bases(s, rates);
    const LiouvillianMatrix l = build_liouvillian(s, rates);

    double eig = 0.0;
    for (Level a : kLevels)
        for (Level b : kLevels)
            eig = std::max(eig, (l.apply(bases.basis(a, b)) -
                                 bases.eigenvalue(a, b) * bases.basis(a, b))
                                    .norm());
    add("eigen_relation_frobenius", eig, 1e-10);

    double spec = 0.0;
    for (const Complex& lambda : bases.eigenvalues()) {
        double nearest = std::numeric_limits<double>::infinity();
        for (int k = 0; k < 9; ++k) nearest = std::min(nearest, std::abs(l.eigenvalues()(k) - lambda));
        spec = std::max(spec, nearest);
    }
    add("liouvillian_spectrum_vs_damping_eigenvalues", spec, 1e-10);
    add("damping_basis_condition_number", bases.spanning_condition_number(), 1e3);

    const auto t = c.time_grid();
    const Matrix3 rho0 = dressed_density(bare_state(BareState::e0), s);
    const Trajectory tr = integrate(l, rho0, t);
    const TrajectoryDiagnostics diag = diagnose(tr);
    add("trajectory_trace_error", diag.max_trace_error, 1e-10);
    add("trajectory_hermiticity_error", diag.max_hermiticity_error, 1e-12);
    add("trajectory_negative_eigenvalue", std::max(0.0, -diag.min_eigenvalue), 1e-10);

    const ExpansionCoefficients coeffs = expand_state(rho0, bases);
    double formal = 0.0;
    for (std::size_t k = 0; k < t.size(); ++k)
        formal = std::max(formal, (evolve_analytic(coeffs, bases, t[k]) - tr.states[k]).norm());
    add("rk4_vs_formal_solution", formal, 1e-8);

    const auto numeric = excited_population_numeric(tr, s);
    double pe = 0.0;
    for (std::size_t k = 0; k < t.size(); ++k)
        pe = std::max(pe, std::abs(numeric[k] - excited_population_analytic(s, rates, t[k])));
    add("excited_population_vs_oracle", pe, 20.0 * xi * xi * xi + 1e-8);

    InitialQubitState st = c.state();
    if (st.c_e() * st.c_g() == 0.0) st = InitialQubitState::from_ratio(1.0, c.phi);
    const Trajectory coh = integrate(l, dressed_density(st.bare_vector(), s), t);
    double eg = 0.0;
    for (std::size_t k = 0; k < t.size(); ++k)
        eg = std::max(eg, std::abs(bare_coherence(coh.states[k], s) - rho_eg(st, s, rates, t[k])));
    add("rho_eg_vs_oracle", eg, 20.0 * xi * xi + 1e-8);

    const std::size_t n_tau = std::min<std::size_t>(t.size(), 201);
    const std::vector<double> tau(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(n_tau));
    double corr = 0.0;
    for (auto kind : {CorrelationKind::adag_a, CorrelationKind::a_a, CorrelationKind::adag_adag,
                      CorrelationKind::a_adag, CorrelationKind::x_x}) {
        const auto closed = correlation(kind, s, rates, tau);
        const auto [a_op, b_op] = correlation_operators(kind, s);
        for (std::size_t k = 0; k < tau.size(); ++k)
            corr = std::max(corr, std::abs(regression_correlation(l, steady_state(), a_op, b_op,
                                                                  tau[k]) -
                                           closed.value(k)));
    }
    add("correlations_vs_regression", corr, 1e-6 + 5.0 * xi * xi);

    // xi -> 0 reductions
    const DressedSpectrum s0 = dressed_spectrum(params.with_drive(0.0));
    const double w = params.coupling();
    const double triplet = std::max({std::abs(s0.E0 + 0.5), std::abs(s0.Eminus - (0.5 - w)),
                                     std::abs(s0.Eplus - (0.5 + w))});
    add("xi0_energy_triplet", triplet, 0.0);
    const RatePair rates0 = transition_rates(s0, c.bath_spec());
    const LiouvillianMatrix l0 = build_liouvillian(s0, rates0);
    const auto numeric0 =
        excited_population_numeric(integrate(l0, dressed_density(bare_state(BareState::e0), s0), t), s0);
    double pe0 = 0.0;
    for (std::size_t k = 0; k < t.size(); ++k)
        pe0 = std::max(pe0, std::abs(numeric0[k] - excited_population_analytic(s0, rates0, t[k])));
    add("xi0_excited_population_vs_oracle", pe0, 1e-8);
    const auto d = decoherence_factor(st, s0, rates0, t);
    const auto dd0 = undriven_decoherence_factor(w, rates0, t);
    add("xi0_decoherence_reduction", max_abs_diff(d, dd0), 1e-12);

    // detailed balance on a log grid, exact to floating point
    const double temperature = c.bath.temperature > 0.0 ? c.bath.temperature : 0.1;
    const BathSpec kms = BathSpec::ohmic(c.bath.kappa, c.bath.cutoff, temperature);
    double kms_err = 0.0;
    for (int k = 0; k <= 40; ++k) {
        const double omega = std::pow(10.0, -3.0 + 4.0 * k / 40.0);
        const double emit = gamma_of(omega, kms);
        kms_err = std::max(kms_err, std::abs(gamma_of(-omega, kms) - std::exp(-omega / temperature) * emit));
    }
    add("kms_detailed_balance", kms_err, 0.0);
    return out;
}

ScenarioResult run_validate(const ScenarioConfig& c) {
    ScenarioResult r{.scenario = Scenario::validate};
    const ModelParams params = c.params();
    add_warnings(r, params);
    const DressedSpectrum s = dressed_spectrum(params);
    const RatePair rates = transition_rates(s, c.bath_spec());
    add_rate_warning(r, rates);

    r.checks = invariant_suite(c);
    std::size_t failed = 0;
    for (const auto& ch : r.checks) failed += ch.passed ? 0 : 1;
    r.passed = failed == 0;
    r.summary = {{"checks", r.checks.size()}, {"failed", failed}, {"passed", r.passed}};
    return r;
}

ScenarioResult run_sweep(const ScenarioConfig& c, const std::filesystem::path& out_dir) {
    ScenarioResult r{.scenario = Scenario::sweep};
    const auto t = c.time_grid();
    const std::size_t n = c.xi_values.size();
    for (double xi : c.xi_values) add_warnings(r, c.params(xi));

    struct Point {
        double max_abs = 0.0;
        double tolerance = 0.0;
        double splitting = 0.0;
        double minute = 0.0;
        std::vector<std::filesystem::path> files;
        std::exception_ptr error;
    };
    std::vector<Point> points(n);
    std::atomic<std::size_t> next{0};

    // workers share c and t read-only and write to distinct files
    auto work = [&] {
        for (std::size_t k = next++; k < n; k = next++) {
            Point& pt = points[k];
            try {
                const double xi = c.xi_values[k];
                PopulationSeries p = population_series(c, xi, t);
                pt.max_abs = p.max_abs;
                pt.tolerance = p.tolerance;
                pt.splitting = p.spectrum.splitting;
                pt.minute = minute_oscillation_amplitude(p.spectrum.params);
                Table table("sweep_" + xi_tag(xi));
                table.add_column("t", t);
                table.add_column("Pe_analytic", std::move(p.analytic));
                table.add_column("Pe_oracle", std::move(p.oracle));
                table.add_column("delta_Pe", std::move(p.delta));
                pt.files.push_back(write_table(table, out_dir, c.format));
                json side = to_json(c);
                side["file"] = pt.files.back().filename().string();
                side["xi"] = xi;
                const auto sidecar = out_dir / (table.name() + ".config.json");
                write_text(sidecar, side.dump(1) + "\n");
                pt.files.push_back(sidecar);
            } catch (...) {
                pt.error = std::current_exception();
            }
        }
    };
    std::size_t workers = c.workers ? c.workers : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, std::max<std::size_t>(n, 1));
    {
        std::vector<std::jthread> pool;
        for (std::size_t k = 0; k < workers; ++k) pool.emplace_back(work);
    }
    for (const auto& pt : points)
        if (pt.error) std::rethrow_exception(pt.error);

    Table table("sweep");
    std::vector<double> xs, diffs, tols, pass, split, minute;
    json entries = json::array();
    for (std::size_t k = 0; k < n; ++k) {
        const Point& pt = points[k];
        const bool ok = pt.max_abs <= pt.tolerance;
        r.passed = r.passed && ok;
        xs.push_back(c.xi_values[k]);
        diffs.push_back(pt.max_abs);
        tols.push_back(pt.tolerance);
        pass.push_back(ok ? 1.0 : 0.0);
        split.push_back(pt.splitting);
        minute.push_back(pt.minute);
        entries.push_back({{"xi", c.xi_values[k]}, {"max_abs_diff", pt.max_abs},
                           {"tolerance_20_xi3", pt.tolerance}, {"passed", ok}});
        r.written.insert(r.written.end(), pt.files.begin(), pt.files.end());
    }
    table.add_column("xi", xs);
    table.add_column("max_abs_diff", diffs);
    table.add_column("tolerance", tols);
    table.add_column("passed", pass);
    table.add_column("rabi_frequency", split);
    table.add_column("minute_amplitude", minute);
    r.tables.push_back(std::move(table));
    r.summary = {{"workers", workers}, {"points", entries}};
    return r;
}

ScenarioResult run_scenario(const ScenarioConfig& c, const std::filesystem::path& out_dir) {
    switch (c.scenario) {
        case Scenario::fig1: return run_fig1(c);
        case Scenario::fig2: return run_fig2(c);
        case Scenario::fig3: return run_fig3(c);
        case Scenario::fig4: return run_fig4(c);
        case Scenario::validate: return run_validate(c);
        case Scenario::sweep: return run_sweep(c, out_dir);
    }
    throw std::logic_error("unhandled scenario");
}

std::vector<std::filesystem::path> write_result(const ScenarioResult& result,
                                                const ScenarioConfig& config,
                                                const std::filesystem::path& out_dir) {
    std::vector<std::filesystem::path> written = result.written;
    auto sidecar = [&](const std::string& name, const std::filesystem::path& data) {
        json side = to_json(config);
        side["file"] = data.filename().string();
        const auto path = out_dir / (name + ".config.json");
        write_text(path, side.dump(1) + "\n");
        written.push_back(path);
    };

    for (const auto& table : result.tables) {
        written.push_back(write_table(table, out_dir, config.format));
        sidecar(table.name(), written.back());
    }

    if (!result.checks.empty()) {
        const std::string name(to_string(result.scenario));
        std::filesystem::path path;
        if (config.format == OutputFormat::csv) {
            std::string text = "check,value,tolerance,passed\n";
            for (const auto& ch : result.checks)
                text += fmt::format("{},{:.17g},{:.17g},{}\n", ch.name, ch.value, ch.tolerance,
                                    ch.passed ? 1 : 0);
            path = out_dir / (name + ".csv");
            write_text(path, text);
        } else {
            json arr = json::array();
            for (const auto& ch : result.checks)
                arr.push_back({{"check", ch.name},
                               {"value", ch.value},
                               {"tolerance", ch.tolerance},
                               {"passed", ch.passed}});
            path = out_dir / (name + ".json");
            write_text(path, json{{"checks", arr}}.dump(1) + "\n");
        }
        written.push_back(path);
        sidecar(name, path);
    }

    json summary = result.summary;
    summary["scenario"] = to_string(result.scenario);
    summary["passed"] = result.passed;
    summary["warnings"] = result.warnings;
    const auto path = out_dir / (std::string(to_string(result.scenario)) + ".summary.json");
    write_text(path, summary.dump(1) + "\n");
    written.push_back(path);
    return written;
}

}  // namespace jcdamp::cli
