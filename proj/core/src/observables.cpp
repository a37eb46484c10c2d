#include "jcdamp/observables.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

namespace jcdamp {

namespace {

constexpr Level G = Level::ground;
constexpr Level M = Level::minus;
constexpr Level P = Level::plus;

const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

}  // namespace

InitialQubitState InitialQubitState::from_amplitudes(double c_g, double c_e, double phi) {
    if (!(std::isfinite(c_g) && std::isfinite(c_e) && std::isfinite(phi)))
        throw ParameterError("qubit amplitudes and phase must be finite");
    if (c_g < 0.0 || c_e < 0.0) throw ParameterError("qubit amplitudes must be >= 0");
    const double norm = std::hypot(c_g, c_e);
    if (norm == 0.0) throw ParameterError("qubit amplitudes cannot both vanish");
    return InitialQubitState(c_g / norm, c_e / norm, phi);
}

InitialQubitState InitialQubitState::from_ratio(double ce_over_cg, double phi) {
    if (!(std::isfinite(ce_over_cg) && ce_over_cg >= 0.0))
        throw ParameterError(fmt::format("c_e/c_g must be finite and >= 0, got {}", ce_over_cg));
    return from_amplitudes(1.0, ce_over_cg, phi);
}

Vector3 InitialQubitState::bare_vector() const {
    return c_g_ * std::exp(kI * phi_) * bare_state(BareState::g0) +
           c_e_ * bare_state(BareState::e0);
}

Matrix3 dressed_density(const Vector3& bare, const DressedSpectrum& spectrum) {
    const Vector3 psi = spectrum.overlaps() * bare;
    const double norm2 = psi.squaredNorm();
    if (norm2 == 0.0) throw ParameterError("state has no overlap with the dressed levels");
    return psi * psi.adjoint() / norm2;
}

double bare_population(const Matrix3& rho_dressed, const DressedSpectrum& spectrum, BareState b) {
    const Vector3 d = spectrum.overlaps() * bare_state(b);
    return (d.adjoint() * rho_dressed * d)(0, 0).real();
}

Complex bare_coherence(const Matrix3& rho_dressed, const DressedSpectrum& spectrum) {
    const Matrix3 ov = spectrum.overlaps();
    const Vector3 e = ov * bare_state(BareState::e0);
    const Vector3 g = ov * bare_state(BareState::g0);
    return (e.adjoint() * rho_dressed * g)(0, 0);
}

// ---------------------------------------------------------------------------

double minute_oscillation_amplitude(const ModelParams& params) {
    const double xi = params.drive();
    const double g = params.coupling();
    const double d = params.detuning_product();
    return xi * xi * g * g / (d * d);
}

double excited_population_analytic(const DressedSpectrum& spectrum, const RatePair& rates,
                                   double t) {
    const double gm = rates.gamma_minus;
    const double gp = rates.gamma_plus;
    const double amp = minute_oscillation_amplitude(spectrum.params);
    const double value =
        0.25 * (std::exp(-gm * t / 2.0) + std::exp(-gp * t / 2.0)) +
        0.5 * std::exp(-(gm + gp) * t / 4.0) * std::cos(spectrum.splitting * t) +
        amp * (std::exp(-gm * t / 4.0) * std::cos(spectrum.omega_minus * t) +
               std::exp(-gp * t / 4.0) * std::cos(spectrum.omega_plus * t));

    constexpr double eps = 1e-6;
    // Rabi part is in [0, 1], the minute term in [-2A, 2A]
    if (!(value >= -eps - 2.0 * amp && value <= 1.0 + eps + 2.0 * amp))
        throw std::domain_error(fmt::format(
            "excited population {:.12g} at t = {} is outside [-2A, 1 + 2A], A = {:.6g}", value, t,
            amp));
    return value;
}

std::vector<double> excited_population_numeric(const Trajectory& trajectory,
                                               const DressedSpectrum& spectrum) {
    std::vector<double> out;
    out.reserve(trajectory.size());
    for (const Matrix3& rho : trajectory.states)
        out.push_back(bare_population(rho, spectrum, BareState::e0));
    return out;
}

// ---------------------------------------------------------------------------

CorrelationKind parse_correlation_kind(std::string_view name) {
    if (name == "adag_a") return CorrelationKind::adag_a;
    if (name == "a_a") return CorrelationKind::a_a;
    if (name == "adag_adag") return CorrelationKind::adag_adag;
    if (name == "a_adag") return CorrelationKind::a_adag;
    if (name == "x_x") return CorrelationKind::x_x;
    throw ParameterError(fmt::format("unknown correlation kind '{}'", name));
}

std::string_view to_string(CorrelationKind kind) {
    switch (kind) {
        case CorrelationKind::adag_a: return "adag_a";
        case CorrelationKind::a_a: return "a_a";
        case CorrelationKind::adag_adag: return "adag_adag";
        case CorrelationKind::a_adag: return "a_adag";
        case CorrelationKind::x_x: return "x_x";
    }
    return "unknown";
}

CorrelationSeries correlation(CorrelationKind kind, const DressedSpectrum& spectrum,
                              const RatePair& rates, std::span<const double> tau_grid) {
    const DampingBasisSet bases(spectrum, rates);
    const Complex l0p = bases.eigenvalue(G, P);
    const Complex l0m = bases.eigenvalue(G, M);
    const double eta2 = spectrum.eta * spectrum.eta;

    CorrelationSeries s;
    s.tau.assign(tau_grid.begin(), tau_grid.end());
    s.decaying.assign(tau_grid.size(), Complex{0.0, 0.0});

    const bool oscillating = kind == CorrelationKind::a_adag || kind == CorrelationKind::x_x;
    s.constant = kind == CorrelationKind::x_x ? 4.0 * eta2 : eta2;
    if (oscillating)
        for (std::size_t k = 0; k < tau_grid.size(); ++k)
            s.decaying[k] = 0.5 * (std::exp(l0p * tau_grid[k]) + std::exp(l0m * tau_grid[k]));
    return s;
}

std::pair<Matrix3, Matrix3> correlation_operators(CorrelationKind kind,
                                                  const DressedSpectrum& spectrum) {
    const Matrix3 a = spectrum.to_dressed(bare_annihilation());
    const Matrix3 adag = spectrum.to_dressed(bare_annihilation().adjoint());
    switch (kind) {
        case CorrelationKind::adag_a: return {adag, a};
        case CorrelationKind::a_a: return {a, a};
        case CorrelationKind::adag_adag: return {adag, adag};
        case CorrelationKind::a_adag: return {a, adag};
        case CorrelationKind::x_x: return {a + adag, a + adag};
    }
    throw ParameterError("unknown correlation kind");
}

Matrix3 steady_state() {
    Matrix3 rho = Matrix3::Zero();
    rho(index(G), index(G)) = 1.0;
    return rho;
}

double lorentzian(double omega, double center, double half_width) {
    if (half_width == 0.0) return 0.0;
    const double d = omega - center;
    return half_width / (2.0 * std::numbers::pi * (d * d + half_width * half_width));
}

SpectrumCurve spectrum_xx(const DressedSpectrum& spectrum, const RatePair& rates,
                          std::span<const double> omega_grid) {
    SpectrumCurve c;
    c.omega.assign(omega_grid.begin(), omega_grid.end());
    c.peak_minus = spectrum.omega_minus;
    c.peak_plus = spectrum.omega_plus;
    c.half_width_minus = rates.gamma_minus / 4.0;
    c.half_width_plus = rates.gamma_plus / 4.0;
    c.zero_frequency_weight = 4.0 * spectrum.eta * spectrum.eta;
    c.density.reserve(omega_grid.size());
    for (double w : omega_grid)
        c.density.push_back(lorentzian(w, c.peak_minus, c.half_width_minus) +
                            lorentzian(w, c.peak_plus, c.half_width_plus));
    return c;
}

double vacuum_splitting(const DressedSpectrum& spectrum) {
    return std::abs(spectrum.omega_plus - spectrum.omega_minus);
}

// ---------------------------------------------------------------------------

ExpansionCoefficients QubitCoefficientSeries::at(double xi) const {
    std::array<Complex, 9> v;
    for (int k = 0; k < 9; ++k) v[k] = zeroth.values()[k] + xi * slope.values()[k];
    return ExpansionCoefficients(v);
}

namespace {

void fill_conjugates(ExpansionCoefficients& m) {
    m(P, G) = std::conj(m(G, P));
    m(M, G) = std::conj(m(G, M));
    m(M, P) = std::conj(m(P, M));
}

}  // namespace

QubitCoefficientSeries qubit_coefficient_series(const InitialQubitState& state,
                                                const ModelParams& params,
                                                CoefficientForm form) {
    const double ce = state.c_e();
    const double cg = state.c_g();
    const double phi = state.phi();
    const double wz = params.omega_z();
    const double g = params.coupling();
    const double d = params.detuning_product();
    const Complex phase = std::exp(kI * phi);

    QubitCoefficientSeries s;
    ExpansionCoefficients& z = s.zeroth;
    ExpansionCoefficients& k = s.slope;

    z(G, G) = form == CoefficientForm::as_printed ? ce * cg : 1.0;
    z(P, P) = 0.5 * ce * ce;
    z(M, M) = 0.5 * ce * ce;
    z(G, P) = kInvSqrt2 * phase * ce * cg;
    z(G, M) = -kInvSqrt2 * phase * ce * cg;
    z(P, M) = -0.5 * ce * ce;

    k(P, P) = std::cos(phi) * ce * cg / (wz + g);
    k(M, M) = -std::cos(phi) * ce * cg / (wz - g);
    k(G, P) = kInvSqrt2 * (cg * cg / (wz + g) + g * ce * ce / d);
    k(G, M) = kInvSqrt2 * (cg * cg / (wz - g) - g * ce * ce / d);
    if (form == CoefficientForm::as_printed)
        k(P, M) = -(wz * std::cos(phi) - kI * g * std::sin(phi)) / d * cg * ce;
    else
        k(P, M) = (g * std::cos(phi) - kI * wz * std::sin(phi)) / d * cg * ce;

    fill_conjugates(z);
    fill_conjugates(k);
    return s;
}

ExpansionCoefficients expansion_coefficients_qubit(const InitialQubitState& state,
                                                   const DressedSpectrum& spectrum,
                                                   CoefficientForm form) {
    return qubit_coefficient_series(state, spectrum.params, form).at(spectrum.params.drive());
}

namespace {

// rho_eg = dressed_part(M) + xi * driven_part(M)
Complex dressed_part(const ExpansionCoefficients& m, const DampingBasisSet& b, double t) {
    auto term = [&](Level x, Level y) { return m(x, y) * std::exp(b.eigenvalue(x, y) * t); };
    return kInvSqrt2 * (term(P, G) - term(M, G));
}

Complex driven_part(const ExpansionCoefficients& m, const DampingBasisSet& b,
                    const ModelParams& params, double t) {
    auto term = [&](Level x, Level y) { return m(x, y) * std::exp(b.eigenvalue(x, y) * t); };
    const double wz = params.omega_z();
    const double g = params.coupling();
    const double d = params.detuning_product();
    return g / d * (term(G, G) - term(P, P) - term(M, M)) +
           1.0 / (2.0 * (wz - g)) * (term(P, M) - term(M, M)) +
           1.0 / (2.0 * (wz + g)) * (term(P, P) - term(M, P));
}

double require_coherent(const InitialQubitState& state) {
    const double c = state.c_e() * state.c_g();
    if (c == 0.0)
        throw ParameterError("decoherence factor is undefined when c_e * c_g == 0");
    return c;
}

}  // namespace

Complex rho_eg(const InitialQubitState& state, const DressedSpectrum& spectrum,
               const RatePair& rates, double t, CoefficientForm form) {
    const DampingBasisSet bases(spectrum, rates);
    const ExpansionCoefficients m = expansion_coefficients_qubit(state, spectrum, form);
    return dressed_part(m, bases, t) + spectrum.params.drive() * driven_part(m, bases, spectrum.params, t);
}

std::vector<double> decoherence_factor(const InitialQubitState& state,
                                       const DressedSpectrum& spectrum, const RatePair& rates,
                                       std::span<const double> t_grid, CoefficientForm form) {
    const double c = require_coherent(state);
    const DampingBasisSet bases(spectrum, rates);
    const ExpansionCoefficients m = expansion_coefficients_qubit(state, spectrum, form);
    const double xi = spectrum.params.drive();
    std::vector<double> out;
    out.reserve(t_grid.size());
    for (double t : t_grid)
        out.push_back(
            std::abs(dressed_part(m, bases, t) + xi * driven_part(m, bases, spectrum.params, t)) /
            c);
    return out;
}

double undriven_decoherence_factor(double coupling, const RatePair& rates, double t) {
    const double a = std::exp(-rates.gamma_plus * t / 4.0);
    const double b = std::exp(-rates.gamma_minus * t / 4.0);
    const double c = std::cos(coupling * t);
    return std::sqrt(0.25 * (a - b) * (a - b) + a * b * c * c);
}

std::vector<double> undriven_decoherence_factor(double coupling, const RatePair& rates,
                                                std::span<const double> t_grid) {
    std::vector<double> out;
    out.reserve(t_grid.size());
    for (double t : t_grid) out.push_back(undriven_decoherence_factor(coupling, rates, t));
    return out;
}

std::vector<double> decoherence_shift(const InitialQubitState& state,
                                      const DressedSpectrum& spectrum, const RatePair& rates,
                                      std::span<const double> t_grid, CoefficientForm form) {
    const double c = require_coherent(state);
    const ModelParams& params = spectrum.params;
    // Eigenvalues depend on xi only at second order, so the derivative uses
    // the undriven ones.
    const DampingBasisSet bases(dressed_spectrum(params.with_drive(0.0)), rates);
    const QubitCoefficientSeries series = qubit_coefficient_series(state, params, form);
    const double xi = params.drive();

    std::vector<double> out;
    out.reserve(t_grid.size());
    for (double t : t_grid) {
        const Complex r0 = dressed_part(series.zeroth, bases, t);
        const Complex r1 =
            dressed_part(series.slope, bases, t) + driven_part(series.zeroth, bases, params, t);
        const double mag = std::abs(r0);
        if (mag == 0.0) {
            out.push_back(std::numeric_limits<double>::quiet_NaN());
            continue;
        }
        out.push_back(xi * (std::conj(r0) * r1).real() / (c * mag));
    }
    return out;
}

std::vector<double> decoherence_shift_full(const InitialQubitState& state,
                                           const DressedSpectrum& spectrum,
                                           const RatePair& rates, std::span<const double> t_grid,
                                           CoefficientForm form) {
    std::vector<double> d = decoherence_factor(state, spectrum, rates, t_grid, form);
    for (std::size_t k = 0; k < t_grid.size(); ++k)
        d[k] -= undriven_decoherence_factor(spectrum.params.coupling(), rates, t_grid[k]);
    return d;
}

}  // namespace jcdamp
