#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "jcdamp/damping.hpp"
#include "jcdamp/liouvillian.hpp"
#include "jcdamp/model.hpp"
#include "jcdamp/types.hpp"

namespace jcdamp {

/// c_g e^{i phi}|g,0> + c_e|e,0> with real, non-negative amplitudes,
/// normalized on construction.
class InitialQubitState {
public:
    static InitialQubitState from_amplitudes(double c_g, double c_e, double phi = 0.0);
    /// c_e / c_g with the phase phi; ratio must be finite and >= 0.
    static InitialQubitState from_ratio(double ce_over_cg, double phi = 0.0);

    double c_g() const { return c_g_; }
    double c_e() const { return c_e_; }
    double phi() const { return phi_; }

    Vector3 bare_vector() const;

private:
    InitialQubitState(double c_g, double c_e, double phi) : c_g_(c_g), c_e_(c_e), phi_(phi) {}
    double c_g_;
    double c_e_;
    double phi_;
};

/// Pure bare state mapped into the dressed frame through the first-order
/// overlaps <E_alpha|psi>, normalized to unit trace.
Matrix3 dressed_density(const Vector3& bare_state, const DressedSpectrum& spectrum);

/// <b|rho|b> for a dressed-representation rho and bare basis state b.
double bare_population(const Matrix3& rho_dressed, const DressedSpectrum& spectrum, BareState b);

/// <e,0|rho|g,0>, the qubit coherence tr{rho |g><e|}.
Complex bare_coherence(const Matrix3& rho_dressed, const DressedSpectrum& spectrum);

// ---------------------------------------------------------------------------
// Rabi oscillation

/// Closed-form excited-state population for an initially inverted qubit
/// |e,0>. Throws std::domain_error if the value leaves
/// [-eps - 2 A, 1 + eps + 2 A] where A = xi^2 Omega^2 / (omega_z^2 - Omega^2)^2 is
/// the minute-oscillation amplitude; at t = 0 the formula equals 1 + 2A.
double excited_population_analytic(const DressedSpectrum& spectrum, const RatePair& rates,
                                   double t);

/// xi^2 Omega^2 / (omega_z^2 - Omega^2)^2
double minute_oscillation_amplitude(const ModelParams& params);

/// <e,0|rho(t)|e,0> along a dressed-representation trajectory.
std::vector<double> excited_population_numeric(const Trajectory& trajectory,
                                               const DressedSpectrum& spectrum);

// ---------------------------------------------------------------------------
// Fluctuation-dissipation correlations and the quadrature noise spectrum

enum class CorrelationKind { adag_a, a_a, adag_adag, a_adag, x_x };

CorrelationKind parse_correlation_kind(std::string_view name);
std::string_view to_string(CorrelationKind kind);

struct CorrelationSeries {
    std::vector<double> tau;
    std::vector<Complex> decaying;  ///< exponential part
    Complex constant;               ///< tau-independent eta^2 contributions

    Complex value(std::size_t k) const { return decaying[k] + constant; }
};

/// Closed-form <A(tau) B(0)> evaluated from the steady state |E0><E0|.
CorrelationSeries correlation(CorrelationKind kind, const DressedSpectrum& spectrum,
                              const RatePair& rates, std::span<const double> tau_grid);

/// Operators (A, B) for a correlation kind in the dressed representation, for
/// use with regression_correlation().
std::pair<Matrix3, Matrix3> correlation_operators(CorrelationKind kind,
                                                  const DressedSpectrum& spectrum);

/// Steady state |E0><E0| in the dressed representation.
Matrix3 steady_state();

struct SpectrumCurve {
    std::vector<double> omega;
    std::vector<double> density;
    double zero_frequency_weight = 0.0;  ///< weight of the 4 eta^2 delta(omega) term
    double peak_minus = 0.0;             ///< omega_-
    double peak_plus = 0.0;              ///< omega_+
    double half_width_minus = 0.0;       ///< gamma_- / 4
    double half_width_plus = 0.0;        ///< gamma_+ / 4
};

/// (1/2pi) hw / ((omega - center)^2 + hw^2); zero when hw == 0.
double lorentzian(double omega, double center, double half_width);

/// Quadrature noise spectrum: a Lorentzian of weight 1/2 at each of +omega_+-
/// with half-width gamma_+-/4. The delta at omega = 0 is recorded separately.
SpectrumCurve spectrum_xx(const DressedSpectrum& spectrum, const RatePair& rates,
                          std::span<const double> omega_grid);

/// |omega_+ - omega_-| = 2 Omega [1 - xi^2 / (2 (omega_z^2 - Omega^2))]
double vacuum_splitting(const DressedSpectrum& spectrum);

// ---------------------------------------------------------------------------
// Decoherence

enum class CoefficientForm {
    /// First-order products of the dressed expansion of |psi(0)>; M_00 = Tr = 1.
    first_order,
    /// The closed forms as published, including M_00 = c_e c_g.
    as_printed,
};

/// Closed-form coefficients split as M(xi) = zeroth + xi * slope.
struct QubitCoefficientSeries {
    ExpansionCoefficients zeroth;
    ExpansionCoefficients slope;

    ExpansionCoefficients at(double xi) const;
};

QubitCoefficientSeries qubit_coefficient_series(const InitialQubitState& state,
                                                const ModelParams& params,
                                                CoefficientForm form = CoefficientForm::first_order);

ExpansionCoefficients expansion_coefficients_qubit(
    const InitialQubitState& state, const DressedSpectrum& spectrum,
    CoefficientForm form = CoefficientForm::first_order);

/// First-order closed form for rho_eg(t) = tr{rho(t) |g><e|}.
Complex rho_eg(const InitialQubitState& state, const DressedSpectrum& spectrum,
               const RatePair& rates, double t,
               CoefficientForm form = CoefficientForm::first_order);

/// D(t) = |rho_eg(t)| / (c_e c_g). Rejects c_e c_g == 0.
std::vector<double> decoherence_factor(const InitialQubitState& state,
                                       const DressedSpectrum& spectrum, const RatePair& rates,
                                       std::span<const double> t_grid,
                                       CoefficientForm form = CoefficientForm::first_order);

/// Undriven decoherence factor
///   D0^2 = 1/4 (e^{-g+ t/4} - e^{-g- t/4})^2 + e^{-(g+ + g-) t/4} cos^2(Omega t).
double undriven_decoherence_factor(double coupling, const RatePair& rates, double t);

std::vector<double> undriven_decoherence_factor(double coupling, const RatePair& rates,
                                                std::span<const double> t_grid);

/// First-order change of D(t) with the drive, xi * dD/dxi at xi = 0.
/// Antisymmetric under phi -> phi + pi. NaN where the undriven coherence
/// vanishes (|.| is not differentiable there).
std::vector<double> decoherence_shift(const InitialQubitState& state,
                                      const DressedSpectrum& spectrum, const RatePair& rates,
                                      std::span<const double> t_grid,
                                      CoefficientForm form = CoefficientForm::first_order);

/// D(t) - D0(t) with the full first-order rho_eg.
std::vector<double> decoherence_shift_full(const InitialQubitState& state,
                                           const DressedSpectrum& spectrum,
                                           const RatePair& rates, std::span<const double> t_grid,
                                           CoefficientForm form = CoefficientForm::first_order);

}  // namespace jcdamp
