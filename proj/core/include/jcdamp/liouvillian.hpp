#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "jcdamp/damping.hpp"
#include "jcdamp/model.hpp"
#include "jcdamp/types.hpp"

namespace jcdamp {

/// Environmental coupling model. Rates and temperature are in units of
/// omega_z with k_B = 1.
class BathSpec {
public:
    enum class Kind { direct_rates, ohmic };

    /// Fixed rates for the two dressed transitions. gamma_of() only answers
    /// once the transition frequencies have been registered.
    static BathSpec direct(double gamma_minus, double gamma_plus, double temperature = 0.0);
    /// gamma(omega) = kappa * omega * exp(-omega / cutoff) for omega > 0.
    static BathSpec ohmic(double kappa, double cutoff, double temperature = 0.0);

    /// Registers the transition frequencies a direct-rate bath answers for.
    BathSpec with_transitions(double omega_minus, double omega_plus) const;

    Kind kind() const { return kind_; }
    double gamma_minus() const { return gamma_minus_; }
    double gamma_plus() const { return gamma_plus_; }
    double kappa() const { return kappa_; }
    double cutoff() const { return cutoff_; }
    double temperature() const { return temperature_; }
    const std::optional<std::pair<double, double>>& transitions() const { return transitions_; }

private:
    BathSpec() = default;

    Kind kind_ = Kind::direct_rates;
    double gamma_minus_ = 0.0;
    double gamma_plus_ = 0.0;
    double kappa_ = 0.0;
    double cutoff_ = 1.0;
    double temperature_ = 0.0;
    std::optional<std::pair<double, double>> transitions_;
};

/// Emission rate at omega > 0; absorption at omega < 0 follows the KMS
/// relation gamma(-w) = exp(-w / T) gamma(w) and vanishes at T = 0.
double gamma_of(double omega, const BathSpec& bath);

/// gamma_+- evaluated at the perturbed transition frequencies E+- - E0.
RatePair transition_rates(const DressedSpectrum& spectrum, const BathSpec& bath);

/// Right-hand side of the dressed-frame master equation
///   -i[H, rho] + sum_+- (gamma_+-/2) [J rho J^dag - 1/2 {J^dag J, rho}],
/// H = diag(E0, E-, E+), J_+- = |E0><E+-|. Downward jumps only.
Matrix3 master_equation_rhs(const DressedSpectrum& spectrum, const RatePair& rates,
                            const Matrix3& rho);

/// Dense 9x9 superoperator on column-stacked dressed density matrices, with
/// its eigendecomposition cached at construction.
class LiouvillianMatrix {
public:
    explicit LiouvillianMatrix(const Matrix9& generator);

    const Matrix9& matrix() const { return generator_; }
    const Vector9& eigenvalues() const { return eigenvalues_; }
    const Matrix9& eigenvectors() const { return eigenvectors_; }

    Matrix3 apply(const Matrix3& rho) const;

    /// exp(L t) rho through the eigendecomposition.
    Matrix3 propagate(const Matrix3& rho, double t) const;

    /// max |lambda| over the spectrum.
    double spectral_radius() const;

private:
    Matrix9 generator_;
    Vector9 eigenvalues_;
    Matrix9 eigenvectors_;
    Matrix9 inverse_eigenvectors_;
};

LiouvillianMatrix build_liouvillian(const DressedSpectrum& spectrum, const RatePair& rates);

/// Time grid plus density matrices, optionally with named scalar columns.
struct Trajectory {
    std::vector<double> times;
    std::vector<Matrix3> states;
    std::vector<std::pair<std::string, std::vector<double>>> columns;

    std::size_t size() const { return times.size(); }
    void add_column(std::string name, std::vector<double> values);
};

struct TrajectoryDiagnostics {
    double max_trace_error = 0.0;
    double max_hermiticity_error = 0.0;
    double min_eigenvalue = 0.0;
};

TrajectoryDiagnostics diagnose(const Trajectory& trajectory);

enum class Propagator { runge_kutta4, eigen };

/// Fixed-step classical RK4 on dv/dt = L v, step h <= min(0.01 / max|lambda|,
/// grid spacing); rho0 is the state at t_grid.front(). The eigen propagator
/// applies exp(L (t - t0)) directly and serves as the cross-check.
Trajectory integrate(const LiouvillianMatrix& liouvillian, const Matrix3& rho0,
                     std::span<const double> t_grid,
                     Propagator propagator = Propagator::runge_kutta4);

/// Quantum-regression two-time average tr{ e^{L tau}(rho_ss A) B } with A and B
/// in the dressed representation.
Complex regression_correlation(const LiouvillianMatrix& liouvillian, const Matrix3& rho_ss,
                               const Matrix3& a_op, const Matrix3& b_op, double tau);

/// Uniform grid of n points on [t0, t1].
std::vector<double> uniform_grid(double t0, double t1, std::size_t n);

}  // namespace jcdamp
