#pragma once

#include <array>

#include "jcdamp/model.hpp"
#include "jcdamp/types.hpp"

namespace jcdamp {

/// Downward decay rates gamma(E- - E0) and gamma(E+ - E0).
struct RatePair {
    double gamma_minus = 0.0;
    double gamma_plus = 0.0;

    RatePair() = default;
    RatePair(double minus, double plus);

    double operator()(Level l) const;
    bool degenerate() const { return gamma_minus == gamma_plus; }
};

/// Flat slot for the ordered pair (alpha, beta): 3*alpha + beta.
inline constexpr int pair_slot(Level a, Level b) { return 3 * index(a) + index(b); }

/// Real part of the Liouvillian eigenvalue attached to |E_a><E_b|.
double decay_rate(Level a, Level b, const RatePair& rates);

/// The nine right eigenoperators of the dressed Liouvillian and their
/// eigenvalues, all in the dressed index representation:
///   rho_00 = |E0><E0|,
///   rho_ab = |E_a><E_b| - delta_ab |E0><E0|   otherwise.
/// Eigenvalues are lambda_ab = -i (E_a - E_b) + decay(a, b), so lambda_0+ has
/// imaginary part +omega_+.
class DampingBasisSet {
public:
    DampingBasisSet(const DressedSpectrum& spectrum, const RatePair& rates);

    const Matrix3& basis(Level a, Level b) const { return bases_[pair_slot(a, b)]; }
    Complex eigenvalue(Level a, Level b) const { return eigenvalues_[pair_slot(a, b)]; }

    const std::array<Matrix3, 9>& bases() const { return bases_; }
    const std::array<Complex, 9>& eigenvalues() const { return eigenvalues_; }
    const RatePair& rates() const { return rates_; }

    /// 9x9 matrix whose column k is vec(basis in slot k).
    const Matrix9& spanning_matrix() const { return spanning_; }
    double spanning_condition_number() const;

private:
    std::array<Matrix3, 9> bases_;
    std::array<Complex, 9> eigenvalues_;
    RatePair rates_;
    Matrix9 spanning_;
};

DampingBasisSet build_damping_bases(const DressedSpectrum& spectrum, const RatePair& rates);

/// Coefficients M_ab of rho = sum_ab M_ab rho_ab.
class ExpansionCoefficients {
public:
    ExpansionCoefficients() { values_.fill(Complex{0.0, 0.0}); }
    explicit ExpansionCoefficients(const std::array<Complex, 9>& values) : values_(values) {}

    Complex& operator()(Level a, Level b) { return values_[pair_slot(a, b)]; }
    Complex operator()(Level a, Level b) const { return values_[pair_slot(a, b)]; }

    const std::array<Complex, 9>& values() const { return values_; }

    /// max |M_ba - conj(M_ab)|
    double hermiticity_defect() const;

private:
    std::array<Complex, 9> values_;
};

/// Tolerance for the density-matrix preconditions of expand_state.
inline constexpr double kStateTolerance = 1e-9;

/// Throws ParameterError unless rho is Hermitian, unit-trace and positive
/// semidefinite to kStateTolerance.
void require_density_matrix(const Matrix3& rho, double tolerance = kStateTolerance);

/// Exact expansion of a dressed-representation density matrix in the damping
/// bases (9x9 linear solve against the spanning matrix).
ExpansionCoefficients expand_state(const Matrix3& rho0, const DampingBasisSet& bases);

/// rho(t) = sum_ab M_ab exp(lambda_ab t) rho_ab.
Matrix3 evolve_analytic(const ExpansionCoefficients& coeffs, const DampingBasisSet& bases,
                        double t);

}  // namespace jcdamp
