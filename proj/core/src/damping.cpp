#include "jcdamp/damping.hpp"

#include <cmath>

#include <fmt/format.h>

namespace jcdamp {

RatePair::RatePair(double minus, double plus) : gamma_minus(minus), gamma_plus(plus) {
    if (!(std::isfinite(minus) && minus >= 0.0 && std::isfinite(plus) && plus >= 0.0))
        throw ParameterError(
            fmt::format("decay rates must be finite and >= 0, got ({}, {})", minus, plus));
}

double RatePair::operator()(Level l) const {
    switch (l) {
        case Level::minus: return gamma_minus;
        case Level::plus: return gamma_plus;
        case Level::ground: return 0.0;
    }
    return 0.0;
}

double decay_rate(Level a, Level b, const RatePair& rates) {
    if (a == Level::ground && b == Level::ground) return 0.0;
    if (a == b) return -rates(a) / 2.0;
    if (a == Level::ground) return -rates(b) / 4.0;
    if (b == Level::ground) return -rates(a) / 4.0;
    return -(rates.gamma_plus + rates.gamma_minus) / 4.0;
}

DampingBasisSet::DampingBasisSet(const DressedSpectrum& spectrum, const RatePair& rates)
    : rates_(rates) {
    const int g = index(Level::ground);
    for (Level a : kLevels) {
        for (Level b : kLevels) {
            Matrix3 m = Matrix3::Zero();
            m(index(a), index(b)) = 1.0;
            if (a == b && a != Level::ground) m(g, g) = -1.0;
            const int slot = pair_slot(a, b);
            bases_[slot] = m;
            eigenvalues_[slot] =
                -kI * (spectrum.energy(a) - spectrum.energy(b)) + decay_rate(a, b, rates);
            spanning_.col(slot) = vectorize(m);
        }
    }
}

double DampingBasisSet::spanning_condition_number() const {
    Eigen::JacobiSVD<Matrix9> svd(spanning_);
    const auto& sv = svd.singularValues();
    return sv(0) / sv(sv.size() - 1);
}

DampingBasisSet build_damping_bases(const DressedSpectrum& spectrum, const RatePair& rates) {
    return DampingBasisSet(spectrum, rates);
}

double ExpansionCoefficients::hermiticity_defect() const {
    double worst = 0.0;
    for (Level a : kLevels)
        for (Level b : kLevels)
            worst = std::max(worst, std::abs((*this)(b, a) - std::conj((*this)(a, b))));
    return worst;
}

void require_density_matrix(const Matrix3& rho, double tolerance) {
    if (!rho.allFinite()) throw ParameterError("density matrix has non-finite entries");
    const double herm = (rho - rho.adjoint()).norm();
    if (herm > tolerance)
        throw ParameterError(fmt::format("density matrix is not Hermitian (defect {:.3g})", herm));
    const Complex tr = rho.trace();
    if (std::abs(tr - 1.0) > tolerance)
        throw ParameterError(
            fmt::format("density matrix trace is {:.12g}{:+.3g}i, expected 1", tr.real(), tr.imag()));
    Eigen::SelfAdjointEigenSolver<Matrix3> es(0.5 * (rho + rho.adjoint()), Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tolerance)
        throw ParameterError(fmt::format("density matrix is not positive (min eigenvalue {:.3g})",
                                         es.eigenvalues().minCoeff()));
}

ExpansionCoefficients expand_state(const Matrix3& rho0, const DampingBasisSet& bases) {
    require_density_matrix(rho0);
    Eigen::FullPivLU<Matrix9> lu(bases.spanning_matrix());
    // The nine bases always span operator space; a rank drop means the basis
    // set itself was corrupted.
    if (!lu.isInvertible()) throw std::logic_error("damping bases do not span operator space");
    const Vector9 m = lu.solve(vectorize(rho0));
    std::array<Complex, 9> values;
    for (int k = 0; k < 9; ++k) values[k] = m(k);
    return ExpansionCoefficients(values);
}

Matrix3 evolve_analytic(const ExpansionCoefficients& coeffs, const DampingBasisSet& bases,
                        double t) {
    if (t < 0.0) throw ParameterError(fmt::format("time must be >= 0, got {}", t));
    Matrix3 rho = Matrix3::Zero();
    for (int k = 0; k < 9; ++k) {
        const Complex m = coeffs.values()[k];
        if (m == Complex{0.0, 0.0}) continue;
        rho += m * std::exp(bases.eigenvalues()[k] * t) * bases.bases()[k];
    }
    return rho;
}

}  // namespace jcdamp
