#include "jcdamp/liouvillian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace jcdamp {

namespace {

bool same_frequency(double a, double b) {
    return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

double emission_rate(double omega, const BathSpec& bath) {
    if (bath.kind() == BathSpec::Kind::ohmic)
        return bath.kappa() * omega * std::exp(-omega / bath.cutoff());

    if (!bath.transitions())
        throw ParameterError(
            "direct-rate bath has no registered transition frequencies; call with_transitions()");
    const auto [w_minus, w_plus] = *bath.transitions();
    if (same_frequency(omega, w_minus)) return bath.gamma_minus();
    if (same_frequency(omega, w_plus)) return bath.gamma_plus();
    throw ParameterError(fmt::format(
        "direct-rate bath queried at omega = {:.17g}, registered transitions are {:.17g} and {:.17g}",
        omega, w_minus, w_plus));
}

}  // namespace

BathSpec BathSpec::direct(double gamma_minus, double gamma_plus, double temperature) {
    if (!(gamma_minus >= 0.0 && gamma_plus >= 0.0))
        throw ParameterError("direct bath rates must be >= 0");
    if (!(temperature >= 0.0)) throw ParameterError("temperature must be >= 0");
    BathSpec b;
    b.kind_ = Kind::direct_rates;
    b.gamma_minus_ = gamma_minus;
    b.gamma_plus_ = gamma_plus;
    b.temperature_ = temperature;
    return b;
}

BathSpec BathSpec::ohmic(double kappa, double cutoff, double temperature) {
    if (!(kappa >= 0.0)) throw ParameterError("ohmic kappa must be >= 0");
    if (!(cutoff > 0.0)) throw ParameterError("ohmic cutoff frequency must be > 0");
    if (!(temperature >= 0.0)) throw ParameterError("temperature must be >= 0");
    BathSpec b;
    b.kind_ = Kind::ohmic;
    b.kappa_ = kappa;
    b.cutoff_ = cutoff;
    b.temperature_ = temperature;
    return b;
}

BathSpec BathSpec::with_transitions(double omega_minus, double omega_plus) const {
    BathSpec b = *this;
    b.transitions_ = std::make_pair(omega_minus, omega_plus);
    return b;
}

double gamma_of(double omega, const BathSpec& bath) {
    if (omega == 0.0) return 0.0;
    if (omega > 0.0) return emission_rate(omega, bath);
    const double w = -omega;
    const double up = emission_rate(w, bath);
    if (bath.temperature() == 0.0) return 0.0;
    return std::exp(-w / bath.temperature()) * up;
}

RatePair transition_rates(const DressedSpectrum& spectrum, const BathSpec& bath) {
    if (bath.kind() == BathSpec::Kind::direct_rates)
        return RatePair(bath.gamma_minus(), bath.gamma_plus());
    return RatePair(gamma_of(spectrum.omega_minus, bath), gamma_of(spectrum.omega_plus, bath));
}

Matrix3 master_equation_rhs(const DressedSpectrum& spectrum, const RatePair& rates,
                            const Matrix3& rho) {
    Matrix3 h = Matrix3::Zero();
    for (Level l : kLevels) h(index(l), index(l)) = spectrum.energy(l);

    Matrix3 out = -kI * (h * rho - rho * h);
    for (Level l : {Level::minus, Level::plus}) {
        Matrix3 jump = Matrix3::Zero();
        jump(index(Level::ground), index(l)) = 1.0;
        const Matrix3 jdj = jump.adjoint() * jump;
        out += (rates(l) / 2.0) *
               (jump * rho * jump.adjoint() - 0.5 * (jdj * rho + rho * jdj));
    }
    return out;
}

LiouvillianMatrix::LiouvillianMatrix(const Matrix9& generator) : generator_(generator) {
    Eigen::ComplexEigenSolver<Matrix9> es(generator_);
    if (es.info() != Eigen::Success) throw std::runtime_error("Liouvillian eigensolve failed");
    eigenvalues_ = es.eigenvalues();
    eigenvectors_ = es.eigenvectors();
    inverse_eigenvectors_ = eigenvectors_.inverse();
}

Matrix3 LiouvillianMatrix::apply(const Matrix3& rho) const {
    return unvectorize(generator_ * vectorize(rho));
}

Matrix3 LiouvillianMatrix::propagate(const Matrix3& rho, double t) const {
    Vector9 c = inverse_eigenvectors_ * vectorize(rho);
    for (int k = 0; k < 9; ++k) c(k) *= std::exp(eigenvalues_(k) * t);
    return unvectorize(eigenvectors_ * c);
}

double LiouvillianMatrix::spectral_radius() const { return eigenvalues_.cwiseAbs().maxCoeff(); }

LiouvillianMatrix build_liouvillian(const DressedSpectrum& spectrum, const RatePair& rates) {
    Matrix9 l;
    for (int k = 0; k < 9; ++k) {
        Vector9 unit = Vector9::Zero();
        unit(k) = 1.0;
        l.col(k) = vectorize(master_equation_rhs(spectrum, rates, unvectorize(unit)));
    }
    return LiouvillianMatrix(l);
}

void Trajectory::add_column(std::string name, std::vector<double> values) {
    if (values.size() != times.size())
        throw ParameterError(fmt::format("column '{}' has {} rows, trajectory has {}", name,
                                         values.size(), times.size()));
    columns.emplace_back(std::move(name), std::move(values));
}

TrajectoryDiagnostics diagnose(const Trajectory& trajectory) {
    TrajectoryDiagnostics d;
    d.min_eigenvalue = std::numeric_limits<double>::infinity();
    for (const Matrix3& rho : trajectory.states) {
        d.max_trace_error = std::max(d.max_trace_error, std::abs(rho.trace() - 1.0));
        d.max_hermiticity_error = std::max(d.max_hermiticity_error, (rho - rho.adjoint()).norm());
        Eigen::SelfAdjointEigenSolver<Matrix3> es(0.5 * (rho + rho.adjoint()),
                                                  Eigen::EigenvaluesOnly);
        d.min_eigenvalue = std::min(d.min_eigenvalue, es.eigenvalues().minCoeff());
    }
    return d;
}

namespace {

void require_grid(std::span<const double> t_grid) {
    if (t_grid.empty()) throw ParameterError("time grid is empty");
    for (std::size_t k = 0; k < t_grid.size(); ++k) {
        if (!std::isfinite(t_grid[k])) throw ParameterError("time grid has non-finite entries");
        if (k > 0 && !(t_grid[k] > t_grid[k - 1]))
            throw ParameterError(fmt::format("time grid is not strictly increasing at index {}", k));
    }
}

void require_finite(const Vector9& v, double t) {
    if (!v.allFinite())
        throw std::runtime_error(fmt::format("integration produced non-finite state at t = {}", t));
}

}  // namespace

Trajectory integrate(const LiouvillianMatrix& liouvillian, const Matrix3& rho0,
                     std::span<const double> t_grid, Propagator propagator) {
    require_grid(t_grid);
    require_density_matrix(rho0, 1e-8);

    Trajectory out;
    out.times.assign(t_grid.begin(), t_grid.end());
    out.states.reserve(t_grid.size());
    out.states.push_back(rho0);

    if (propagator == Propagator::eigen) {
        for (std::size_t k = 1; k < t_grid.size(); ++k) {
            const Matrix3 rho = liouvillian.propagate(rho0, t_grid[k] - t_grid[0]);
            require_finite(vectorize(rho), t_grid[k]);
            out.states.push_back(rho);
        }
        return out;
    }

    const Matrix9& l = liouvillian.matrix();
    const double radius = liouvillian.spectral_radius();
    const double h_max = radius > 0.0 ? 0.01 / radius : std::numeric_limits<double>::infinity();

    Vector9 v = vectorize(rho0);
    for (std::size_t k = 1; k < t_grid.size(); ++k) {
        const double span = t_grid[k] - t_grid[k - 1];
        const double steps_real = std::ceil(span / h_max);
        if (!(steps_real < 1e9))
            throw std::runtime_error(fmt::format(
                "RK4 step size underflow: {} substeps needed on [{}, {}]", steps_real,
                t_grid[k - 1], t_grid[k]));
        const auto steps = std::max<long>(1, static_cast<long>(steps_real));
        const double h = span / static_cast<double>(steps);
        if (!(t_grid[k - 1] + h > t_grid[k - 1]))
            throw std::runtime_error(fmt::format("RK4 step size underflow at t = {}", t_grid[k - 1]));
        for (long s = 0; s < steps; ++s) {
            const Vector9 k1 = l * v;
            const Vector9 k2 = l * (v + 0.5 * h * k1);
            const Vector9 k3 = l * (v + 0.5 * h * k2);
            const Vector9 k4 = l * (v + h * k3);
            v += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        require_finite(v, t_grid[k]);
        out.states.push_back(unvectorize(v));
    }
    return out;
}

Complex regression_correlation(const LiouvillianMatrix& liouvillian, const Matrix3& rho_ss,
                               const Matrix3& a_op, const Matrix3& b_op, double tau) {
    const Matrix3 evolved = liouvillian.propagate(rho_ss * a_op, tau);
    return (evolved * b_op).trace();
}

std::vector<double> uniform_grid(double t0, double t1, std::size_t n) {
    if (n == 0) throw ParameterError("grid needs at least one point");
    if (n == 1) return {t0};
    if (!(t1 > t0)) throw ParameterError("grid end must exceed grid start");
    std::vector<double> g(n);
    const double dt = (t1 - t0) / static_cast<double>(n - 1);
    for (std::size_t k = 0; k < n; ++k) g[k] = t0 + dt * static_cast<double>(k);
    g.back() = t1;
    return g;
}

}  // namespace jcdamp
