#include "jcdamp/model.hpp"

#include <cmath>

#include <fmt/format.h>

namespace jcdamp {

ModelParams::ModelParams(double omega_z_ghz, double coupling_ratio, double drive_ratio,
                         const ParamOptions& options)
    : omega_z_ghz_(omega_z_ghz),
      omega_c_(options.cavity_ratio),
      coupling_(coupling_ratio),
      drive_(drive_ratio),
      options_(options) {
    if (!(std::isfinite(omega_z_ghz) && omega_z_ghz > 0.0))
        throw ParameterError(fmt::format("omega_z must be positive, got {} GHz", omega_z_ghz));
    if (options.cavity_ratio != 1.0)
        throw ParameterError(fmt::format(
            "cavity frequency must equal omega_z (resonance), got omega_c/omega_z = {}",
            options.cavity_ratio));
    if (!(coupling_ratio > 0.0 && coupling_ratio < 1.0))
        throw ParameterError(
            fmt::format("coupling ratio Omega/omega_z must lie in (0, 1), got {}", coupling_ratio));
    if (!(std::isfinite(drive_ratio) && drive_ratio >= 0.0))
        throw ParameterError(fmt::format("drive ratio must be >= 0, got {}", drive_ratio));
    if (!(options.weak_drive_threshold > 0.0))
        throw ParameterError("weak-drive threshold must be positive");

    const double guard = drive_ratio / (1.0 - coupling_ratio);
    if (guard >= options.weak_drive_threshold) {
        auto msg = fmt::format(
            "drive xi/(omega_z - Omega) = {:.6g} exceeds the weak-drive threshold {:.6g}", guard,
            options.weak_drive_threshold);
        if (!options.allow_strong_drive) throw DriveGuardError(msg);
        warnings_.push_back(msg + " (overridden)");
    }
    if (coupling_ratio > options.strong_coupling_warning)
        warnings_.push_back(fmt::format(
            "coupling Omega/omega_z = {:.6g} is outside the perturbative validity region "
            "(> {:.6g}); first-order results are qualitative",
            coupling_ratio, options.strong_coupling_warning));
}

ModelParams ModelParams::with_drive(double drive_ratio) const {
    return ModelParams(omega_z_ghz_, coupling_, drive_ratio, options_);
}

ModelParams build_params(double omega_z_ghz, double coupling_ratio, double drive_ratio,
                         const ParamOptions& options) {
    return ModelParams(omega_z_ghz, coupling_ratio, drive_ratio, options);
}

Vector3 bare_state(BareState s) {
    Vector3 v = Vector3::Zero();
    v(index(s)) = 1.0;
    return v;
}

double DressedSpectrum::energy(Level l) const {
    switch (l) {
        case Level::ground: return E0;
        case Level::minus: return Eminus;
        case Level::plus: return Eplus;
    }
    return E0;
}

const Vector3& DressedSpectrum::vector(Level l) const {
    switch (l) {
        case Level::ground: return v0;
        case Level::minus: return vminus;
        case Level::plus: return vplus;
    }
    return v0;
}

Matrix3 DressedSpectrum::frame() const {
    Matrix3 v;
    v.col(0) = v0;
    v.col(1) = vminus;
    v.col(2) = vplus;
    return v;
}

Matrix3 DressedSpectrum::to_dressed(const Matrix3& bare_operator) const {
    const Matrix3 v = frame();
    return v.adjoint() * bare_operator * v;
}

DressedSpectrum dressed_spectrum(const ModelParams& params) {
    const double wz = params.omega_z();
    const double g = params.coupling();
    const double xi = params.drive();
    const double denom = params.detuning_product();
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

    DressedSpectrum s{params, 0, 0, 0, 0, 0, 0, 0, {}, {}, {}};
    s.E0 = -wz / 2.0 - wz * xi * xi / denom;
    s.Eminus = wz / 2.0 - g + xi * xi / (2.0 * (wz - g));
    s.Eplus = wz / 2.0 + g + xi * xi / (2.0 * (wz + g));
    s.omega_minus = s.Eminus - s.E0;
    s.omega_plus = s.Eplus - s.E0;
    s.splitting = s.Eplus - s.Eminus;
    s.eta = xi * wz / denom;

    const Vector3 g0 = bare_state(BareState::g0);
    const Vector3 e0 = bare_state(BareState::e0);
    const Vector3 g1 = bare_state(BareState::g1);
    const Vector3 minus0 = inv_sqrt2 * (g1 - e0);
    const Vector3 plus0 = inv_sqrt2 * (g1 + e0);

    const double c_minus = xi * inv_sqrt2 / (wz - g);
    const double c_plus = xi * inv_sqrt2 / (wz + g);
    s.v0 = g0 - c_minus * minus0 - c_plus * plus0;
    s.vminus = minus0 + c_minus * g0;
    s.vplus = plus0 + c_plus * g0;
    return s;
}

Matrix3 bare_hamiltonian(const ModelParams& params) {
    const double wz = params.omega_z();
    const double wc = params.omega_c();
    const double g = params.coupling();
    const double xi = params.drive();
    const int G0 = index(BareState::g0), E0 = index(BareState::e0), G1 = index(BareState::g1);

    Matrix3 h = Matrix3::Zero();
    h(G0, G0) = -wz / 2.0;
    h(E0, E0) = wz / 2.0;
    h(G1, G1) = wc - wz / 2.0;
    // Omega (a sigma+ + a^dagger sigma-): <e,0| a sigma+ |g,1> = Omega
    h(E0, G1) = g;
    h(G1, E0) = g;
    // xi (a + a^dagger): a|g,1> = |g,0>; a^dagger|e,0> leaves the truncated space
    h(G0, G1) = xi;
    h(G1, G0) = xi;
    return h;
}

Matrix3 bare_annihilation() {
    Matrix3 a = Matrix3::Zero();
    a(index(BareState::g0), index(BareState::g1)) = 1.0;
    return a;
}

}  // namespace jcdamp
