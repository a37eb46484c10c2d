#pragma once

#include <string>
#include <vector>

#include "jcdamp/types.hpp"

namespace jcdamp {

/// Options controlling parameter validation.
struct ParamOptions {
    /// Upper bound on xi / (omega_z - Omega).
    double weak_drive_threshold = 0.5;
    /// Downgrade a weak-drive guard violation from an error to a warning.
    bool allow_strong_drive = false;
    /// Cavity frequency in units of omega_z. Must be 1 (resonance).
    double cavity_ratio = 1.0;
    /// Coupling above which the first-order treatment is flagged.
    double strong_coupling_warning = 0.5;
};

/// Physical parameters, normalized so that omega_z == 1. Frequencies, rates
/// and times elsewhere in the library share this unit.
class ModelParams {
public:
    ModelParams(double omega_z_ghz, double coupling_ratio, double drive_ratio,
                const ParamOptions& options = {});

    double omega_c() const { return omega_c_; }
    double omega_z() const { return 1.0; }
    double coupling() const { return coupling_; }
    double drive() const { return drive_; }
    double omega_z_ghz() const { return omega_z_ghz_; }
    const ParamOptions& options() const { return options_; }

    /// Non-fatal validity diagnostics (strong coupling, overridden guard).
    const std::vector<std::string>& warnings() const { return warnings_; }

    /// Same coupling and options with a different drive.
    ModelParams with_drive(double drive_ratio) const;

    /// omega_z^2 - Omega^2, the denominator shared by most corrections.
    double detuning_product() const { return 1.0 - coupling_ * coupling_; }

private:
    double omega_z_ghz_;
    double omega_c_;
    double coupling_;
    double drive_;
    ParamOptions options_;
    std::vector<std::string> warnings_;
};

/// Normalizing constructor used by the CLI: omega_z in GHz, coupling and drive
/// as ratios to omega_z.
ModelParams build_params(double omega_z_ghz, double coupling_ratio, double drive_ratio,
                         const ParamOptions& options = {});

/// Basis vector of the bare truncated space.
Vector3 bare_state(BareState s);

/// Lowest three levels of the driven Jaynes-Cummings system to first order in
/// the drive. Energies carry the second-order shifts; vectors carry the
/// first-order admixtures and are deliberately not renormalized, so the
/// dressed-index representation treats them as an orthonormal frame.
///
/// The driving-strength ratio eta uses omega_z^2 - Omega^2. One published
/// form writes omega_c^2 - Omega^2 in the same place; at the enforced
/// resonance the two are identical.
struct DressedSpectrum {
    ModelParams params;

    double E0;
    double Eminus;
    double Eplus;

    double omega_minus;  ///< Eminus - E0
    double omega_plus;   ///< Eplus - E0
    double splitting;    ///< Eplus - Eminus, the corrected Rabi frequency
    double eta;          ///< xi * omega_z / (omega_z^2 - Omega^2)

    Vector3 v0;      ///< |E0> in bare order
    Vector3 vminus;  ///< |E-> in bare order
    Vector3 vplus;   ///< |E+> in bare order

    double energy(Level l) const;
    const Vector3& vector(Level l) const;

    /// Columns are v0, v-, v+ (bare -> dressed frame change).
    Matrix3 frame() const;

    /// Row alpha holds <E_alpha|; maps bare amplitudes to dressed amplitudes
    /// through the first-order overlaps.
    Matrix3 overlaps() const { return frame().adjoint(); }

    /// Bare operator expressed in the dressed index frame, V^dagger A V.
    Matrix3 to_dressed(const Matrix3& bare_operator) const;
};

DressedSpectrum dressed_spectrum(const ModelParams& params);

/// Exact H_JC + H_d restricted to {|g,0>, |e,0>, |g,1>}. Validation only.
Matrix3 bare_hamiltonian(const ModelParams& params);

/// Cavity annihilation operator a on the truncated bare space.
Matrix3 bare_annihilation();

}  // namespace jcdamp
