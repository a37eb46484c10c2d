#pragma once

#include <cmath>
#include <random>

#include "jcdamp/damping.hpp"
#include "jcdamp/liouvillian.hpp"
#include "jcdamp/model.hpp"
#include "jcdamp/observables.hpp"

namespace jcdamp::testing {

/// Reference point: Omega = 0.2, gamma_- = 0.002, gamma_+ = 0.006.
inline ModelParams fig1_params(double xi) { return build_params(5.0, 0.2, xi); }
inline RatePair fig1_rates() { return RatePair(0.002, 0.006); }

/// Random physical parameter draw inside the weak-drive guard.
struct ParameterDraw {
    ModelParams params;
    RatePair rates;
    InitialQubitState state;
};

class Generator {
public:
    explicit Generator(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

    ParameterDraw draw() {
        const double coupling = uniform(0.05, 0.6);
        const double xi = uniform(0.0, 0.45 * (1.0 - coupling)) * uniform(0.0, 1.0);
        const double gm = uniform(1e-4, 0.1);
        double gp = uniform(1e-4, 0.1);
        if (gp == gm) gp *= 1.5;
        return {build_params(5.0, coupling, xi), RatePair(gm, gp), qubit()};
    }

    InitialQubitState qubit() {
        return InitialQubitState::from_amplitudes(uniform(0.05, 1.0), uniform(0.05, 1.0),
                                                  uniform(0.0, 2.0 * M_PI));
    }

    /// Random density matrix: mixture of a random pure state and noise.
    Matrix3 density() {
        Matrix3 a;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) a(i, j) = Complex(uniform(-1, 1), uniform(-1, 1));
        Matrix3 rho = a * a.adjoint();
        return rho / rho.trace();
    }

private:
    std::mt19937_64 rng_;
};

inline double max_abs_diff(const Matrix3& a, const Matrix3& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace jcdamp::testing
