#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace jcdamp {

using Complex = std::complex<double>;
using Matrix3 = Eigen::Matrix3cd;
using Vector3 = Eigen::Vector3cd;
using Matrix9 = Eigen::Matrix<Complex, 9, 9>;
using Vector9 = Eigen::Matrix<Complex, 9, 1>;

inline constexpr Complex kI{0.0, 1.0};

// Bare truncated basis, fixed order: |g,0>, |e,0>, |g,1>.
enum class BareState : int { g0 = 0, e0 = 1, g1 = 2 };

// Dressed levels, fixed order: |E0>, |E->, |E+>. Every 3x3 "dressed
// representation" matrix in this library is indexed in this order.
enum class Level : int { ground = 0, minus = 1, plus = 2 };

inline constexpr int index(BareState s) { return static_cast<int>(s); }
inline constexpr int index(Level l) { return static_cast<int>(l); }

inline constexpr Level kLevels[3] = {Level::ground, Level::minus, Level::plus};

/// Raised when a physical parameter or input state violates a documented
/// invariant.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when the drive exceeds the weak-drive validity guard and the caller
/// did not opt in to strong drive.
class DriveGuardError : public ParameterError {
public:
    using ParameterError::ParameterError;
};

/// Column-stacking vectorization: vec(rho)[i + 3*j] = rho(i, j).
inline Vector9 vectorize(const Matrix3& rho) {
    Vector9 v;
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i) v(i + 3 * j) = rho(i, j);
    return v;
}

inline Matrix3 unvectorize(const Vector9& v) {
    Matrix3 rho;
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i) rho(i, j) = v(i + 3 * j);
    return rho;
}

}  // namespace jcdamp
