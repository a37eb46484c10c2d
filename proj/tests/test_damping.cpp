#include <doctest.h>

#include <cmath>

#include "jcdamp/damping.hpp"
#include "jcdamp/liouvillian.hpp"
#include "test_support.hpp"

using namespace jcdamp;
using jcdamp::testing::max_abs_diff;

namespace {
constexpr Level G = Level::ground;
constexpr Level M = Level::minus;
constexpr Level P = Level::plus;
}  // namespace

TEST_CASE("eigenvalues at xi = 0 with the reference rates") {
    const DressedSpectrum s = dressed_spectrum(build_params(5.0, 0.2, 0.0));
    const DampingBasisSet b = build_damping_bases(s, testing::fig1_rates());
    CHECK(b.eigenvalue(G, G) == Complex(0.0, 0.0));
    CHECK(b.eigenvalue(P, P).real() == doctest::Approx(-0.003).epsilon(1e-15));
    CHECK(b.eigenvalue(P, P).imag() == 0.0);
    CHECK(b.eigenvalue(M, M).real() == doctest::Approx(-0.001).epsilon(1e-15));
    CHECK(b.eigenvalue(G, P).real() == doctest::Approx(-0.0015).epsilon(1e-15));
    CHECK(b.eigenvalue(G, P).imag() == doctest::Approx(1.2).epsilon(1e-15));
    CHECK(b.eigenvalue(G, M).real() == doctest::Approx(-0.0005).epsilon(1e-15));
    CHECK(b.eigenvalue(G, M).imag() == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(b.eigenvalue(M, P).real() == doctest::Approx(-0.002).epsilon(1e-15));
    CHECK(b.eigenvalue(M, P).imag() == doctest::Approx(0.4).epsilon(1e-15));
}

TEST_CASE("driven eigenvalue imaginary parts follow the energy differences") {
    const DressedSpectrum s = dressed_spectrum(build_params(5.0, 0.2, 0.1));
    const DampingBasisSet b = build_damping_bases(s, testing::fig1_rates());
    // omega_z + Omega + (3 omega_z - Omega) xi^2 / (2 (omega_z^2 - Omega^2))
    CHECK(b.eigenvalue(G, P).imag() == doctest::Approx(1.2 + 2.8 * 0.01 / 1.92).epsilon(1e-14));
    CHECK(b.eigenvalue(G, P).imag() == doctest::Approx(1.2145833333333333).epsilon(1e-14));
    CHECK(b.eigenvalue(G, M).imag() == doctest::Approx(0.8 + 3.2 * 0.01 / 1.92).epsilon(1e-14));
    CHECK(b.eigenvalue(M, P).imag() == doctest::Approx(0.39791666666666664).epsilon(1e-14));
}

TEST_CASE("basis set invariants") {
    testing::Generator gen(3);
    for (int trial = 0; trial < 30; ++trial) {
        const auto draw = gen.draw();
        const DampingBasisSet b = build_damping_bases(dressed_spectrum(draw.params), draw.rates);

        const Matrix3& r00 = b.basis(G, G);
        CHECK(r00.trace() == Complex(1.0));
        CHECK(max_abs_diff(r00 * r00, r00) == 0.0);
        Eigen::FullPivLU<Matrix3> lu(r00);
        CHECK(lu.rank() == 1);

        for (Level x : kLevels) {
            for (Level y : kLevels) {
                if (!(x == G && y == G)) CHECK(std::abs(b.basis(x, y).trace()) == 0.0);
                CHECK(max_abs_diff(b.basis(y, x), b.basis(x, y).adjoint()) == 0.0);
                CHECK(b.eigenvalue(y, x) == std::conj(b.eigenvalue(x, y)));
                CHECK(b.eigenvalue(x, y).real() <= 0.0);
            }
        }
        CHECK(b.eigenvalue(G, G) == Complex(0.0, 0.0));
        CHECK(b.spanning_condition_number() < 1e3);
    }
}

TEST_CASE("each basis is a right eigenoperator of the brute-force Liouvillian") {
    testing::Generator gen(5);
    for (int trial = 0; trial < 30; ++trial) {
        const auto draw = gen.draw();
        const DressedSpectrum s = dressed_spectrum(draw.params);
        const DampingBasisSet b = build_damping_bases(s, draw.rates);
        const LiouvillianMatrix l = build_liouvillian(s, draw.rates);
        for (Level x : kLevels)
            for (Level y : kLevels)
                CHECK((l.apply(b.basis(x, y)) - b.eigenvalue(x, y) * b.basis(x, y)).norm() <= 1e-10);
    }
}

TEST_CASE("xi = 0 eigenvalue reductions") {
    const RatePair r(0.013, 0.021);
    const DampingBasisSet b = build_damping_bases(dressed_spectrum(build_params(5.0, 0.35, 0.0)), r);
    CHECK(b.eigenvalue(G, P) == Complex(-0.021 / 4.0, 1.35));
    CHECK(b.eigenvalue(G, M) == Complex(-0.013 / 4.0, 0.65));
    CHECK(b.eigenvalue(M, P).real() == -(0.021 + 0.013) / 4.0);
    CHECK(b.eigenvalue(M, P).imag() == doctest::Approx(0.7).epsilon(1e-15));
}

TEST_CASE("expand_state of the steady state") {
    const DressedSpectrum s = dressed_spectrum(build_params(5.0, 0.2, 0.1));
    const DampingBasisSet b = build_damping_bases(s, testing::fig1_rates());
    Matrix3 rho = Matrix3::Zero();
    rho(0, 0) = 1.0;
    const ExpansionCoefficients m = expand_state(rho, b);
    for (Level x : kLevels)
        for (Level y : kLevels)
            CHECK(std::abs(m(x, y) - (x == G && y == G ? 1.0 : 0.0)) <= 1e-15);

    for (double t : {0.0, 1.0, 37.5, 1e4})
        CHECK(max_abs_diff(evolve_analytic(m, b, t), rho) == 0.0);
}

TEST_CASE("expand_state of the inverted state |e,0>") {
    // Expected first-order expansion:
    // rho(0) = rho_00 + 1/2 (rho_-- + rho_++ - rho_+- - rho_-+)
    //          - xi Omega / (sqrt2 (omega_z^2 - Omega^2)) (rho_0- - rho_0+ + rho_-0 - rho_+0)
    const double xi = 0.01;
    const DressedSpectrum s = dressed_spectrum(build_params(5.0, 0.2, xi));
    const DampingBasisSet b = build_damping_bases(s, testing::fig1_rates());
    const Matrix3 rho = dressed_density(bare_state(BareState::e0), s);
    const ExpansionCoefficients m = expand_state(rho, b);
    const double c = xi * 0.2 / (std::sqrt(2.0) * 0.96);
    const double tol = 10.0 * xi * xi;
    CHECK(std::abs(m(G, G) - 1.0) <= 1e-12);
    CHECK(std::abs(m(M, M) - 0.5) <= tol);
    CHECK(std::abs(m(P, P) - 0.5) <= tol);
    CHECK(std::abs(m(P, M) + 0.5) <= tol);
    CHECK(std::abs(m(M, P) + 0.5) <= tol);
    CHECK(std::abs(m(G, M) + c) <= tol);
    CHECK(std::abs(m(M, G) + c) <= tol);
    CHECK(std::abs(m(G, P) - c) <= tol);
    CHECK(std::abs(m(P, G) - c) <= tol);
}

TEST_CASE("expansion reconstructs arbitrary states and respects Hermiticity") {
    testing::Generator gen(13);
    for (int trial = 0; trial < 40; ++trial) {
        const auto draw = gen.draw();
        const DampingBasisSet b = build_damping_bases(dressed_spectrum(draw.params), draw.rates);
        const Matrix3 rho = gen.density();
        const ExpansionCoefficients m = expand_state(rho, b);
        CHECK(m.hermiticity_defect() <= 1e-12);
        CHECK(max_abs_diff(evolve_analytic(m, b, 0.0), rho) <= 1e-12);
    }
}

TEST_CASE("evolve_analytic preserves trace and Hermiticity on [0, 1e4]") {
    testing::Generator gen(17);
    for (int trial = 0; trial < 20; ++trial) {
        const auto draw = gen.draw();
        const DampingBasisSet b = build_damping_bases(dressed_spectrum(draw.params), draw.rates);
        const ExpansionCoefficients m = expand_state(gen.density(), b);
        for (double t : {0.0, 0.3, 10.0, 123.4, 2500.0, 1e4}) {
            const Matrix3 rho = evolve_analytic(m, b, t);
            CHECK(std::abs(rho.trace() - 1.0) <= 1e-9);
            CHECK((rho - rho.adjoint()).norm() <= 1e-9);
        }
    }
}

TEST_CASE("undamped undriven Rabi oscillation from |e,0>") {
    // Oracle: <e,0|rho(t)|e,0> = cos^2(Omega t) for the bare JC model.
    const double g = 0.2;
    const DressedSpectrum s = dressed_spectrum(build_params(5.0, g, 0.0));
    const DampingBasisSet b = build_damping_bases(s, RatePair(0.0, 0.0));
    const ExpansionCoefficients m = expand_state(dressed_density(bare_state(BareState::e0), s), b);
    for (double t = 0.0; t < 60.0; t += 0.37) {
        const double pe = bare_population(evolve_analytic(m, b, t), s, BareState::e0);
        CHECK(pe == doctest::Approx(std::cos(g * t) * std::cos(g * t)).epsilon(1e-12));
    }
}

TEST_CASE("expand_state rejects non-physical input") {
    const DampingBasisSet b =
        build_damping_bases(dressed_spectrum(build_params(5.0, 0.2, 0.0)), testing::fig1_rates());
    Matrix3 not_unit = Matrix3::Identity();
    CHECK_THROWS_AS(expand_state(not_unit, b), ParameterError);

    Matrix3 not_hermitian = Matrix3::Zero();
    not_hermitian(0, 0) = 1.0;
    not_hermitian(0, 1) = 0.3;
    CHECK_THROWS_AS(expand_state(not_hermitian, b), ParameterError);

    Matrix3 negative = Matrix3::Zero();
    negative(0, 0) = 1.5;
    negative(1, 1) = -0.5;
    CHECK_THROWS_AS(expand_state(negative, b), ParameterError);

    CHECK_THROWS_AS(evolve_analytic(ExpansionCoefficients{}, b, -1.0), ParameterError);
}

TEST_CASE("rate pair validation and degeneracy flag") {
    CHECK_THROWS_AS(RatePair(-0.1, 0.2), ParameterError);
    CHECK(RatePair(0.01, 0.01).degenerate());
    CHECK_FALSE(RatePair(0.01, 0.02).degenerate());
}
