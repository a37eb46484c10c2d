#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "jcdamp/analysis.hpp"
#include "jcdamp/liouvillian.hpp"

using namespace jcdamp;

TEST_CASE("amplitude spectrum locates a pure tone to within one bin") {
    const double dt = 0.1;
    const std::size_t n = 4096;
    for (double w : {0.3, 0.77, 2.1}) {
        std::vector<double> x(n);
        for (std::size_t k = 0; k < n; ++k) x[k] = 3.0 + 0.5 * std::cos(w * k * dt + 0.4);
        const AmplitudeSpectrum s = amplitude_spectrum(x, dt);
        CHECK(s.bin_width == doctest::Approx(2.0 * std::numbers::pi / (n * dt)));
        const SpectralLine d = s.dominant();
        CHECK(std::abs(d.frequency - w) <= s.bin_width);
        CHECK(d.bin > 0);
    }
}

TEST_CASE("amplitude spectrum lists both lines of a two-tone signal") {
    const double dt = 0.05;
    const std::size_t n = 8192;
    std::vector<double> x(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double t = k * dt;
        x[k] = std::cos(1.0 * t) + 0.4 * std::sin(2.5 * t);
    }
    const AmplitudeSpectrum s = amplitude_spectrum(x, dt);
    const auto lines = s.lines(0.2);
    REQUIRE(lines.size() >= 2);
    CHECK(std::abs(lines.front().frequency - 1.0) <= s.bin_width);
    bool found = false;
    for (const auto& l : lines)
        if (std::abs(l.frequency - 2.5) <= s.bin_width) found = true;
    CHECK(found);
    CHECK(s.lines(0.9).size() == 1);
}

TEST_CASE("a decaying baseline hides the tone unless the low band is skipped") {
    const double dt = 0.5;
    const std::size_t n = 4096;
    std::vector<double> x(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double t = k * dt;
        x[k] = std::exp(-0.003 * t) + 0.2 * std::cos(0.4 * t);
    }
    const AmplitudeSpectrum s = amplitude_spectrum(x, dt);
    CHECK(s.dominant().frequency < 0.01);
    CHECK(std::abs(s.dominant(0.03).frequency - 0.4) <= s.bin_width);
}

TEST_CASE("amplitude spectrum rejects degenerate input") {
    std::vector<double> tiny{1.0};
    CHECK_THROWS(amplitude_spectrum(tiny, 0.1));
    std::vector<double> x(16, 1.0);
    CHECK_THROWS(amplitude_spectrum(x, 0.0));
}

TEST_CASE("peak finder on two Lorentzians") {
    const auto grid = uniform_grid(0.0, 4.0, 40001);
    std::vector<double> y(grid.size());
    auto lor = [](double x, double c, double hw) { return hw * hw / ((x - c) * (x - c) + hw * hw); };
    for (std::size_t k = 0; k < grid.size(); ++k)
        y[k] = lor(grid[k], 1.0, 0.05) + 0.5 * lor(grid[k], 3.0, 0.1);
    const auto peaks = find_peaks(grid, y, 2);
    REQUIRE(peaks.size() == 2);
    CHECK(peaks[0].location == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(peaks[1].location == doctest::Approx(3.0).epsilon(1e-4));
    CHECK(peaks[0].fwhm == doctest::Approx(0.1).epsilon(1e-2));
    CHECK(peaks[1].fwhm == doctest::Approx(0.2).epsilon(1e-2));
    CHECK(peaks[0].height > peaks[1].height);

    const auto one = find_peaks(grid, y, 1);
    REQUIRE(one.size() == 1);
    CHECK(one[0].location == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("peak finder with no interior maximum") {
    const auto grid = uniform_grid(0.0, 1.0, 11);
    CHECK(find_peaks(grid, grid, 2).empty());
}
