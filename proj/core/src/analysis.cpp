#include "jcdamp/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include <fftw3.h>

namespace jcdamp {

namespace {

// FFTW planning is not thread-safe; execution is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

AmplitudeSpectrum amplitude_spectrum(std::span<const double> values, double dt) {
    const std::size_t n = values.size();
    if (n < 4) throw std::invalid_argument("amplitude spectrum needs at least 4 samples");
    if (!(dt > 0.0)) throw std::invalid_argument("sample spacing must be positive");

    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(n);
    std::vector<double> in(n);
    std::transform(values.begin(), values.end(), in.begin(), [mean](double v) { return v - mean; });
    std::vector<std::complex<double>> out(n / 2 + 1);

    fftw_plan plan;
    {
        std::lock_guard lock(planner_mutex());
        plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.data(),
                                    reinterpret_cast<fftw_complex*>(out.data()), FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan);
    }

    AmplitudeSpectrum s;
    s.bin_width = 2.0 * std::numbers::pi / (static_cast<double>(n) * dt);
    s.frequency.resize(out.size());
    s.amplitude.resize(out.size());
    for (std::size_t k = 0; k < out.size(); ++k) {
        s.frequency[k] = s.bin_width * static_cast<double>(k);
        s.amplitude[k] = std::abs(out[k]) / static_cast<double>(n);
    }
    return s;
}

SpectralLine AmplitudeSpectrum::dominant(double min_frequency) const {
    SpectralLine best;
    for (std::size_t k = 1; k < amplitude.size(); ++k)
        if (frequency[k] >= min_frequency && amplitude[k] > best.amplitude)
            best = {frequency[k], amplitude[k], k};
    return best;
}

std::vector<SpectralLine> AmplitudeSpectrum::lines(double relative_threshold) const {
    const double floor = relative_threshold * dominant().amplitude;
    std::vector<SpectralLine> out;
    for (std::size_t k = 1; k + 1 < amplitude.size(); ++k)
        if (amplitude[k] >= floor && amplitude[k] > amplitude[k - 1] &&
            amplitude[k] >= amplitude[k + 1])
            out.push_back({frequency[k], amplitude[k], k});
    return out;
}

namespace {

double half_max_crossing(std::span<const double> grid, std::span<const double> values,
                         std::size_t peak, double half, int direction) {
    std::size_t k = peak;
    while (true) {
        if (direction < 0 && k == 0) return std::nan("");
        if (direction > 0 && k + 1 >= values.size()) return std::nan("");
        const std::size_t next = direction < 0 ? k - 1 : k + 1;
        if (values[next] <= half) {
            const double f = (values[k] - half) / (values[k] - values[next]);
            return grid[k] + f * (grid[next] - grid[k]);
        }
        k = next;
    }
}

}  // namespace

std::vector<Peak> find_peaks(std::span<const double> grid, std::span<const double> values,
                             std::size_t count) {
    if (grid.size() != values.size())
        throw std::invalid_argument("peak finder: grid and values differ in length");
    std::vector<Peak> peaks;
    for (std::size_t k = 1; k + 1 < values.size(); ++k) {
        if (values[k] > values[k - 1] && values[k] >= values[k + 1]) {
            Peak p;
            p.index = k;
            p.location = grid[k];
            p.height = values[k];
            const double half = values[k] / 2.0;
            const double lo = half_max_crossing(grid, values, k, half, -1);
            const double hi = half_max_crossing(grid, values, k, half, +1);
            p.fwhm = std::isnan(lo) || std::isnan(hi) ? 0.0 : hi - lo;
            peaks.push_back(p);
        }
    }
    std::sort(peaks.begin(), peaks.end(),
              [](const Peak& a, const Peak& b) { return a.height > b.height; });
    if (peaks.size() > count) peaks.resize(count);
    std::sort(peaks.begin(), peaks.end(),
              [](const Peak& a, const Peak& b) { return a.location < b.location; });
    return peaks;
}

}  // namespace jcdamp
