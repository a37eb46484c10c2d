#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace jcdamp {

/// One line of a one-sided amplitude spectrum, in angular frequency.
struct SpectralLine {
    double frequency = 0.0;
    double amplitude = 0.0;
    std::size_t bin = 0;
};

/// |FFT| of a uniformly sampled real series (sample spacing dt), mean removed.
struct AmplitudeSpectrum {
    std::vector<double> frequency;  ///< angular frequency of each bin
    std::vector<double> amplitude;
    double bin_width = 0.0;  ///< angular frequency spacing 2 pi / (N dt)

    /// Largest bin above DC, or above min_frequency. A decaying baseline
    /// piles up in the lowest bins; a cutoff a few decay rates wide keeps
    /// it from masking the oscillation.
    SpectralLine dominant(double min_frequency = 0.0) const;
    /// Local maxima with amplitude >= relative_threshold * dominant amplitude,
    /// in increasing frequency.
    std::vector<SpectralLine> lines(double relative_threshold) const;
};

AmplitudeSpectrum amplitude_spectrum(std::span<const double> values, double dt);

/// A resolved peak of a sampled curve.
struct Peak {
    std::size_t index = 0;
    double location = 0.0;
    double height = 0.0;
    double fwhm = 0.0;  ///< full width at half maximum by linear interpolation; 0 if unresolved
};

/// Highest `count` interior local maxima of values(grid), returned in
/// increasing grid order.
std::vector<Peak> find_peaks(std::span<const double> grid, std::span<const double> values,
                             std::size_t count);

}  // namespace jcdamp
