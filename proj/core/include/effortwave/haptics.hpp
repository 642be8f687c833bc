#pragma once

// Force -> sense of effort -> vibration amplitude -> 200 Hz AM waveform.

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "effortwave/types.hpp"

namespace effortwave {

enum class NormalizationMode { PerClipMax, FixedReference };

[[nodiscard]] NormalizationMode parse_normalization_mode(std::string_view text);
[[nodiscard]] std::string_view to_string(NormalizationMode mode) noexcept;

/// Parameters of the perceived-intensity model at the carrier frequency.
struct IntensityModelParams {
    double carrier_frequency{200.0};           // Hz
    double detection_threshold_amplitude{1.0};  // A_T(f)
    double alpha{1.0};                          // alpha(f)
    double max_intensity{1.0};                  // I_max applied to effort

    /// Throws Error{Validation} unless every field is finite and positive.
    void validate() const;
};

struct EffortSignal {
    std::vector<double> values;  // in [0, 1]
    std::string source;
};

struct VibrationWaveform {
    double sample_rate{48000.0};
    double carrier_frequency{200.0};
    std::vector<double> samples;  // in [-1, 1]
};

/// Euclidean norms divided by the clip maximum, or by `reference_force` with
/// clamping to 1. An all-zero input yields all zeros.
[[nodiscard]] std::vector<double> normalize_force_magnitude(std::span<const Vec3> forces,
                                                            NormalizationMode mode,
                                                            double reference_force = 0.0);

/// Stevens' power law: effort = normalized^exponent. Throws Error{Numerical}
/// for inputs outside [0, 1] and Error{Validation} for exponent <= 0.
[[nodiscard]] EffortSignal effort_from_force(std::span<const double> normalized, double exponent,
                                             std::string source = {});

/// Inverts I = (A / A_T)^(2 alpha): A = A_T * I^(1 / (2 alpha)).
[[nodiscard]] double intensity_to_amplitude(double intensity, const IntensityModelParams& params);

/// Envelope in [0, 1] for one effort value: the amplitude at I_max * effort
/// divided by the amplitude at I_max.
[[nodiscard]] double envelope_for_effort(double effort, const IntensityModelParams& params);

/// Effort interpolated linearly between frame times, converted to an envelope
/// and multiplied onto sin(2 pi f_c t), t measured from the first frame.
/// Produces ceil(duration * sample_rate) samples.
[[nodiscard]] VibrationWaveform synthesize_am(const EffortSignal& effort,
                                              std::span<const double> frame_times,
                                              const IntensityModelParams& params,
                                              double sample_rate);

}  // namespace effortwave
