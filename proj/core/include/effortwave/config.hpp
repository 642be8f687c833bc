#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "effortwave/haptics.hpp"
#include "effortwave/savgol.hpp"

namespace effortwave {

/// Source selection keyword for the whole-body centroid / GRF path.
inline constexpr std::string_view kCentroidSource = "centroid";

struct PipelineConfig {
    SavGolSpec savgol{9, 3, 2};
    std::string body{"default"};  // "default" or a model override file
    double stevens_exponent{1.7};
    IntensityModelParams intensity;
    double subject_mass_kg{60.0};
    double gravity_magnitude{9.81};
    double output_sample_rate{48000.0};
    NormalizationMode normalization_mode{NormalizationMode::PerClipMax};
    std::optional<double> reference_force_n;  // required for fixed-reference
    bool zero_z{false};                       // drop depth before dynamics
    std::string source{kCentroidSource};      // joint/segment name or "centroid"

    /// Throws Error{Validation} naming the offending field.
    void validate() const;
};

/// Parses the JSON config. Required keys: savgol.window, savgol.poly_order,
/// stevens_exponent, intensity.{carrier_frequency, detection_threshold_amplitude,
/// alpha, max_intensity}, subject_mass_kg, gravity_magnitude, output_sample_rate,
/// normalization_mode. A relative `body` path is resolved against `base_dir`.
[[nodiscard]] PipelineConfig parse_pipeline_config_text(std::string_view json,
                                                        const std::filesystem::path& base_dir = {});
[[nodiscard]] PipelineConfig load_pipeline_config(const std::filesystem::path& path);
[[nodiscard]] std::string serialize_pipeline_config(const PipelineConfig& config);

}  // namespace effortwave
