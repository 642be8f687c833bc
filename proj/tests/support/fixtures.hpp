#pragma once

// Synthetic landmark traces shared by the unit, integration and acceptance
// suites. The checked-in JSON fixtures are produced from these by
// make_fixtures.

#include <filesystem>
#include <functional>
#include <map>
#include <string>

#include "effortwave/config.hpp"
#include "effortwave/trace.hpp"

namespace effortwave::testing {

/// A standing adult, meters, +y up, +x toward the subject's left.
[[nodiscard]] std::map<std::string, Vec3> standing_pose();

/// Every landmark of the standing pose translated by offset(t), sampled at
/// k / fps for k = 0 .. round(duration * fps).
[[nodiscard]] LandmarkTrace make_translated_trace(double fps, double duration,
                                                  const std::function<Vec3(double)>& offset);

[[nodiscard]] LandmarkTrace make_static_trace(double fps, double duration);

/// y_com(t) = y0 + amplitude * sin(2 pi t)
[[nodiscard]] LandmarkTrace make_squat_trace(double fps, double duration, double amplitude = 0.1);

/// Image-normalized, y-down trace in the extractor's shape: partial
/// visibility, one dropped frame.
[[nodiscard]] LandmarkTrace make_extractor_sample();

/// The shipped defaults (window 9 / order 3, 60 kg, 48 kHz, per-clip-max).
[[nodiscard]] PipelineConfig default_test_config();

[[nodiscard]] std::filesystem::path fixture_dir();
[[nodiscard]] std::filesystem::path default_config_path();

/// Fresh empty directory under the system temp dir.
[[nodiscard]] std::filesystem::path scratch_dir(const std::string& name);

}  // namespace effortwave::testing
