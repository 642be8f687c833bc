#pragma once

// End-to-end orchestration: trace file -> forces -> effort -> WAV, with CSV,
// SVG and JSON report side outputs.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "effortwave/body_model.hpp"
#include "effortwave/config.hpp"
#include "effortwave/dynamics.hpp"
#include "effortwave/haptics.hpp"
#include "effortwave/trace.hpp"

namespace effortwave {

/// Everything computed up to and including inverse dynamics.
struct ForceStage {
    LandmarkTrace trace;  // uniform grid, meters, +y up
    bool resampled{false};
    double dt{0.0};
    SegmentCogTrace cogs;
    KinematicsTrace kinematics;
    JointForceTrace joint_forces;
    Vec3Series com;        // every frame
    Vec3Series com_accel;  // valid range
    Vec3Series grf;        // valid range
};

[[nodiscard]] ForceStage compute_forces(const LandmarkTrace& trace, const BodyModel& model,
                                        const PipelineConfig& config);

struct EffortStage {
    std::string source;
    std::vector<double> times;  // valid range
    Vec3Series source_forces;
    std::vector<double> normalized;
    EffortSignal effort;
    std::vector<double> envelope;  // at frame times
};

/// `source` is "centroid" (GRF) or a joint name ("Hip-RThigh") or the name of
/// the segment owning the joint ("RThigh").
[[nodiscard]] EffortStage compute_effort(const ForceStage& forces, const BodyModel& model,
                                         const PipelineConfig& config, std::string_view source);

[[nodiscard]] BodyModel resolve_body_model(const PipelineConfig& config);

struct StageTiming {
    std::string stage;
    double seconds{0.0};
};

struct PipelineReport {
    std::size_t frame_count{0};
    double frame_rate{0.0};
    double duration{0.0};
    bool resampled{false};
    FrameRange valid_range;
    std::string source;
    double peak_force_n{0.0};
    std::size_t peak_force_frame{0};
    std::vector<StageTiming> timings;
    std::vector<std::filesystem::path> outputs;
};

struct RunOptions {
    std::optional<std::string> source;  // overrides the config
    bool synthesize{true};              // false: stop after the force CSVs
    bool plots{true};
};

/// Runs every stage and writes joint_forces.csv, grf.csv, effort.csv,
/// vibration.wav, the SVG plots and report.json into `output_dir`.
/// Stage failures are rethrown with the stage name prefixed.
PipelineReport run_pipeline(const std::filesystem::path& trace_path,
                            const std::filesystem::path& config_path,
                            const std::filesystem::path& output_dir, const RunOptions& options = {});

/// Effort CSV (columns t, effort) -> vibration.wav.
PipelineReport run_synth(const std::filesystem::path& effort_csv,
                         const std::filesystem::path& config_path,
                         const std::filesystem::path& output_dir);

struct EffortTable {
    std::vector<double> times;
    std::vector<double> effort;
};

[[nodiscard]] EffortTable read_effort_csv(const std::filesystem::path& path);

/// Header "t,effort,envelope".
void write_effort_csv(const std::filesystem::path& path, std::span<const double> times,
                      std::span<const double> effort, std::span<const double> envelope);

void write_report_json(const PipelineReport& report, const std::filesystem::path& path);

}  // namespace effortwave
