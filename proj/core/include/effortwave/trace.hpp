#pragma once

// Landmark traces: the per-frame body keypoint positions produced by a pose
// estimator, plus the JSON wire format shared with the extraction tool.

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "effortwave/types.hpp"

namespace effortwave {

/// Which signed axis of the trace coordinates points up, against gravity.
enum class UpAxis { PosY, NegY, PosZ, NegZ };

[[nodiscard]] UpAxis parse_up_axis(std::string_view text);
[[nodiscard]] std::string_view to_string(UpAxis axis) noexcept;

/// Proper rotation taking trace coordinates with the given up axis into a
/// frame where +y is up.
[[nodiscard]] Vec3 to_y_up(const Vec3& p, UpAxis axis) noexcept;

struct LandmarkFrame {
    double timestamp{0.0};                  // seconds
    std::map<std::string, Vec3> positions;  // trace units
    std::map<std::string, double> visibility;

    [[nodiscard]] bool has(const std::string& name) const { return positions.contains(name); }
};

struct LandmarkTrace {
    std::vector<LandmarkFrame> frames;
    std::optional<double> frame_rate_hint;
    double unit_scale{1.0};  // meters per trace unit
    UpAxis up_axis{UpAxis::PosY};

    [[nodiscard]] std::size_t size() const noexcept { return frames.size(); }
    [[nodiscard]] std::vector<double> timestamps() const;
};

/// The 33 landmark names of the pose topology, in estimator index order.
[[nodiscard]] std::span<const std::string> pose_landmark_names();

/// Parses and validates a trace. Every name in `required` must be present in
/// every frame. Throws Error{Parse|Schema|Ordering}.
[[nodiscard]] LandmarkTrace parse_landmark_trace_text(std::string_view json,
                                                      std::span<const std::string> required);
[[nodiscard]] LandmarkTrace parse_landmark_trace(const std::filesystem::path& path,
                                                 std::span<const std::string> required);
/// Requires the full 33-landmark topology.
[[nodiscard]] LandmarkTrace parse_landmark_trace(const std::filesystem::path& path);

[[nodiscard]] std::string serialize_landmark_trace(const LandmarkTrace& trace);
void write_landmark_trace(const LandmarkTrace& trace, const std::filesystem::path& path);

/// Mean spacing between consecutive timestamps. Requires >= 2 frames.
[[nodiscard]] double mean_frame_interval(const LandmarkTrace& trace);

/// True when every interval deviates from the mean by less than
/// `relative_jitter` of the mean.
[[nodiscard]] bool is_uniform(const LandmarkTrace& trace, double relative_jitter = 0.01);

/// Linear resampling onto t0 + k / target_rate, covering [t0, tN]. Output
/// frames that coincide with an input frame copy its positions unchanged.
[[nodiscard]] LandmarkTrace resample_uniform(const LandmarkTrace& trace, double target_rate);

/// Applies unit_scale and the up-axis rotation; the result is in meters with
/// unit_scale 1 and +y up.
[[nodiscard]] LandmarkTrace to_metric_y_up(const LandmarkTrace& trace);

}  // namespace effortwave
