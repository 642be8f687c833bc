#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "effortwave/trace.hpp"
#include "effortwave/types.hpp"

namespace effortwave {

/// A point on the body defined from landmarks: the mean of `average_of`, or
/// the mean of `fallback` when some of `average_of` is missing in a frame.
struct LandmarkPoint {
    std::vector<std::string> average_of;
    std::vector<std::string> fallback;

    friend bool operator==(const LandmarkPoint&, const LandmarkPoint&) = default;
};

struct SegmentDef {
    std::string name;
    std::string parent;  // empty for the root
    double mass_ratio{0.0};
    LandmarkPoint proximal;
    LandmarkPoint distal;
    double cog_ratio{0.0};  // fraction along proximal -> distal

    friend bool operator==(const SegmentDef&, const SegmentDef&) = default;
};

/// Segments of the link model connected in a tree. Each segment owns the
/// joint at its proximal end; the root's joint is its contact with the ground.
class BodyModel {
public:
    /// Validates mass ratios, cog ratios and the tree structure.
    /// Throws Error{Validation}.
    explicit BodyModel(std::vector<SegmentDef> segments);

    [[nodiscard]] const std::vector<SegmentDef>& segments() const noexcept { return segments_; }
    [[nodiscard]] std::size_t size() const noexcept { return segments_.size(); }
    [[nodiscard]] const SegmentDef& segment(std::size_t i) const { return segments_.at(i); }

    [[nodiscard]] std::size_t root() const noexcept { return root_; }
    [[nodiscard]] std::optional<std::size_t> parent(std::size_t i) const { return parents_.at(i); }
    /// Children in declaration order.
    [[nodiscard]] const std::vector<std::size_t>& children(std::size_t i) const {
        return children_.at(i);
    }
    [[nodiscard]] std::optional<std::size_t> find(std::string_view name) const;

    /// Every segment appears after all of its descendants.
    [[nodiscard]] const std::vector<std::size_t>& leaves_to_root() const noexcept {
        return leaves_to_root_;
    }

    /// "<parent>-<child>", or "ground-<root>" for the root contact.
    [[nodiscard]] std::string joint_name(std::size_t i) const;

    /// Sum of mass ratios of segment i and all its descendants.
    [[nodiscard]] double subtree_mass_ratio(std::size_t i) const;

    /// Landmarks without a fallback, sorted and unique.
    [[nodiscard]] std::vector<std::string> required_landmarks() const;

private:
    std::vector<SegmentDef> segments_;
    std::vector<std::optional<std::size_t>> parents_;
    std::vector<std::vector<std::size_t>> children_;
    std::vector<std::size_t> leaves_to_root_;
    std::size_t root_{0};
};

/// The 15-segment human link model with the shipped mass and cog tables.
[[nodiscard]] const BodyModel& default_body_model();

[[nodiscard]] BodyModel parse_body_model_text(std::string_view json);
[[nodiscard]] BodyModel load_body_model(const std::filesystem::path& path);
[[nodiscard]] std::string serialize_body_model(const BodyModel& model);

/// CoG positions in meters, +y up, indexed [segment][frame].
struct SegmentCogTrace {
    std::vector<double> times;
    std::vector<Vec3Series> positions;

    [[nodiscard]] std::size_t frame_count() const noexcept { return times.size(); }
};

/// cog = proximal + cog_ratio * (distal - proximal) after unit scaling and the
/// up-axis rotation. Throws Error{Schema} naming the landmark and frame when an
/// endpoint cannot be resolved.
[[nodiscard]] SegmentCogTrace compute_cog_positions(const LandmarkTrace& trace,
                                                    const BodyModel& model);

/// Mass-ratio weighted sum of segment CoGs, per frame.
[[nodiscard]] Vec3Series whole_body_com(const SegmentCogTrace& cogs, const BodyModel& model);

}  // namespace effortwave
