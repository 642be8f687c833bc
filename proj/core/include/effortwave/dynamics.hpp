#pragma once

// Translational inverse dynamics over the link-model tree.
//
// For every segment, with its proximal joint force f_i and the forces f_c its
// children exert back through their joints,
//
//     m_i * a_i = m_i * g + f_i - sum_c f_c
//
// so solving from the leaves (where the distal sum is empty) towards the root
// yields every joint force. g = (0, -gravity, 0).

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "effortwave/body_model.hpp"
#include "effortwave/savgol.hpp"
#include "effortwave/types.hpp"

namespace effortwave {

/// CoG accelerations in m/s^2 over the valid frame range, indexed
/// [segment][frame - range.begin].
struct KinematicsTrace {
    FrameRange range;
    std::vector<Vec3Series> accelerations;
};

/// Force at each segment's proximal joint, in newtons, over the valid range.
/// Indexed [joint][frame - range.begin]; joint i belongs to segment i.
struct JointForceTrace {
    FrameRange range;
    std::vector<std::string> joint_names;
    std::vector<double> times;
    std::vector<Vec3Series> forces;
};

[[nodiscard]] inline Vec3 gravity_vector(double gravity_magnitude) {
    return {0.0, -gravity_magnitude, 0.0};
}

/// Second-derivative Savitzky-Golay pass over every segment's CoG track.
/// `spec.derivative_order` must be 2.
[[nodiscard]] KinematicsTrace segment_accelerations(const SegmentCogTrace& cogs, double dt,
                                                    const SavGolSpec& spec);

/// Throws Error{Validation} on mismatched shapes or non-positive mass, and
/// Error{Numerical} if a force comes out non-finite.
[[nodiscard]] JointForceTrace inverse_dynamics_tree(const SegmentCogTrace& cogs,
                                                    const KinematicsTrace& accels,
                                                    const BodyModel& model, double subject_mass_kg,
                                                    double gravity_magnitude);

/// M * (a_com - g) per frame.
[[nodiscard]] Vec3Series ground_reaction_force(std::span<const Vec3> com_accel,
                                               double subject_mass_kg, double gravity_magnitude);

/// Header "t,<joint>_fx,<joint>_fy,<joint>_fz,...", one row per valid frame.
void write_joint_forces_csv(const JointForceTrace& forces, const std::filesystem::path& path);

/// Header "t,grf_fx,grf_fy,grf_fz".
void write_grf_csv(std::span<const double> times, std::span<const Vec3> grf,
                   const std::filesystem::path& path);

}  // namespace effortwave
