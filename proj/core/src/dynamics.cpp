#include "effortwave/dynamics.hpp"

#include <cmath>
#include <string>

#include "effortwave/error.hpp"
#include "io_util.hpp"

namespace effortwave {

namespace {

void append_vec(std::string& row, const Vec3& v) {
    for (int k = 0; k < 3; ++k) {
        row += ',';
        detail::append_double(row, v[k]);
    }
}

}  // namespace

KinematicsTrace segment_accelerations(const SegmentCogTrace& cogs, double dt,
                                      const SavGolSpec& spec) {
    if (spec.derivative_order != 2) {
        throw Error(ErrorKind::Validation, "segment accelerations need derivative_order 2");
    }
    KinematicsTrace out;
    out.range = savgol_valid_range(cogs.frame_count(), spec);
    out.accelerations.reserve(cogs.positions.size());
    for (const auto& track : cogs.positions) {
        out.accelerations.push_back(smooth_differentiate(track, dt, spec));
    }
    return out;
}

JointForceTrace inverse_dynamics_tree(const SegmentCogTrace& cogs, const KinematicsTrace& accels,
                                      const BodyModel& model, double subject_mass_kg,
                                      double gravity_magnitude) {
    if (!(subject_mass_kg > 0.0)) {
        throw Error(ErrorKind::Validation, "subject mass must be positive");
    }
    if (accels.accelerations.size() != model.size()) {
        throw Error(ErrorKind::Validation, "acceleration trace does not match the body model");
    }
    const std::size_t frames = accels.range.size();
    if (accels.range.end > cogs.frame_count()) {
        throw Error(ErrorKind::Validation, "acceleration range exceeds the CoG trace");
    }
    for (const auto& a : accels.accelerations) {
        if (a.size() != frames) {
            throw Error(ErrorKind::Validation, "acceleration track length does not match its range");
        }
    }

    const Vec3 g = gravity_vector(gravity_magnitude);

    JointForceTrace out;
    out.range = accels.range;
    out.times.assign(cogs.times.begin() + static_cast<std::ptrdiff_t>(accels.range.begin),
                     cogs.times.begin() + static_cast<std::ptrdiff_t>(accels.range.end));
    out.joint_names.reserve(model.size());
    for (std::size_t s = 0; s < model.size(); ++s) out.joint_names.push_back(model.joint_name(s));
    out.forces.assign(model.size(), Vec3Series(frames, Vec3::Zero()));

    for (std::size_t f = 0; f < frames; ++f) {
        for (std::size_t s : model.leaves_to_root()) {
            const double m = model.segment(s).mass_ratio * subject_mass_kg;
            Vec3 force = m * accels.accelerations[s][f] - m * g;
            for (std::size_t c : model.children(s)) force += out.forces[c][f];
            if (!force.allFinite()) {
                throw Error(ErrorKind::Numerical,
                            "non-finite force at joint " + out.joint_names[s] + ", frame " +
                                std::to_string(accels.range.begin + f));
            }
            out.forces[s][f] = force;
        }
    }
    return out;
}

Vec3Series ground_reaction_force(std::span<const Vec3> com_accel, double subject_mass_kg,
                                 double gravity_magnitude) {
    const Vec3 g = gravity_vector(gravity_magnitude);
    Vec3Series out;
    out.reserve(com_accel.size());
    for (const auto& a : com_accel) out.push_back(subject_mass_kg * (a - g));
    return out;
}

void write_joint_forces_csv(const JointForceTrace& forces, const std::filesystem::path& path) {
    std::string text = "t";
    for (const auto& name : forces.joint_names) {
        text += ',' + name + "_fx," + name + "_fy," + name + "_fz";
    }
    text += '\n';
    for (std::size_t f = 0; f < forces.times.size(); ++f) {
        detail::append_double(text, forces.times[f]);
        for (const auto& joint : forces.forces) append_vec(text, joint[f]);
        text += '\n';
    }
    detail::write_text_file(path, text);
}

void write_grf_csv(std::span<const double> times, std::span<const Vec3> grf,
                   const std::filesystem::path& path) {
    if (times.size() != grf.size()) {
        throw Error(ErrorKind::Validation, "GRF and time columns differ in length");
    }
    std::string text = "t,grf_fx,grf_fy,grf_fz\n";
    for (std::size_t f = 0; f < times.size(); ++f) {
        detail::append_double(text, times[f]);
        append_vec(text, grf[f]);
        text += '\n';
    }
    detail::write_text_file(path, text);
}

}  // namespace effortwave
