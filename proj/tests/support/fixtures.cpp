#include "fixtures.hpp"

#include <cmath>
#include <numbers>

namespace effortwave::testing {

std::map<std::string, Vec3> standing_pose() {
    // Left side; the right side mirrors x.
    const std::map<std::string, Vec3> left = {
        {"eye_inner", {0.015, 1.65, 0.07}}, {"eye", {0.030, 1.65, 0.07}},
        {"eye_outer", {0.045, 1.65, 0.065}}, {"ear", {0.075, 1.63, 0.0}},
        {"shoulder", {0.19, 1.42, 0.0}},    {"elbow", {0.21, 1.12, 0.0}},
        {"wrist", {0.22, 0.86, 0.02}},      {"pinky", {0.23, 0.78, 0.02}},
        {"index", {0.22, 0.77, 0.04}},      {"thumb", {0.20, 0.80, 0.05}},
        {"hip", {0.10, 0.95, 0.0}},         {"knee", {0.10, 0.52, 0.02}},
        {"ankle", {0.10, 0.09, 0.0}},       {"heel", {0.10, 0.05, -0.05}},
        {"foot_index", {0.11, 0.02, 0.16}},
    };
    std::map<std::string, Vec3> pose;
    pose["nose"] = {0.0, 1.60, 0.08};
    pose["mouth_left"] = {0.025, 1.56, 0.07};
    pose["mouth_right"] = {-0.025, 1.56, 0.07};
    for (const auto& [name, p] : left) {
        pose["left_" + name] = p;
        pose["right_" + name] = {-p.x(), p.y(), p.z()};
    }
    return pose;
}

LandmarkTrace make_translated_trace(double fps, double duration,
                                    const std::function<Vec3(double)>& offset) {
    const auto pose = standing_pose();
    const auto n = static_cast<std::size_t>(std::lround(duration * fps)) + 1;
    LandmarkTrace trace;
    trace.unit_scale = 1.0;
    trace.up_axis = UpAxis::PosY;
    trace.frame_rate_hint = fps;
    for (std::size_t k = 0; k < n; ++k) {
        LandmarkFrame frame;
        frame.timestamp = static_cast<double>(k) / fps;
        const Vec3 d = offset(frame.timestamp);
        for (const auto& [name, p] : pose) {
            frame.positions[name] = p + d;
            frame.visibility[name] = 1.0;
        }
        trace.frames.push_back(std::move(frame));
    }
    return trace;
}

LandmarkTrace make_static_trace(double fps, double duration) {
    return make_translated_trace(fps, duration, [](double) { return Vec3::Zero().eval(); });
}

LandmarkTrace make_squat_trace(double fps, double duration, double amplitude) {
    return make_translated_trace(fps, duration, [amplitude](double t) {
        return Vec3(0.0, amplitude * std::sin(2.0 * std::numbers::pi * t), 0.0);
    });
}

LandmarkTrace make_extractor_sample() {
    // Image coordinates: x right, y down, normalized so 1 unit = 1.7 m.
    constexpr double kHeight = 1.7;
    const auto pose = standing_pose();
    LandmarkTrace trace;
    trace.unit_scale = kHeight;
    trace.up_axis = UpAxis::NegY;
    trace.frame_rate_hint = 30.0;
    for (int k = 0; k <= 12; ++k) {
        if (k == 5) continue;  // detection dropout
        LandmarkFrame frame;
        frame.timestamp = k / 30.0;
        const double sway = 0.01 * std::sin(2.0 * std::numbers::pi * frame.timestamp);
        int idx = 0;
        for (const auto& [name, p] : pose) {
            const Vec3 image{0.5 + (p.x() + sway) / kHeight, 1.0 - p.y() / kHeight, -p.z() / kHeight};
            frame.positions[name] = image;
            frame.visibility[name] = 0.5 + 0.5 * ((idx++ % 10) / 10.0);
        }
        trace.frames.push_back(std::move(frame));
    }
    return trace;
}

PipelineConfig default_test_config() {
    PipelineConfig cfg;
    cfg.savgol = {9, 3, 2};
    cfg.stevens_exponent = 1.7;
    cfg.intensity = {200.0, 0.2, 0.3, 1.0};
    cfg.subject_mass_kg = 60.0;
    cfg.gravity_magnitude = 9.81;
    cfg.output_sample_rate = 48000.0;
    cfg.normalization_mode = NormalizationMode::PerClipMax;
    return cfg;
}

std::filesystem::path fixture_dir() { return EFFORTWAVE_FIXTURE_DIR; }

std::filesystem::path default_config_path() { return EFFORTWAVE_DEFAULT_CONFIG; }

std::filesystem::path scratch_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("effortwave_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace effortwave::testing
