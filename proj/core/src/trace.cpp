#include "effortwave/trace.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include <nlohmann/json.hpp>

#include "effortwave/error.hpp"
#include "io_util.hpp"

namespace effortwave {

namespace {

using nlohmann::json;

const std::array<std::string, 33> kPoseLandmarks = {
    "nose",           "left_eye_inner",  "left_eye",        "left_eye_outer",
    "right_eye_inner", "right_eye",      "right_eye_outer", "left_ear",
    "right_ear",      "mouth_left",      "mouth_right",     "left_shoulder",
    "right_shoulder", "left_elbow",      "right_elbow",     "left_wrist",
    "right_wrist",    "left_pinky",      "right_pinky",     "left_index",
    "right_index",    "left_thumb",      "right_thumb",     "left_hip",
    "right_hip",      "left_knee",       "right_knee",      "left_ankle",
    "right_ankle",    "left_heel",       "right_heel",      "left_foot_index",
    "right_foot_index",
};

constexpr int kTraceVersion = 1;

[[noreturn]] void schema_error(const std::string& what) {
    throw Error(ErrorKind::Schema, "landmark trace: " + what);
}

double finite_number(const json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        schema_error(where + ": missing field '" + key + "'");
    }
    if (!it->is_number()) {
        schema_error(where + ": field '" + key + "' must be a number");
    }
    double v = it->get<double>();
    if (!std::isfinite(v)) {
        schema_error(where + ": field '" + key + "' is not finite");
    }
    return v;
}

LandmarkFrame parse_frame(const json& jf, std::size_t index) {
    const std::string where = "frame " + std::to_string(index);
    if (!jf.is_object()) {
        schema_error(where + " is not an object");
    }
    LandmarkFrame frame;
    frame.timestamp = finite_number(jf, "t", where);
    if (frame.timestamp < 0.0) {
        schema_error(where + ": negative timestamp");
    }
    auto lms = jf.find("landmarks");
    if (lms == jf.end() || !lms->is_object()) {
        schema_error(where + ": missing object 'landmarks'");
    }
    for (const auto& [name, jl] : lms->items()) {
        const std::string lw = where + ", landmark '" + name + "'";
        if (!jl.is_object()) {
            schema_error(lw + " is not an object");
        }
        Vec3 p{finite_number(jl, "x", lw), finite_number(jl, "y", lw), finite_number(jl, "z", lw)};
        double vis = 1.0;
        if (auto v = jl.find("visibility"); v != jl.end() && !v->is_null()) {
            vis = finite_number(jl, "visibility", lw);
            if (vis < 0.0 || vis > 1.0) {
                schema_error(lw + ": visibility outside [0, 1]");
            }
        }
        frame.positions.emplace(name, p);
        frame.visibility.emplace(name, vis);
    }
    return frame;
}

nlohmann::ordered_json frame_to_json(const LandmarkFrame& frame) {
    nlohmann::ordered_json jf;
    jf["t"] = frame.timestamp;
    nlohmann::ordered_json lms = nlohmann::ordered_json::object();
    for (const auto& [name, p] : frame.positions) {
        auto vis = frame.visibility.find(name);
        lms[name] = {{"x", p.x()},
                     {"y", p.y()},
                     {"z", p.z()},
                     {"visibility", vis == frame.visibility.end() ? 1.0 : vis->second}};
    }
    jf["landmarks"] = std::move(lms);
    return jf;
}

}  // namespace

UpAxis parse_up_axis(std::string_view text) {
    if (text == "+y") return UpAxis::PosY;
    if (text == "-y") return UpAxis::NegY;
    if (text == "+z") return UpAxis::PosZ;
    if (text == "-z") return UpAxis::NegZ;
    throw Error(ErrorKind::Schema,
                "up_axis must be one of +y, -y, +z, -z (got '" + std::string(text) + "')");
}

std::string_view to_string(UpAxis axis) noexcept {
    switch (axis) {
        case UpAxis::PosY:
            return "+y";
        case UpAxis::NegY:
            return "-y";
        case UpAxis::PosZ:
            return "+z";
        case UpAxis::NegZ:
            return "-z";
    }
    return "+y";
}

Vec3 to_y_up(const Vec3& p, UpAxis axis) noexcept {
    switch (axis) {
        case UpAxis::PosY:
            return p;
        case UpAxis::NegY:  // half turn about x
            return {p.x(), -p.y(), -p.z()};
        case UpAxis::PosZ:  // quarter turns about x
            return {p.x(), p.z(), -p.y()};
        case UpAxis::NegZ:
            return {p.x(), -p.z(), p.y()};
    }
    return p;
}

std::vector<double> LandmarkTrace::timestamps() const {
    std::vector<double> t;
    t.reserve(frames.size());
    for (const auto& f : frames) t.push_back(f.timestamp);
    return t;
}

std::span<const std::string> pose_landmark_names() { return kPoseLandmarks; }

LandmarkTrace parse_landmark_trace_text(std::string_view text,
                                        std::span<const std::string> required) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::Parse, std::string("landmark trace: ") + e.what());
    }
    if (!root.is_object()) {
        schema_error("top level is not an object");
    }

    auto version = root.find("version");
    if (version == root.end() || !version->is_number_integer() ||
        version->get<int>() != kTraceVersion) {
        schema_error("unsupported or missing 'version' (expected 1)");
    }

    LandmarkTrace trace;
    trace.unit_scale = finite_number(root, "unit_scale", "header");
    if (trace.unit_scale <= 0.0) {
        schema_error("header: unit_scale must be positive");
    }
    auto up = root.find("up_axis");
    if (up == root.end() || !up->is_string()) {
        schema_error("header: missing string field 'up_axis'");
    }
    trace.up_axis = parse_up_axis(up->get<std::string>());

    if (auto hint = root.find("frame_rate_hint"); hint != root.end() && !hint->is_null()) {
        double rate = finite_number(root, "frame_rate_hint", "header");
        if (rate <= 0.0) {
            schema_error("header: frame_rate_hint must be positive");
        }
        trace.frame_rate_hint = rate;
    }

    auto frames = root.find("frames");
    if (frames == root.end() || !frames->is_array()) {
        schema_error("missing array 'frames'");
    }
    if (frames->empty()) {
        schema_error("'frames' is empty");
    }
    trace.frames.reserve(frames->size());
    for (std::size_t i = 0; i < frames->size(); ++i) {
        LandmarkFrame frame = parse_frame((*frames)[i], i);
        for (const auto& name : required) {
            if (!frame.has(name)) {
                schema_error("frame " + std::to_string(i) + ": missing landmark '" + name + "'");
            }
        }
        if (i > 0 && !(frame.timestamp > trace.frames.back().timestamp)) {
            throw Error(ErrorKind::Ordering,
                        "landmark trace: timestamps not strictly increasing between frames " +
                            std::to_string(i - 1) + " and " + std::to_string(i) + " (t=" +
                            detail::format_double(trace.frames.back().timestamp) +
                            ", t=" + detail::format_double(frame.timestamp) + ")");
        }
        trace.frames.push_back(std::move(frame));
    }
    return trace;
}

LandmarkTrace parse_landmark_trace(const std::filesystem::path& path,
                                   std::span<const std::string> required) {
    return parse_landmark_trace_text(detail::read_text_file(path), required);
}

LandmarkTrace parse_landmark_trace(const std::filesystem::path& path) {
    return parse_landmark_trace(path, pose_landmark_names());
}

std::string serialize_landmark_trace(const LandmarkTrace& trace) {
    nlohmann::ordered_json header;
    header["version"] = kTraceVersion;
    header["unit_scale"] = trace.unit_scale;
    header["up_axis"] = std::string(to_string(trace.up_axis));
    header["frame_rate_hint"] =
        trace.frame_rate_hint ? nlohmann::ordered_json(*trace.frame_rate_hint)
                              : nlohmann::ordered_json(nullptr);

    // One frame per line keeps fixtures diffable.
    std::string out = header.dump();
    out.pop_back();
    out += ",\"frames\":[\n";
    for (std::size_t i = 0; i < trace.frames.size(); ++i) {
        out += frame_to_json(trace.frames[i]).dump();
        out += i + 1 < trace.frames.size() ? ",\n" : "\n";
    }
    out += "]}\n";
    return out;
}

void write_landmark_trace(const LandmarkTrace& trace, const std::filesystem::path& path) {
    detail::write_text_file(path, serialize_landmark_trace(trace));
}

double mean_frame_interval(const LandmarkTrace& trace) {
    if (trace.size() < 2) {
        throw Error(ErrorKind::Validation, "mean frame interval needs at least 2 frames");
    }
    return (trace.frames.back().timestamp - trace.frames.front().timestamp) /
           static_cast<double>(trace.size() - 1);
}

bool is_uniform(const LandmarkTrace& trace, double relative_jitter) {
    if (trace.size() < 2) return true;
    const double mean = mean_frame_interval(trace);
    for (std::size_t i = 1; i < trace.size(); ++i) {
        double dt = trace.frames[i].timestamp - trace.frames[i - 1].timestamp;
        if (std::abs(dt - mean) >= relative_jitter * mean) return false;
    }
    return true;
}

LandmarkTrace resample_uniform(const LandmarkTrace& trace, double target_rate) {
    if (trace.size() < 2) {
        throw Error(ErrorKind::Validation, "resampling needs at least 2 frames, trace has " +
                                               std::to_string(trace.size()));
    }
    if (!(target_rate > 0.0) || !std::isfinite(target_rate)) {
        throw Error(ErrorKind::Validation, "resampling rate must be positive");
    }

    const auto& in = trace.frames;
    const double t0 = in.front().timestamp;
    const double tn = in.back().timestamp;
    const auto count = static_cast<std::size_t>(std::floor((tn - t0) * target_rate + 1e-9)) + 1;

    auto coincides = [](double a, double b) {
        return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b));
    };

    LandmarkTrace out;
    out.unit_scale = trace.unit_scale;
    out.up_axis = trace.up_axis;
    out.frame_rate_hint = target_rate;
    out.frames.reserve(count);

    std::size_t seg = 0;
    for (std::size_t k = 0; k < count; ++k) {
        const double t = t0 + static_cast<double>(k) / target_rate;
        while (seg + 2 < in.size() && in[seg + 1].timestamp < t &&
               !coincides(t, in[seg + 1].timestamp)) {
            ++seg;
        }
        const LandmarkFrame& a = in[seg];
        const LandmarkFrame& b = in[seg + 1];

        LandmarkFrame frame;
        frame.timestamp = t;
        if (coincides(t, a.timestamp) || coincides(t, b.timestamp)) {
            const LandmarkFrame& src = coincides(t, a.timestamp) ? a : b;
            frame.positions = src.positions;
            frame.visibility = src.visibility;
        } else {
            const double w = std::clamp((t - a.timestamp) / (b.timestamp - a.timestamp), 0.0, 1.0);
            for (const auto& [name, pa] : a.positions) {
                auto pb = b.positions.find(name);
                if (pb == b.positions.end()) continue;
                frame.positions.emplace(name, pa + w * (pb->second - pa));
                const double va = a.visibility.contains(name) ? a.visibility.at(name) : 1.0;
                const double vb = b.visibility.contains(name) ? b.visibility.at(name) : 1.0;
                frame.visibility.emplace(name, va + w * (vb - va));
            }
        }
        out.frames.push_back(std::move(frame));
    }
    return out;
}

LandmarkTrace to_metric_y_up(const LandmarkTrace& trace) {
    LandmarkTrace out = trace;
    for (auto& frame : out.frames) {
        for (auto& [name, p] : frame.positions) {
            p = to_y_up(p * trace.unit_scale, trace.up_axis);
        }
    }
    out.unit_scale = 1.0;
    out.up_axis = UpAxis::PosY;
    return out;
}

}  // namespace effortwave
