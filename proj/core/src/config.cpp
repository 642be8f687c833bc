#include "effortwave/config.hpp"

#include <cmath>
#include <set>
#include <string>

#include <nlohmann/json.hpp>

#include "effortwave/error.hpp"
#include "io_util.hpp"

namespace effortwave {

namespace {

using nlohmann::json;

[[noreturn]] void config_error(const std::string& what) {
    throw Error(ErrorKind::Validation, "config: " + what);
}

void reject_unknown(const json& obj, const std::set<std::string>& known, const std::string& prefix) {
    for (const auto& [key, value] : obj.items()) {
        if (!known.contains(key)) config_error("unknown field '" + prefix + key + "'");
    }
}

const json& required(const json& obj, const char* key, const std::string& prefix) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) {
        config_error("missing required field '" + prefix + key + "'");
    }
    return *it;
}

double required_number(const json& obj, const char* key, const std::string& prefix = {}) {
    const json& v = required(obj, key, prefix);
    if (!v.is_number()) config_error("field '" + prefix + key + "' must be a number");
    return v.get<double>();
}

int required_int(const json& obj, const char* key, const std::string& prefix) {
    const json& v = required(obj, key, prefix);
    if (!v.is_number_integer()) config_error("field '" + prefix + key + "' must be an integer");
    return v.get<int>();
}

std::string required_string(const json& obj, const char* key) {
    const json& v = required(obj, key, {});
    if (!v.is_string()) config_error(std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
}

const json* optional(const json& obj, const char* key) {
    auto it = obj.find(key);
    return it == obj.end() || it->is_null() ? nullptr : &*it;
}

}  // namespace

void PipelineConfig::validate() const {
    savgol.validate();
    if (savgol.derivative_order != 2) config_error("savgol.derivative_order must be 2");
    if (!(stevens_exponent > 0.0) || !std::isfinite(stevens_exponent)) {
        config_error("stevens_exponent must be positive");
    }
    intensity.validate();
    if (!(subject_mass_kg > 0.0) || !std::isfinite(subject_mass_kg)) {
        config_error("subject_mass_kg must be positive");
    }
    if (!(gravity_magnitude > 0.0) || !std::isfinite(gravity_magnitude)) {
        config_error("gravity_magnitude must be positive");
    }
    if (!(output_sample_rate > 2.0 * intensity.carrier_frequency) ||
        !std::isfinite(output_sample_rate)) {
        config_error("output_sample_rate must exceed twice intensity.carrier_frequency");
    }
    if (normalization_mode == NormalizationMode::FixedReference &&
        !(reference_force_n && *reference_force_n > 0.0 && std::isfinite(*reference_force_n))) {
        config_error("fixed-reference normalization needs a positive 'reference_force_n'");
    }
    if (source.empty()) config_error("source must not be empty");
    if (body.empty()) config_error("body must not be empty");
}

PipelineConfig parse_pipeline_config_text(std::string_view text,
                                          const std::filesystem::path& base_dir) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::Parse, std::string("config: ") + e.what());
    }
    if (!root.is_object()) config_error("top level is not an object");
    reject_unknown(root,
                   {"savgol", "body", "stevens_exponent", "intensity", "subject_mass_kg",
                    "gravity_magnitude", "output_sample_rate", "normalization_mode",
                    "reference_force_n", "zero_z", "source"},
                   {});

    PipelineConfig cfg;

    const json& sg = required(root, "savgol", {});
    if (!sg.is_object()) config_error("field 'savgol' must be an object");
    reject_unknown(sg, {"window", "poly_order", "derivative_order"}, "savgol.");
    cfg.savgol.window = required_int(sg, "window", "savgol.");
    cfg.savgol.poly_order = required_int(sg, "poly_order", "savgol.");
    if (optional(sg, "derivative_order")) {
        cfg.savgol.derivative_order = required_int(sg, "derivative_order", "savgol.");
    }

    const json& in = required(root, "intensity", {});
    if (!in.is_object()) config_error("field 'intensity' must be an object");
    reject_unknown(in, {"carrier_frequency", "detection_threshold_amplitude", "alpha", "max_intensity"},
                   "intensity.");
    cfg.intensity.carrier_frequency = required_number(in, "carrier_frequency", "intensity.");
    cfg.intensity.detection_threshold_amplitude =
        required_number(in, "detection_threshold_amplitude", "intensity.");
    cfg.intensity.alpha = required_number(in, "alpha", "intensity.");
    cfg.intensity.max_intensity = required_number(in, "max_intensity", "intensity.");

    cfg.stevens_exponent = required_number(root, "stevens_exponent");
    cfg.subject_mass_kg = required_number(root, "subject_mass_kg");
    cfg.gravity_magnitude = required_number(root, "gravity_magnitude");
    cfg.output_sample_rate = required_number(root, "output_sample_rate");
    cfg.normalization_mode = parse_normalization_mode(required_string(root, "normalization_mode"));

    if (optional(root, "reference_force_n")) {
        cfg.reference_force_n = required_number(root, "reference_force_n");
    }
    if (const json* z = optional(root, "zero_z")) {
        if (!z->is_boolean()) config_error("field 'zero_z' must be a boolean");
        cfg.zero_z = z->get<bool>();
    }
    if (optional(root, "source")) cfg.source = required_string(root, "source");
    if (optional(root, "body")) {
        cfg.body = required_string(root, "body");
        if (cfg.body != "default" && !base_dir.empty() && std::filesystem::path(cfg.body).is_relative()) {
            cfg.body = (base_dir / cfg.body).lexically_normal().string();
        }
    }

    cfg.validate();
    return cfg;
}

PipelineConfig load_pipeline_config(const std::filesystem::path& path) {
    return parse_pipeline_config_text(detail::read_text_file(path), path.parent_path());
}

std::string serialize_pipeline_config(const PipelineConfig& cfg) {
    nlohmann::ordered_json root;
    root["savgol"] = {{"window", cfg.savgol.window},
                      {"poly_order", cfg.savgol.poly_order},
                      {"derivative_order", cfg.savgol.derivative_order}};
    root["body"] = cfg.body;
    root["stevens_exponent"] = cfg.stevens_exponent;
    root["intensity"] = {{"carrier_frequency", cfg.intensity.carrier_frequency},
                         {"detection_threshold_amplitude", cfg.intensity.detection_threshold_amplitude},
                         {"alpha", cfg.intensity.alpha},
                         {"max_intensity", cfg.intensity.max_intensity}};
    root["subject_mass_kg"] = cfg.subject_mass_kg;
    root["gravity_magnitude"] = cfg.gravity_magnitude;
    root["output_sample_rate"] = cfg.output_sample_rate;
    root["normalization_mode"] = std::string(to_string(cfg.normalization_mode));
    if (cfg.reference_force_n) root["reference_force_n"] = *cfg.reference_force_n;
    root["zero_z"] = cfg.zero_z;
    root["source"] = cfg.source;
    return root.dump(2) + "\n";
}

}  // namespace effortwave
