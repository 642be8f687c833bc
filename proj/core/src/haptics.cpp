#include "effortwave/haptics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "effortwave/error.hpp"

namespace effortwave {

NormalizationMode parse_normalization_mode(std::string_view text) {
    if (text == "per-clip-max") return NormalizationMode::PerClipMax;
    if (text == "fixed-reference") return NormalizationMode::FixedReference;
    throw Error(ErrorKind::Validation, "normalization_mode must be 'per-clip-max' or "
                                       "'fixed-reference' (got '" + std::string(text) + "')");
}

std::string_view to_string(NormalizationMode mode) noexcept {
    return mode == NormalizationMode::PerClipMax ? "per-clip-max" : "fixed-reference";
}

void IntensityModelParams::validate() const {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw Error(ErrorKind::Validation,
                        std::string("intensity.") + name + " must be finite and positive");
        }
    };
    positive(carrier_frequency, "carrier_frequency");
    positive(detection_threshold_amplitude, "detection_threshold_amplitude");
    positive(alpha, "alpha");
    positive(max_intensity, "max_intensity");
}

std::vector<double> normalize_force_magnitude(std::span<const Vec3> forces,
                                              NormalizationMode mode, double reference_force) {
    std::vector<double> norms;
    norms.reserve(forces.size());
    for (const auto& f : forces) norms.push_back(f.norm());

    if (mode == NormalizationMode::FixedReference) {
        if (!(reference_force > 0.0) || !std::isfinite(reference_force)) {
            throw Error(ErrorKind::Validation, "fixed-reference normalization needs a positive reference force");
        }
        for (auto& n : norms) n = std::min(n / reference_force, 1.0);
        return norms;
    }

    const double peak = norms.empty() ? 0.0 : *std::max_element(norms.begin(), norms.end());
    if (!std::isfinite(peak)) {
        throw Error(ErrorKind::Numerical, "force magnitude is not finite");
    }
    if (peak == 0.0) return std::vector<double>(norms.size(), 0.0);
    for (auto& n : norms) n /= peak;
    return norms;
}

EffortSignal effort_from_force(std::span<const double> normalized, double exponent,
                               std::string source) {
    if (!(exponent > 0.0) || !std::isfinite(exponent)) {
        throw Error(ErrorKind::Validation, "stevens_exponent must be positive");
    }
    EffortSignal out{{}, std::move(source)};
    out.values.reserve(normalized.size());
    for (std::size_t i = 0; i < normalized.size(); ++i) {
        const double x = normalized[i];
        if (!(x >= 0.0 && x <= 1.0)) {
            throw Error(ErrorKind::Numerical, "normalized force outside [0, 1] at frame " +
                                                  std::to_string(i));
        }
        out.values.push_back(std::pow(x, exponent));
    }
    return out;
}

double intensity_to_amplitude(double intensity, const IntensityModelParams& params) {
    params.validate();
    if (!(intensity >= 0.0) || !std::isfinite(intensity)) {
        throw Error(ErrorKind::Numerical, "perceived intensity must be finite and non-negative");
    }
    if (intensity == 0.0) return 0.0;
    return params.detection_threshold_amplitude * std::pow(intensity, 1.0 / (2.0 * params.alpha));
}

double envelope_for_effort(double effort, const IntensityModelParams& params) {
    const double full = intensity_to_amplitude(params.max_intensity, params);
    const double a = intensity_to_amplitude(params.max_intensity * effort, params);
    return std::clamp(a / full, 0.0, 1.0);
}

VibrationWaveform synthesize_am(const EffortSignal& effort, std::span<const double> frame_times,
                                const IntensityModelParams& params, double sample_rate) {
    params.validate();
    if (effort.values.empty()) {
        throw Error(ErrorKind::Validation, "effort signal is empty");
    }
    if (effort.values.size() != frame_times.size()) {
        throw Error(ErrorKind::Validation, "effort and frame times differ in length");
    }
    if (!(sample_rate > 2.0 * params.carrier_frequency) || !std::isfinite(sample_rate)) {
        throw Error(ErrorKind::Validation,
                    "sample rate must exceed twice the carrier frequency");
    }
    for (std::size_t i = 1; i < frame_times.size(); ++i) {
        if (!(frame_times[i] > frame_times[i - 1])) {
            throw Error(ErrorKind::Validation, "frame times must be strictly increasing");
        }
    }

    const double t0 = frame_times.front();
    const double duration = frame_times.back() - t0;
    const auto count = static_cast<std::size_t>(std::ceil(duration * sample_rate));
    const double omega = 2.0 * std::numbers::pi * params.carrier_frequency;

    VibrationWaveform wave;
    wave.sample_rate = sample_rate;
    wave.carrier_frequency = params.carrier_frequency;
    wave.samples.resize(count);

    std::size_t seg = 0;
    for (std::size_t i = 0; i < count; ++i) {
        const double t = static_cast<double>(i) / sample_rate;
        const double ta = t0 + t;
        while (seg + 2 < frame_times.size() && frame_times[seg + 1] <= ta) ++seg;

        double e = effort.values[seg];
        if (seg + 1 < frame_times.size()) {
            const double w = std::clamp(
                (ta - frame_times[seg]) / (frame_times[seg + 1] - frame_times[seg]), 0.0, 1.0);
            e += w * (effort.values[seg + 1] - effort.values[seg]);
        }
        wave.samples[i] = envelope_for_effort(std::clamp(e, 0.0, 1.0), params) * std::sin(omega * t);
    }
    return wave;
}

}  // namespace effortwave
