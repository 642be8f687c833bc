#include "effortwave/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <sstream>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

#include "effortwave/error.hpp"
#include "effortwave/plot.hpp"
#include "effortwave/wav.hpp"
#include "io_util.hpp"

namespace effortwave {

namespace {

constexpr std::string_view kCentroidLabel = "GRF/centroid";

/// Runs `fn`, records its wall time and prefixes any error with the stage name.
template <typename Fn>
auto run_stage(std::string_view name, std::vector<StageTiming>& timings, Fn&& fn) {
    const auto start = std::chrono::steady_clock::now();
    auto record = [&] {
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
        timings.push_back({std::string(name), elapsed.count()});
    };
    try {
        if constexpr (std::is_void_v<std::invoke_result_t<Fn>>) {
            fn();
            record();
        } else {
            auto result = fn();
            record();
            return result;
        }
    } catch (const Error& e) {
        throw Error(e.kind(), "stage '" + std::string(name) + "': " + e.what());
    } catch (const std::filesystem::filesystem_error& e) {
        throw Error(ErrorKind::Io, "stage '" + std::string(name) + "': " + e.what());
    }
}

struct SourceForces {
    std::string label;
    const Vec3Series* forces{nullptr};
};

SourceForces select_source(const ForceStage& stage, const BodyModel& model,
                           std::string_view source) {
    if (source == kCentroidSource) return {std::string(kCentroidLabel), &stage.grf};
    const auto& names = stage.joint_forces.joint_names;
    for (std::size_t j = 0; j < names.size(); ++j) {
        if (names[j] == source) return {names[j], &stage.joint_forces.forces[j]};
    }
    if (auto seg = model.find(source)) {
        return {names.at(*seg), &stage.joint_forces.forces.at(*seg)};
    }
    throw Error(ErrorKind::Validation,
                "unknown source '" + std::string(source) +
                    "'; expected 'centroid', a joint name such as '" + names.front() +
                    "', or a segment name");
}

void ensure_directory(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) {
        throw Error(ErrorKind::Io, "cannot create output directory '" + dir.string() + "'");
    }
}

double parse_csv_number(std::string_view cell, std::size_t line) {
    double v = 0.0;
    const auto* first = cell.data();
    const auto* last = cell.data() + cell.size();
    while (first < last && *first == ' ') ++first;
    while (last > first && (last[-1] == ' ' || last[-1] == '\r')) --last;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || first == last) {
        throw Error(ErrorKind::Parse, "effort csv line " + std::to_string(line) +
                                          ": not a number '" + std::string(cell) + "'");
    }
    return v;
}

std::vector<std::string_view> split_row(std::string_view row) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
        const auto comma = row.find(',', start);
        cells.push_back(row.substr(start, comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return cells;
}

}  // namespace

BodyModel resolve_body_model(const PipelineConfig& config) {
    if (config.body == "default") return default_body_model();
    return load_body_model(config.body);
}

ForceStage compute_forces(const LandmarkTrace& trace, const BodyModel& model,
                          const PipelineConfig& config) {
    config.validate();
    if (trace.size() < 2) {
        throw Error(ErrorKind::Validation, "trace needs at least 2 frames");
    }

    ForceStage out;
    LandmarkTrace uniform;
    if (is_uniform(trace)) {
        uniform = trace;
    } else {
        const double rate = trace.frame_rate_hint.value_or(1.0 / mean_frame_interval(trace));
        uniform = resample_uniform(trace, rate);
        out.resampled = true;
    }
    if (uniform.size() < static_cast<std::size_t>(config.savgol.window)) {
        throw Error(ErrorKind::Validation,
                    "trace has " + std::to_string(uniform.size()) +
                        " frames but the Savitzky-Golay window needs " +
                        std::to_string(config.savgol.window));
    }

    out.dt = mean_frame_interval(uniform);
    out.cogs = compute_cog_positions(uniform, model);
    if (config.zero_z) {
        for (auto& track : out.cogs.positions) {
            for (auto& p : track) p.z() = 0.0;
        }
    }
    out.trace = to_metric_y_up(uniform);

    out.kinematics = segment_accelerations(out.cogs, out.dt, config.savgol);
    out.joint_forces = inverse_dynamics_tree(out.cogs, out.kinematics, model,
                                             config.subject_mass_kg, config.gravity_magnitude);

    out.com = whole_body_com(out.cogs, model);
    out.com_accel = smooth_differentiate(out.com, out.dt, config.savgol);
    out.grf = ground_reaction_force(out.com_accel, config.subject_mass_kg, config.gravity_magnitude);
    return out;
}

EffortStage compute_effort(const ForceStage& forces, const BodyModel& model,
                           const PipelineConfig& config, std::string_view source) {
    const SourceForces selected = select_source(forces, model, source);
    EffortStage out;
    out.source = selected.label;
    out.times = forces.joint_forces.times;
    out.source_forces = *selected.forces;
    out.normalized = normalize_force_magnitude(out.source_forces, config.normalization_mode,
                                               config.reference_force_n.value_or(0.0));
    out.effort = effort_from_force(out.normalized, config.stevens_exponent, out.source);
    out.envelope.reserve(out.effort.values.size());
    for (double e : out.effort.values) {
        out.envelope.push_back(envelope_for_effort(e, config.intensity));
    }
    return out;
}

PipelineReport run_pipeline(const std::filesystem::path& trace_path,
                            const std::filesystem::path& config_path,
                            const std::filesystem::path& output_dir, const RunOptions& options) {
    PipelineReport report;
    auto& timings = report.timings;

    PipelineConfig config = run_stage("config", timings, [&] {
        auto cfg = load_pipeline_config(config_path);
        if (options.source) cfg.source = *options.source;
        cfg.validate();
        return cfg;
    });
    const BodyModel model = run_stage("model", timings, [&] { return resolve_body_model(config); });
    const LandmarkTrace trace = run_stage("parse", timings, [&] {
        const auto required = model.required_landmarks();
        return parse_landmark_trace(trace_path, required);
    });
    const ForceStage forces =
        run_stage("dynamics", timings, [&] { return compute_forces(trace, model, config); });

    report.frame_count = trace.size();
    report.frame_rate = 1.0 / forces.dt;
    report.duration = trace.frames.back().timestamp - trace.frames.front().timestamp;
    report.resampled = forces.resampled;
    report.valid_range = forces.joint_forces.range;

    const SourceForces selected =
        run_stage("source", timings, [&] { return select_source(forces, model, config.source); });
    report.source = selected.label;
    for (std::size_t f = 0; f < selected.forces->size(); ++f) {
        const double n = (*selected.forces)[f].norm();
        if (f == 0 || n > report.peak_force_n) {
            report.peak_force_n = n;
            report.peak_force_frame = report.valid_range.begin + f;
        }
    }

    run_stage("write-forces", timings, [&] {
        ensure_directory(output_dir);
        write_joint_forces_csv(forces.joint_forces, output_dir / "joint_forces.csv");
        write_grf_csv(forces.joint_forces.times, forces.grf, output_dir / "grf.csv");
    });
    report.outputs = {output_dir / "joint_forces.csv", output_dir / "grf.csv"};

    if (options.synthesize) {
        const EffortStage effort = run_stage(
            "effort", timings, [&] { return compute_effort(forces, model, config, config.source); });
        const VibrationWaveform wave = run_stage("synthesis", timings, [&] {
            return synthesize_am(effort.effort, effort.times, config.intensity,
                                 config.output_sample_rate);
        });
        run_stage("write-audio", timings, [&] {
            write_effort_csv(output_dir / "effort.csv", effort.times, effort.effort.values,
                             effort.envelope);
            write_wav(wave, output_dir / "vibration.wav");
        });
        report.outputs.push_back(output_dir / "effort.csv");
        report.outputs.push_back(output_dir / "vibration.wav");

        if (options.plots) {
            const PlotSet plots = run_stage("plots", timings, [&] {
                return emit_plots(forces.joint_forces, effort.effort, effort.envelope, output_dir);
            });
            report.outputs.insert(report.outputs.end(), plots.files.begin(), plots.files.end());
        }
    }

    report.outputs.push_back(output_dir / "report.json");
    run_stage("report", timings, [&] { write_report_json(report, output_dir / "report.json"); });
    return report;
}

PipelineReport run_synth(const std::filesystem::path& effort_csv,
                         const std::filesystem::path& config_path,
                         const std::filesystem::path& output_dir) {
    PipelineReport report;
    auto& timings = report.timings;
    const PipelineConfig config =
        run_stage("config", timings, [&] { return load_pipeline_config(config_path); });
    const EffortTable table = run_stage("parse", timings, [&] { return read_effort_csv(effort_csv); });

    report.frame_count = table.times.size();
    report.duration = table.times.back() - table.times.front();
    report.frame_rate = table.times.size() > 1
                            ? static_cast<double>(table.times.size() - 1) / report.duration
                            : 0.0;
    report.valid_range = {0, table.times.size()};
    report.source = "effort-csv";

    const VibrationWaveform wave = run_stage("synthesis", timings, [&] {
        EffortSignal effort{table.effort, "effort-csv"};
        for (std::size_t i = 0; i < effort.values.size(); ++i) {
            const double e = effort.values[i];
            if (!(e >= 0.0 && e <= 1.0)) {
                throw Error(ErrorKind::Numerical,
                            "effort outside [0, 1] at row " + std::to_string(i + 1));
            }
        }
        return synthesize_am(effort, table.times, config.intensity, config.output_sample_rate);
    });
    run_stage("write-audio", timings, [&] {
        ensure_directory(output_dir);
        write_wav(wave, output_dir / "vibration.wav");
    });
    report.outputs = {output_dir / "vibration.wav", output_dir / "report.json"};
    run_stage("report", timings, [&] { write_report_json(report, output_dir / "report.json"); });
    return report;
}

EffortTable read_effort_csv(const std::filesystem::path& path) {
    const std::string text = detail::read_text_file(path);
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) {
        throw Error(ErrorKind::Parse, "effort csv '" + path.string() + "' is empty");
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto header = split_row(line);
    const auto t_col = std::find(header.begin(), header.end(), "t");
    const auto e_col = std::find(header.begin(), header.end(), "effort");
    if (t_col == header.end() || e_col == header.end()) {
        throw Error(ErrorKind::Schema, "effort csv needs 't' and 'effort' columns");
    }
    const auto ti = static_cast<std::size_t>(t_col - header.begin());
    const auto ei = static_cast<std::size_t>(e_col - header.begin());

    EffortTable table;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const auto cells = split_row(line);
        if (cells.size() != header.size()) {
            throw Error(ErrorKind::Parse, "effort csv line " + std::to_string(line_no) +
                                              ": expected " + std::to_string(header.size()) +
                                              " columns");
        }
        table.times.push_back(parse_csv_number(cells[ti], line_no));
        table.effort.push_back(parse_csv_number(cells[ei], line_no));
    }
    if (table.times.empty()) {
        throw Error(ErrorKind::Schema, "effort csv has no data rows");
    }
    return table;
}

void write_effort_csv(const std::filesystem::path& path, std::span<const double> times,
                      std::span<const double> effort, std::span<const double> envelope) {
    if (times.size() != effort.size() || times.size() != envelope.size()) {
        throw Error(ErrorKind::Validation, "effort csv columns differ in length");
    }
    std::string text = "t,effort,envelope\n";
    for (std::size_t i = 0; i < times.size(); ++i) {
        detail::append_double(text, times[i]);
        text += ',';
        detail::append_double(text, effort[i]);
        text += ',';
        detail::append_double(text, envelope[i]);
        text += '\n';
    }
    detail::write_text_file(path, text);
}

void write_report_json(const PipelineReport& report, const std::filesystem::path& path) {
    nlohmann::ordered_json root;
    root["input"] = {{"frame_count", report.frame_count},
                     {"frame_rate_hz", report.frame_rate},
                     {"duration_s", report.duration},
                     {"resampled", report.resampled}};
    root["valid_range"] = {{"begin", report.valid_range.begin}, {"end", report.valid_range.end}};
    root["source"] = report.source;
    root["peak_force_n"] = report.peak_force_n;
    root["peak_force_frame"] = report.peak_force_frame;
    auto& timings = root["timings_s"] = nlohmann::ordered_json::object();
    for (const auto& t : report.timings) timings[t.stage] = t.seconds;
    auto& outputs = root["outputs"] = nlohmann::ordered_json::array();
    for (const auto& p : report.outputs) outputs.push_back(p.string());
    detail::write_text_file(path, root.dump(2) + "\n");
}

}  // namespace effortwave
