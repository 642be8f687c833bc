// effortwave: landmark trace -> joint forces -> sense-of-effort vibration.
//
//   effortwave run    --trace T.json --config C.json --out DIR [--source NAME]
//   effortwave forces --trace T.json --config C.json --out DIR [--source NAME]
//   effortwave synth  --effort E.csv --config C.json --out DIR
//   effortwave model check [--model M.json]
//
// Exit status: 0 success, 2 validation, 3 I/O, 4 numerical.

#include <cmath>
#include <iostream>
#include <optional>
#include <string>
#include <string_view>

#include <CLI11.hpp>

#include "effortwave/body_model.hpp"
#include "effortwave/error.hpp"
#include "effortwave/pipeline.hpp"

namespace {

using namespace effortwave;

void print_report(const PipelineReport& report) {
    std::cout << "frames:      " << report.frame_count << (report.resampled ? " (resampled)" : "")
              << "\nframe rate:  " << report.frame_rate << " Hz"
              << "\nduration:    " << report.duration << " s"
              << "\nvalid range: [" << report.valid_range.begin << ", " << report.valid_range.end
              << ")\n";
    if (!report.source.empty()) {
        std::cout << "source:      " << report.source << "\npeak force:  " << report.peak_force_n
                  << " N at frame " << report.peak_force_frame << '\n';
    }
    for (const auto& p : report.outputs) std::cout << "wrote " << p.string() << '\n';
}

int model_check(const std::string& path) {
    const BodyModel model = path.empty() ? default_body_model() : load_body_model(path);
    double mass = 0.0;
    for (const auto& s : model.segments()) mass += s.mass_ratio;
    std::cout << "segments: " << model.size() << "\njoints:   " << model.size() - 1
              << " (+ ground contact at " << model.segment(model.root()).name << ")"
              << "\nmass ratio sum: " << mass << "\nrequired landmarks:";
    for (const auto& n : model.required_landmarks()) std::cout << ' ' << n;
    std::cout << "\nok\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pose landmark traces to sense-of-effort vibration"};
    app.require_subcommand(1);
    app.fallthrough();

    bool seed_free = false;
    app.add_flag("--seed-free", seed_free, "Assert a deterministic run (always the case); takes no value")
        ->disable_flag_override();

    std::string trace_path;
    std::string config_path;
    std::string out_dir;
    std::string effort_path;
    std::string model_path;
    std::optional<std::string> source;

    auto add_trace_opts = [&](CLI::App* cmd) {
        cmd->add_option("--trace", trace_path, "Landmark trace JSON")->required();
        cmd->add_option("--config", config_path, "Pipeline config JSON")->required();
        cmd->add_option("--out", out_dir, "Output directory")->required();
        cmd->add_option("--source", source, "Joint name, segment name or 'centroid'");
    };

    auto* run = app.add_subcommand("run", "Full pipeline: forces, effort, WAV, plots");
    add_trace_opts(run);
    auto* forces = app.add_subcommand("forces", "Stop after the joint-force and GRF CSVs");
    add_trace_opts(forces);

    auto* synth = app.add_subcommand("synth", "Effort CSV (t, effort) to WAV");
    synth->add_option("--effort", effort_path, "Effort CSV")->required();
    synth->add_option("--config", config_path, "Pipeline config JSON")->required();
    synth->add_option("--out", out_dir, "Output directory")->required();

    auto* model = app.add_subcommand("model", "Body model utilities");
    model->require_subcommand(1);
    auto* check = model->add_subcommand("check", "Validate a body model file (default model if omitted)");
    check->add_option("--model", model_path, "Body model JSON");

    for (int i = 1; i < argc; ++i) {
        if (std::string_view(argv[i]).starts_with("--seed-free=")) {
            std::cerr << "effortwave: --seed-free is reserved and takes no value\n";
            return 2;
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*run || *forces) {
            RunOptions options;
            options.source = source;
            options.synthesize = run->parsed();
            print_report(run_pipeline(trace_path, config_path, out_dir, options));
        } else if (*synth) {
            print_report(run_synth(effort_path, config_path, out_dir));
        } else if (*check) {
            return model_check(model_path);
        }
    } catch (const Error& e) {
        std::cerr << "effortwave: " << to_string(e.kind()) << ": " << e.what() << '\n';
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "effortwave: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
