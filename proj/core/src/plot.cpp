#include "effortwave/plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "effortwave/error.hpp"
#include "io_util.hpp"

namespace effortwave {

namespace {

constexpr double kWidth = 960.0;
constexpr double kHeight = 400.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 180.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

constexpr std::array<const char*, 10> kPalette = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                                  "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                                                  "#bcbd22", "#17becf"};

std::string fixed(double v, int digits = 2) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    return buf;
}

std::string label_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

struct Extent {
    double lo{std::numeric_limits<double>::infinity()};
    double hi{-std::numeric_limits<double>::infinity()};

    void add(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void finish() {
        if (!std::isfinite(lo)) lo = 0.0, hi = 1.0;
        if (hi - lo <= 1e-12 * std::max(1.0, std::abs(hi))) {
            const double pad = std::max(0.5, 0.05 * std::abs(hi));
            lo -= pad;
            hi += pad;
        }
    }
};

}  // namespace

void write_line_plot_svg(const std::filesystem::path& path, const std::string& title,
                         const std::string& x_label, const std::string& y_label,
                         std::span<const PlotSeries> series) {
    Extent xs;
    Extent ys;
    for (const auto& s : series) {
        for (double v : s.x) xs.add(v);
        for (double v : s.y) ys.add(v);
    }
    xs.finish();
    ys.finish();

    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (x - xs.lo) / (xs.hi - xs.lo) * plot_w; };
    auto py = [&](double y) { return kTop + (1.0 - (y - ys.lo) / (ys.hi - ys.lo)) * plot_h; };

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(kWidth, 0) + "\" height=\"" +
           fixed(kHeight, 0) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<text x=\"" + fixed(kWidth / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" +
           escape(title) + "</text>\n";
    svg += "<rect x=\"" + fixed(kLeft) + "\" y=\"" + fixed(kTop) + "\" width=\"" + fixed(plot_w) +
           "\" height=\"" + fixed(plot_h) + "\" fill=\"none\" stroke=\"black\"/>\n";

    // Axis extents.
    svg += "<text x=\"" + fixed(kLeft - 6) + "\" y=\"" + fixed(kTop + 4) + "\" text-anchor=\"end\">" +
           label_number(ys.hi) + "</text>\n";
    svg += "<text x=\"" + fixed(kLeft - 6) + "\" y=\"" + fixed(kTop + plot_h) +
           "\" text-anchor=\"end\">" + label_number(ys.lo) + "</text>\n";
    svg += "<text x=\"" + fixed(kLeft) + "\" y=\"" + fixed(kTop + plot_h + 16) +
           "\" text-anchor=\"middle\">" + label_number(xs.lo) + "</text>\n";
    svg += "<text x=\"" + fixed(kLeft + plot_w) + "\" y=\"" + fixed(kTop + plot_h + 16) +
           "\" text-anchor=\"middle\">" + label_number(xs.hi) + "</text>\n";
    svg += "<text x=\"" + fixed(kLeft + plot_w / 2) + "\" y=\"" + fixed(kHeight - 12) +
           "\" text-anchor=\"middle\">" + escape(x_label) + "</text>\n";
    svg += "<text transform=\"translate(20," + fixed(kTop + plot_h / 2) +
           ") rotate(-90)\" text-anchor=\"middle\">" + escape(y_label) + "</text>\n";

    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& s = series[k];
        const char* color = kPalette[k % kPalette.size()];
        svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
               "\" stroke-width=\"1.5\" points=\"";
        const std::size_t n = std::min(s.x.size(), s.y.size());
        for (std::size_t i = 0; i < n; ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            svg += fixed(px(s.x[i])) + "," + fixed(py(s.y[i])) + " ";
        }
        svg += "\"/>\n";
        if (series.size() > 1 || !s.label.empty()) {
            const double ly = kTop + 14.0 * static_cast<double>(k);
            svg += "<line x1=\"" + fixed(kWidth - kRight + 10) + "\" y1=\"" + fixed(ly) + "\" x2=\"" +
                   fixed(kWidth - kRight + 30) + "\" y2=\"" + fixed(ly) + "\" stroke=\"" + color +
                   "\" stroke-width=\"2\"/>\n";
            svg += "<text x=\"" + fixed(kWidth - kRight + 34) + "\" y=\"" + fixed(ly + 4) + "\">" +
                   escape(s.label) + "</text>\n";
        }
    }
    svg += "</svg>\n";
    detail::write_text_file(path, svg);
}

PlotSet emit_plots(const JointForceTrace& forces, const EffortSignal& effort,
                   std::span<const double> envelope, const std::filesystem::path& dir) {
    if (forces.times.empty()) {
        throw Error(ErrorKind::Validation,
                    "no plots: the valid frame range is empty; the clip must have at least as "
                    "many frames as the Savitzky-Golay window");
    }
    if (effort.values.size() != forces.times.size() || envelope.size() != forces.times.size()) {
        throw Error(ErrorKind::Validation, "plot inputs are not aligned with the force time base");
    }

    PlotSet set;
    for (std::size_t j = 0; j < forces.forces.size(); ++j) {
        PlotSeries s{forces.joint_names[j], forces.times, {}};
        s.y.reserve(forces.times.size());
        for (const auto& f : forces.forces[j]) s.y.push_back(f.norm());
        set.force_magnitudes.push_back(std::move(s));
    }
    set.effort = {effort.source.empty() ? "effort" : effort.source, forces.times, effort.values};
    set.envelope = {"envelope", forces.times, {envelope.begin(), envelope.end()}};

    const auto force_path = dir / "force_magnitude.svg";
    const auto effort_path = dir / "effort.svg";
    const auto envelope_path = dir / "envelope.svg";
    write_line_plot_svg(force_path, "Joint force magnitude", "time [s]", "|f| [N]",
                        set.force_magnitudes);
    write_line_plot_svg(effort_path, "Sense of effort", "time [s]", "effort",
                        std::span<const PlotSeries>(&set.effort, 1));
    write_line_plot_svg(envelope_path, "Vibration envelope", "time [s]", "amplitude",
                        std::span<const PlotSeries>(&set.envelope, 1));
    set.files = {force_path, effort_path, envelope_path};
    return set;
}

}  // namespace effortwave
