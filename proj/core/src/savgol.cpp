#include "effortwave/savgol.hpp"

#include <cmath>
#include <string>

#include <Eigen/QR>

#include "effortwave/error.hpp"

namespace effortwave {

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

template <typename T>
void require_length(std::span<const T> series, double dt, const SavGolSpec& spec) {
    spec.validate();
    if (series.size() < static_cast<std::size_t>(spec.window)) {
        throw Error(ErrorKind::Validation,
                    "series of " + std::to_string(series.size()) +
                        " frames is shorter than the Savitzky-Golay window of " +
                        std::to_string(spec.window));
    }
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw Error(ErrorKind::Validation, "sample interval must be positive");
    }
}

}  // namespace

void SavGolSpec::validate() const {
    auto fail = [](const std::string& what) {
        throw Error(ErrorKind::Validation, "savgol: " + what);
    };
    if (window < 3 || window % 2 == 0) fail("window must be odd and >= 3");
    if (poly_order < 2) fail("poly_order must be >= 2");
    if (poly_order >= window) fail("poly_order must be < window");
    if (derivative_order < 0 || derivative_order > 2) fail("derivative_order must be 0, 1 or 2");
    if (derivative_order > poly_order) fail("derivative_order must be <= poly_order");
}

std::vector<double> savgol_coefficients(const SavGolSpec& spec) {
    spec.validate();
    const int half = spec.window / 2;
    const int terms = spec.poly_order + 1;

    // Least-squares fit on the abscissa scaled to [-1, 1] keeps the Vandermonde
    // matrix well conditioned for wide windows; the scale is undone below.
    Eigen::MatrixXd vander(spec.window, terms);
    for (int r = 0; r < spec.window; ++r) {
        const double u = static_cast<double>(r - half) / half;
        double p = 1.0;
        for (int c = 0; c < terms; ++c) {
            vander(r, c) = p;
            p *= u;
        }
    }
    const Eigen::MatrixXd pinv = vander.colPivHouseholderQr().solve(
        Eigen::MatrixXd::Identity(spec.window, spec.window));

    const double unscale = std::pow(static_cast<double>(half), -spec.derivative_order);
    std::vector<double> weights(static_cast<std::size_t>(spec.window));
    for (int k = 0; k < spec.window; ++k) {
        weights[static_cast<std::size_t>(k)] = pinv(spec.derivative_order, k) * unscale;
    }
    return weights;
}

FrameRange savgol_valid_range(std::size_t n, const SavGolSpec& spec) noexcept {
    const std::size_t half = spec.half_width();
    if (n < 2 * half + 1) return {half, half};
    return {half, n - half};
}

Vec3Series smooth_differentiate(std::span<const Vec3> series, double dt, const SavGolSpec& spec) {
    require_length(series, dt, spec);
    const auto weights = savgol_coefficients(spec);
    const double scale = factorial(spec.derivative_order) / std::pow(dt, spec.derivative_order);
    const FrameRange range = savgol_valid_range(series.size(), spec);
    const std::size_t half = spec.half_width();

    Vec3Series out;
    out.reserve(range.size());
    for (std::size_t i = range.begin; i < range.end; ++i) {
        Vec3 acc = Vec3::Zero();
        for (std::size_t k = 0; k < weights.size(); ++k) {
            acc += weights[k] * series[i - half + k];
        }
        out.push_back(acc * scale);
    }
    return out;
}

std::vector<double> smooth_differentiate(std::span<const double> series, double dt,
                                         const SavGolSpec& spec) {
    require_length(series, dt, spec);
    const auto weights = savgol_coefficients(spec);
    const double scale = factorial(spec.derivative_order) / std::pow(dt, spec.derivative_order);
    const FrameRange range = savgol_valid_range(series.size(), spec);
    const std::size_t half = spec.half_width();

    std::vector<double> out;
    out.reserve(range.size());
    for (std::size_t i = range.begin; i < range.end; ++i) {
        double acc = 0.0;
        for (std::size_t k = 0; k < weights.size(); ++k) {
            acc += weights[k] * series[i - half + k];
        }
        out.push_back(acc * scale);
    }
    return out;
}

}  // namespace effortwave
