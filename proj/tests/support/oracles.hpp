#pragma once

// Independent reference computations for the test suites. Nothing here calls
// into the library's numerical code.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace effortwave::testing {

/// Savitzky-Golay weights from the normal equations of the least-squares
/// polynomial fit on integer offsets, solved by Gauss-Jordan elimination in
/// long double. Row `deriv` of (A^T A)^-1 A^T.
inline std::vector<double> lsq_savgol_weights(int window, int order, int deriv) {
    const int half = window / 2;
    const int m = order + 1;
    using Real = long double;

    // Augmented [A^T A | A^T].
    std::vector<std::vector<Real>> aug(m, std::vector<Real>(m + window, 0.0L));
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            for (int k = -half; k <= half; ++k) aug[i][j] += std::pow(Real(k), i + j);
        }
        for (int k = -half; k <= half; ++k) aug[i][m + k + half] = std::pow(Real(k), i);
    }
    for (int col = 0; col < m; ++col) {
        int pivot = col;
        for (int r = col + 1; r < m; ++r) {
            if (std::abs(aug[r][col]) > std::abs(aug[pivot][col])) pivot = r;
        }
        std::swap(aug[col], aug[pivot]);
        const Real p = aug[col][col];
        if (p == 0.0L) throw std::runtime_error("singular normal equations");
        for (auto& v : aug[col]) v /= p;
        for (int r = 0; r < m; ++r) {
            if (r == col) continue;
            const Real f = aug[r][col];
            for (int c = 0; c < m + window; ++c) aug[r][c] -= f * aug[col][c];
        }
    }
    std::vector<double> w(static_cast<std::size_t>(window));
    for (int k = 0; k < window; ++k) w[static_cast<std::size_t>(k)] = static_cast<double>(aug[deriv][m + k]);
    return w;
}

/// Magnitudes of the discrete Fourier transform bins 0 .. n/2, by direct
/// summation.
inline std::vector<double> dft_magnitudes(std::span<const double> x) {
    const std::size_t n = x.size();
    std::vector<double> mags(n / 2 + 1);
    for (std::size_t k = 0; k < mags.size(); ++k) {
        std::complex<double> acc{0.0, 0.0};
        // Rotating phasor, renormalized each step to avoid drift.
        const std::complex<double> step = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n));
        std::complex<double> ph{1.0, 0.0};
        for (std::size_t i = 0; i < n; ++i) {
            acc += x[i] * ph;
            ph *= step;
            if ((i & 1023u) == 1023u) {
                ph = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(k) *
                                         static_cast<double>(i + 1) / static_cast<double>(n));
            }
        }
        mags[k] = std::abs(acc);
    }
    return mags;
}

inline double relative_error(double got, double want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

}  // namespace effortwave::testing
