#pragma once

#include <span>
#include <vector>

#include "effortwave/types.hpp"

namespace effortwave {

struct SavGolSpec {
    int window{9};  // odd, frame count
    int poly_order{3};
    int derivative_order{2};

    /// Throws Error{Validation} unless window is odd and >= 3, 2 <= poly_order < window
    /// and derivative_order is in [0, min(2, poly_order)].
    void validate() const;

    [[nodiscard]] std::size_t half_width() const noexcept {
        return static_cast<std::size_t>(window / 2);
    }
};

/// Convolution weights for the window centred on the output sample, ordered
/// from offset -half_width to +half_width.
///
/// Applied to uniformly spaced samples of a polynomial of degree <= poly_order,
/// the weighted sum times derivative_order! / h^derivative_order is the exact
/// derivative at the centre. For derivative_order 0 the weights sum to 1.
[[nodiscard]] std::vector<double> savgol_coefficients(const SavGolSpec& spec);

/// Frames of a series of length n for which the full window fits.
[[nodiscard]] FrameRange savgol_valid_range(std::size_t n, const SavGolSpec& spec) noexcept;

/// Filters each component of `series` and scales by the derivative factor.
/// The output holds only the valid range: element j corresponds to input
/// frame j + half_width. Throws Error{Validation} when the series is shorter
/// than the window or dt <= 0.
[[nodiscard]] Vec3Series smooth_differentiate(std::span<const Vec3> series, double dt,
                                              const SavGolSpec& spec);

/// Scalar overload with the same conventions.
[[nodiscard]] std::vector<double> smooth_differentiate(std::span<const double> series, double dt,
                                                       const SavGolSpec& spec);

}  // namespace effortwave
