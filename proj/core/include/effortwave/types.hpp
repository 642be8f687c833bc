#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Core>

namespace effortwave {

using Vec3 = Eigen::Vector3d;
using Vec3Series = std::vector<Vec3>;

/// Half-open range of frame indices [begin, end).
struct FrameRange {
    std::size_t begin{0};
    std::size_t end{0};

    [[nodiscard]] std::size_t size() const noexcept { return end > begin ? end - begin : 0; }
    [[nodiscard]] bool empty() const noexcept { return size() == 0; }
    [[nodiscard]] bool contains(std::size_t i) const noexcept { return i >= begin && i < end; }

    friend bool operator==(const FrameRange&, const FrameRange&) = default;
};

}  // namespace effortwave
