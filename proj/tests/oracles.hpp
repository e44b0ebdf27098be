#pragma once

// Test-only reference computations. Nothing here calls into the library's
// solver paths; dense Eigen algebra and hand arithmetic only.

#include <Eigen/Dense>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "fractal_fdm/geometry.hpp"

namespace oracle {

/// Dense path-graph Laplacian with diagonal (1, 2, ..., 2, 1), built entry by entry.
inline Eigen::MatrixXd dense_path_laplacian(std::size_t n) {
    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t e = 0; e + 1 < n; ++e) {
        const auto i = static_cast<Eigen::Index>(e);
        lap(i, i) += 1.0;
        lap(i + 1, i + 1) += 1.0;
        lap(i, i + 1) -= 1.0;
        lap(i + 1, i) -= 1.0;
    }
    return lap;
}

/// Closed-form spectrum of the n-vertex path Laplacian: 2 - 2 cos(pi k / n).
inline double path_eigenvalue(std::size_t n, std::size_t k) {
    return 2.0 - 2.0 * std::cos(std::numbers::pi * static_cast<double>(k) / static_cast<double>(n));
}

inline Eigen::VectorXd to_eigen(const std::vector<double>& v) {
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

/// f_i evaluated from its rotation angle and translation with cos/sin,
/// independent of the quarter-turn shortcut used by the library.
inline fractal_fdm::Point2 trig_map(int i, fractal_fdm::Point2 p) {
    constexpr double pi = std::numbers::pi;
    struct Spec { double theta, tx, ty; };
    static const Spec specs[8] = {
        {0.0, 0, 0},          {pi / 2, 1, 0},  {0.0, 1, 1},   {3 * pi / 2, 2, 1},
        {3 * pi / 2, 2, 0},   {0.0, 2, -1},    {pi / 2, 3, -1}, {0.0, 3, 0},
    };
    const Spec& s = specs[i - 1];
    const double c = std::cos(s.theta);
    const double sn = std::sin(s.theta);
    return {0.25 * (c * p.x - sn * p.y + s.tx), 0.25 * (sn * p.x + c * p.y + s.ty)};
}

}  // namespace oracle
