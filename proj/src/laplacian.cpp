#include "fractal_fdm/laplacian.hpp"

#include "fractal_fdm/geometry.hpp"

namespace fractal_fdm {

TridiagonalMatrix laplacian_matrix(int m) {
    require_level(m);
    const std::size_t n = vertex_count(m);
    std::vector<double> diag(n, 2.0);
    diag.front() = 1.0;
    diag.back() = 1.0;
    return {std::vector<double>(n - 1, -1.0), std::move(diag), std::vector<double>(n - 1, -1.0)};
}

TridiagonalMatrix renormalized_laplacian(int m) {
    return pow64(m) * laplacian_matrix(m);
}

}  // namespace fractal_fdm
