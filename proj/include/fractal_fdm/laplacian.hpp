#pragma once

#include "fractal_fdm/tridiagonal.hpp"

namespace fractal_fdm {

/// Graph Laplacian of the level-m chain in positive-semidefinite orientation:
/// diagonal (1, 2, ..., 2, 1), off-diagonals -1. The interior graph Laplacian
/// sum_{Y~X} (u(Y) - u(X)) is the negative of this operator's action.
TridiagonalMatrix laplacian_matrix(int m);

/// 64^m * laplacian_matrix(m).
TridiagonalMatrix renormalized_laplacian(int m);

}  // namespace fractal_fdm
