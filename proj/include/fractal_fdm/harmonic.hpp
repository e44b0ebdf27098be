#pragma once

#include <vector>

#include "fractal_fdm/geometry.hpp"

namespace fractal_fdm {

/// Values of a harmonic function at the two boundary points P_0 and P_1.
struct BoundaryData {
    double a = 0.0;
    double b = 0.0;
};

enum class Corner { P0, P1 };

/// Base-8 arc-length parameter of f_w(corner): sum (w_i - 1) 8^-i, plus 8^-m for P_1.
double word_parameter(const Word& w, Corner corner);

/// Harmonic extension of the boundary data evaluated at f_w(corner).
/// On the uniform chain the extension is linear in the arc-length parameter.
double harmonic_at(BoundaryData bd, const Word& w, Corner corner);

/// Harmonic extension sampled on V_m: h_i = a + (b - a) i / 8^m.
std::vector<double> sample_harmonic(BoundaryData bd, int m);

}  // namespace fractal_fdm
