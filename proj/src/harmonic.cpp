#include "fractal_fdm/harmonic.hpp"

#include <cmath>

namespace fractal_fdm {

double word_parameter(const Word& w, Corner corner) {
    // Horner from the last letter; exact for words of up to 17 letters.
    double theta = 0.0;
    auto letters = w.letters();
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) theta = (theta + (*it - 1)) / 8.0;
    if (corner == Corner::P1) theta += std::ldexp(1.0, -3 * static_cast<int>(w.size()));
    return theta;
}

double harmonic_at(BoundaryData bd, const Word& w, Corner corner) {
    return bd.a + (bd.b - bd.a) * word_parameter(w, corner);
}

std::vector<double> sample_harmonic(BoundaryData bd, int m) {
    require_level(m);
    const std::size_t n = vertex_count(m);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = bd.a + (bd.b - bd.a) * std::ldexp(static_cast<double>(i), -3 * m);
    }
    return out;
}

}  // namespace fractal_fdm
