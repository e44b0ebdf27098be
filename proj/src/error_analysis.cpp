#include "fractal_fdm/error_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <utility>

#include "fractal_fdm/errors.hpp"
#include "fractal_fdm/geometry.hpp"
#include "fractal_fdm/laplacian.hpp"

namespace fractal_fdm {

namespace {

double geometric_bound(HolderParams p, int m, double step_factor) {
    if (!(p.alpha > 0.0) || !std::isfinite(p.alpha)) {
        throw InvalidArgument("Hölder exponent must be positive; the geometric series diverges at alpha = 0");
    }
    if (!(p.c > 0.0) || !std::isfinite(p.c)) throw InvalidArgument("Hölder constant must be positive");
    if (m < 0) throw InvalidArgument("graph level must be non-negative");
    return pow64(m) * step_factor * p.c / (1.0 - std::pow(4.0, -p.alpha));
}

void require_step(double h) {
    if (!(h > 0.0) || !std::isfinite(h)) throw InvalidArgument("time step h must be positive and finite");
}

// Neumaier sum of rhs - sum(coef * u) with each product split exactly by fma,
// so the residual is accurate even when the products are ~64^m times larger.
double compensated_row(double rhs, std::initializer_list<std::pair<double, double>> terms) {
    double sum = rhs;
    double carry = 0.0;
    auto add = [&](double x) {
        const double t = sum + x;
        carry += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
        sum = t;
    };
    for (const auto& [coef, value] : terms) {
        const double prod = coef * value;
        add(-prod);
        add(-std::fma(coef, value, -prod));
    }
    return sum + carry;
}

// r = F - A u, accurate to about one rounding of r itself.
std::vector<double> residual_compensated(const LinearSystem& sys, const std::vector<double>& u) {
    const std::size_t n = u.size();
    auto d = sys.matrix.diag();
    auto lo = sys.matrix.sub();
    auto up = sys.matrix.sup();
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double left = i > 0 ? lo[i - 1] : 0.0;
        const double right = i + 1 < n ? up[i] : 0.0;
        r[i] = compensated_row(sys.rhs[i], {{d[i], u[i]},
                                            {left, i > 0 ? u[i - 1] : 0.0},
                                            {right, i + 1 < n ? u[i + 1] : 0.0}});
    }
    return r;
}

}  // namespace

double heat_holder_bound(HolderParams p, int m, double h) {
    require_step(h);
    return geometric_bound(p, m, h);
}

double wave_holder_bound(HolderParams p, int m, double h) {
    require_step(h);
    return geometric_bound(p, m, h * h);
}

LinearSystem dirichlet_system(const DirichletProblem& p) {
    require_level(p.m);
    if (!(p.q > 0.0) || !std::isfinite(p.q)) throw InvalidArgument("reaction coefficient q must be positive");
    TridiagonalMatrix lap = renormalized_laplacian(p.m);
    std::vector<double> sub(lap.sub().begin(), lap.sub().end());
    std::vector<double> diag(lap.diag().begin(), lap.diag().end());
    std::vector<double> sup(lap.sup().begin(), lap.sup().end());
    for (double& x : diag) x += p.q;
    diag.front() = 1.0;
    sup.front() = 0.0;
    diag.back() = 1.0;
    sub.back() = 0.0;

    std::vector<double> rhs = sample_harmonic(p.boundary, p.m);
    for (double& x : rhs) x *= p.q;
    rhs.front() = p.boundary.a;
    rhs.back() = p.boundary.b;
    return {TridiagonalMatrix(std::move(sub), std::move(diag), std::move(sup)), std::move(rhs)};
}

std::vector<double> solve_dirichlet(const DirichletProblem& p, int refinement_sweeps) {
    const LinearSystem sys = dirichlet_system(p);
    std::vector<double> u = solve(sys.matrix, sys.rhs);
    for (int sweep = 0; sweep < refinement_sweeps; ++sweep) {
        const std::vector<double> r = residual_compensated(sys, u);
        if (std::all_of(r.begin(), r.end(), [](double x) { return x == 0.0; })) break;
        const std::vector<double> correction = solve(sys.matrix, r);
        for (std::size_t i = 0; i < u.size(); ++i) u[i] += correction[i];
    }
    for (double x : u) {
        if (!std::isfinite(x)) throw NumericalError("Dirichlet solve produced non-finite values");
    }
    return u;
}

double dirichlet_residual(const DirichletProblem& p, const std::vector<double>& u) {
    const LinearSystem sys = dirichlet_system(p);
    if (u.size() != sys.rhs.size()) throw InvalidArgument("solution length does not match the level");
    double r = 0.0;
    for (double x : residual_compensated(sys, u)) r = std::max(r, std::abs(x));
    return r;
}

double dirichlet_error(const DirichletProblem& p, int refinement_sweeps) {
    return dirichlet_report(p, refinement_sweeps).error;
}

DirichletReport dirichlet_report(const DirichletProblem& p, int refinement_sweeps) {
    const std::vector<double> u = solve_dirichlet(p, refinement_sweeps);
    const std::vector<double> exact = sample_harmonic(p.boundary, p.m);
    DirichletReport report{p.m, p.q, p.boundary, 0.0, dirichlet_residual(p, u)};
    for (std::size_t i = 0; i < u.size(); ++i) report.error = std::max(report.error, std::abs(u[i] - exact[i]));
    return report;
}

}  // namespace fractal_fdm
