#pragma once

#include <vector>

#include "fractal_fdm/harmonic.hpp"
#include "fractal_fdm/tridiagonal.hpp"

namespace fractal_fdm {

/// Hölder exponent and (time-constant) Hölder constant of the exact solution.
struct HolderParams {
    double alpha = 1.0;
    double c = 1.0;
};

/// One-step bound of the explicit heat scheme: 64^m h c / (1 - 4^-alpha).
double heat_holder_bound(HolderParams p, int m, double h);

/// Second-difference bound of the leapfrog wave scheme: 64^m h^2 c / (1 - 4^-alpha).
double wave_holder_bound(HolderParams p, int m, double h);

/// -Lt u + q u = f on V_m, with exact solution harmonic for the given boundary data.
struct DirichletProblem {
    int m = 1;
    double q = 2.0;
    BoundaryData boundary{};
};

/// Pinned linear system A u = F: interior rows of 64^m L_m + q I, identity rows
/// at both boundary vertices carrying the boundary values.
struct LinearSystem {
    TridiagonalMatrix matrix;
    std::vector<double> rhs;
};

LinearSystem dirichlet_system(const DirichletProblem& p);

inline constexpr int kDefaultRefinementSweeps = 2;

/// Direct tridiagonal solve of dirichlet_system(p), followed by up to
/// `refinement_sweeps` rounds of iterative refinement with fma-compensated residuals.
std::vector<double> solve_dirichlet(const DirichletProblem& p, int refinement_sweeps = kDefaultRefinementSweeps);

/// max |A u - F| for the pinned system, evaluated with compensated arithmetic.
double dirichlet_residual(const DirichletProblem& p, const std::vector<double>& u);

/// E_m = max-norm distance between the discrete solution and the harmonic sample.
double dirichlet_error(const DirichletProblem& p, int refinement_sweeps = kDefaultRefinementSweeps);

struct DirichletReport {
    int m = 0;
    double q = 0.0;
    BoundaryData boundary{};
    double error = 0.0;
    double residual = 0.0;
};

DirichletReport dirichlet_report(const DirichletProblem& p, int refinement_sweeps = kDefaultRefinementSweeps);

}  // namespace fractal_fdm
