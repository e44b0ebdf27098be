#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "fractal_fdm/error_analysis.hpp"
#include "fractal_fdm/geometry.hpp"
#include "fractal_fdm/schemes.hpp"
#include "fractal_fdm/tridiagonal.hpp"

namespace fractal_fdm {

/// Shortest decimal text that parses back to exactly the same double.
std::string format_number(double x);

/// Header `index,param,x,y,address`, one row per vertex in chain order.
void write_vertices_csv(std::ostream& out, const GraphApprox& graph);
nlohmann::json vertices_json(const GraphApprox& graph);

/// Largest dimension written as a dense grid; larger matrices use `row,col,value`.
inline constexpr std::size_t kDenseMatrixLimit = 100;
void write_matrix_csv(std::ostream& out, const TridiagonalMatrix& mat);

/// Header `step,time,index,param,x,y,u`, one row per vertex per snapshot.
void write_snapshots_csv(std::ostream& out, const GraphApprox& graph, std::span<const SolutionSnapshot> snapshots);

nlohmann::json stability_json(const StabilityReport& report);

/// Run metadata plus snapshots, each snapshot as {step, time, u: [...]}.
nlohmann::json snapshots_json(const SchemeConfig& cfg, Scheme scheme, const StabilityReport& stability,
                              std::span<const SolutionSnapshot> snapshots);

nlohmann::json dirichlet_json(const DirichletReport& report);

/// Header `m,q,a,b,E_m,residual`, one row per report.
void write_dirichlet_csv(std::ostream& out, std::span<const DirichletReport> reports);

}  // namespace fractal_fdm
