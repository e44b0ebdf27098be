#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fractal_fdm/tridiagonal.hpp"

namespace fractal_fdm {

enum class Scheme { heat, wave };

std::string_view to_string(Scheme s) noexcept;
Scheme parse_scheme(std::string_view text);

/// Initial data for a run. Evaluated on V_m and projected to zero at both
/// boundary vertices.
class InitialCondition {
public:
    enum class Kind { zero, impulse, harmonic, parameter_sine, samples };

    static InitialCondition zero();
    /// 1 at chain index j, 0 elsewhere.
    static InitialCondition impulse(std::uint64_t j);
    static InitialCondition harmonic(double a, double b);
    /// sin(pi * frequency * param).
    static InitialCondition parameter_sine(double frequency);
    /// Explicit vertex values; `source` is only used in the descriptor.
    static InitialCondition samples(std::vector<double> values, std::string source = "inline");

    /// Parses "zero", "impulse:J", "harmonic:A,B", "sine:F" or "samples:PATH".
    /// A samples file holds 8^m + 1 numbers separated by whitespace or commas.
    static InitialCondition parse(std::string_view text);

    Kind kind() const noexcept { return kind_; }

    /// Vector of length 8^m + 1 with exact zeros at indices 0 and 8^m.
    std::vector<double> evaluate(int m) const;

    /// Round-trippable text form, e.g. "impulse:256".
    std::string describe() const;

private:
    Kind kind_ = Kind::zero;
    std::uint64_t index_ = 0;
    double a_ = 0.0;
    double b_ = 0.0;
    std::vector<double> values_;
    std::string source_;
};

struct SchemeConfig {
    int m = 0;
    double T = 1.0;
    std::int64_t N = 1;
    InitialCondition initial = InitialCondition::zero();
    InitialCondition initial_velocity = InitialCondition::zero();  // wave only
    /// Step indices to record; step 0 is always recorded.
    std::vector<std::int64_t> snapshot_steps;
    /// A run is rejected once its max-norm exceeds growth_limit times the
    /// initial max-norm. Non-finite values are always rejected. Use infinity
    /// to disable the growth test.
    double growth_limit = 1e8;

    double h() const noexcept { return T / static_cast<double>(N); }

    /// Throws InvalidArgument / ResourceLimit for inconsistent settings.
    void validate() const;
};

struct SolutionSnapshot {
    std::int64_t step = 0;
    double time = 0.0;
    std::vector<double> values;
};

/// Called after the initial state (step 0) and after every completed step.
using StepObserver = std::function<void(std::int64_t step, std::span<const double> values)>;

/// I - h * 64^m * L_m: diagonal 1 - h 64^m deg, off-diagonals h 64^m.
TridiagonalMatrix heat_step_matrix(int m, double h);

/// 2I - h^2 * 64^m * L_m.
TridiagonalMatrix wave_step_matrix(int m, double h);

/// Explicit Euler U(k+1) = A U(k) with boundary values reset to zero each step.
std::vector<SolutionSnapshot> heat_solve(const SchemeConfig& cfg, const StepObserver& observer = {});

/// Leapfrog U(k+1) = A U(k) - U(k-1), started with the second-order Taylor step
/// U(1) = U(0) + h V(0) - (h^2 / 2) Lt U(0).
std::vector<SolutionSnapshot> wave_solve(const SchemeConfig& cfg, const StepObserver& observer = {});

/// Runs the wave recurrence N steps forward, then N - 1 steps backward with
/// U(k-1) = A U(k) - U(k+1), and returns the max-norm distance to U(0).
double wave_reversal_error(const SchemeConfig& cfg);

struct StabilityReport {
    Scheme scheme = Scheme::heat;
    double ratio = 0.0;           // h 64^m (heat) or h^2 64^m (wave)
    double lambda_max = 0.0;      // largest eigenvalue of the renormalized Laplacian
    double spectral_bound = 0.0;  // h lambda_max (heat) or h^2 lambda_max (wave)
    double threshold = 0.0;       // 2 (heat) or 4 (wave)
    bool stable = false;
};

StabilityReport stability_check(Scheme scheme, int m, double h);

double max_norm(std::span<const double> v) noexcept;

}  // namespace fractal_fdm
