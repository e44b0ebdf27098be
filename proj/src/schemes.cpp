#include "fractal_fdm/schemes.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "fractal_fdm/errors.hpp"
#include "fractal_fdm/geometry.hpp"
#include "fractal_fdm/io.hpp"
#include "fractal_fdm/laplacian.hpp"

namespace fractal_fdm {

namespace {

double parse_double(std::string_view text, std::string_view what) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw InvalidArgument("cannot parse " + std::string(what) + " from '" + std::string(text) + "'");
    }
    return value;
}

std::vector<double> read_samples_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open samples file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    std::string text = buffer.str();
    std::replace(text.begin(), text.end(), ',', ' ');
    std::vector<double> values;
    std::istringstream tokens(text);
    std::string token;
    while (tokens >> token) values.push_back(parse_double(token, "sample value"));
    return values;
}

// Runs every step, so it is written as four independent lanes. x * 0 is NaN
// exactly when x is infinite or NaN.
void check_state(std::span<const double> v, double reference, double growth_limit, std::int64_t step) {
    double norm[4] = {0.0, 0.0, 0.0, 0.0};
    double poison[4] = {0.0, 0.0, 0.0, 0.0};
    const std::size_t n = v.size();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        for (std::size_t l = 0; l < 4; ++l) {
            const double a = std::abs(v[i + l]);
            norm[l] = a > norm[l] ? a : norm[l];
            poison[l] += v[i + l] * 0.0;
        }
    }
    for (; i < n; ++i) {
        norm[0] = std::max(norm[0], std::abs(v[i]));
        poison[0] += v[i] * 0.0;
    }
    if (std::isnan(poison[0] + poison[1] + poison[2] + poison[3])) {
        throw Diverged("solution became non-finite at step " + std::to_string(step), step);
    }
    const double total = std::max(std::max(norm[0], norm[1]), std::max(norm[2], norm[3]));
    if (reference > 0.0 && total > growth_limit * reference) {
        throw Diverged("solution max-norm grew past " + format_number(growth_limit) +
                           " times its initial size at step " + std::to_string(step),
                       step);
    }
}

void clamp_boundary(std::span<double> v) noexcept {
    v.front() = 0.0;
    v.back() = 0.0;
}

std::vector<std::int64_t> sorted_snapshot_steps(const SchemeConfig& cfg) {
    std::vector<std::int64_t> steps = cfg.snapshot_steps;
    steps.push_back(0);
    std::sort(steps.begin(), steps.end());
    steps.erase(std::unique(steps.begin(), steps.end()), steps.end());
    return steps;
}

class SnapshotRecorder {
public:
    SnapshotRecorder(const SchemeConfig& cfg, const StepObserver& observer)
        : steps_(sorted_snapshot_steps(cfg)), h_(cfg.h()), observer_(observer) {}

    void record(std::int64_t step, std::span<const double> values) {
        if (next_ < steps_.size() && steps_[next_] == step) {
            out_.push_back({step, static_cast<double>(step) * h_, {values.begin(), values.end()}});
            ++next_;
        }
        if (observer_) observer_(step, values);
    }

    std::vector<SolutionSnapshot> take() { return std::move(out_); }

private:
    std::vector<std::int64_t> steps_;
    std::size_t next_ = 0;
    double h_;
    const StepObserver& observer_;
    std::vector<SolutionSnapshot> out_;
};

TridiagonalMatrix stepping_matrix(int m, double coefficient, double identity_weight) {
    require_level(m);
    if (!(coefficient >= 0.0) || !std::isfinite(coefficient)) {
        throw InvalidArgument("time step must be finite and non-negative");
    }
    const double r = coefficient * pow64(m);
    const std::size_t n = vertex_count(m);
    std::vector<double> diag(n, identity_weight - 2.0 * r);
    diag.front() = identity_weight - r;
    diag.back() = identity_weight - r;
    return {std::vector<double>(n - 1, r), std::move(diag), std::vector<double>(n - 1, r)};
}

// Forward leapfrog from (U(0), U(1)); leaves (prev, cur) = (U(N-1), U(N)).
struct WaveState {
    std::vector<double> prev;
    std::vector<double> cur;
};

WaveState wave_start(const SchemeConfig& cfg) {
    const double h = cfg.h();
    WaveState s;
    s.prev = cfg.initial.evaluate(cfg.m);
    const std::vector<double> velocity = cfg.initial_velocity.evaluate(cfg.m);
    const std::vector<double> lap = multiply(renormalized_laplacian(cfg.m), s.prev);
    s.cur.resize(s.prev.size());
    for (std::size_t i = 0; i < s.cur.size(); ++i) s.cur[i] = s.prev[i] + h * velocity[i] - 0.5 * h * h * lap[i];
    clamp_boundary(s.cur);
    return s;
}

// One leapfrog step: next = A cur - prev, then shift.
void leapfrog(const TridiagonalMatrix& a, WaveState& s, std::vector<double>& scratch) {
    apply_into(a, s.cur, scratch);
    for (std::size_t i = 0; i < scratch.size(); ++i) scratch[i] -= s.prev[i];
    clamp_boundary(scratch);
    std::swap(s.prev, s.cur);
    std::swap(s.cur, scratch);
}

}  // namespace

std::string_view to_string(Scheme s) noexcept { return s == Scheme::heat ? "heat" : "wave"; }

Scheme parse_scheme(std::string_view text) {
    if (text == "heat") return Scheme::heat;
    if (text == "wave") return Scheme::wave;
    throw InvalidArgument("unknown scheme '" + std::string(text) + "' (expected heat or wave)");
}

// ---------------------------------------------------------------------------
// Initial conditions

InitialCondition InitialCondition::zero() { return {}; }

InitialCondition InitialCondition::impulse(std::uint64_t j) {
    InitialCondition ic;
    ic.kind_ = Kind::impulse;
    ic.index_ = j;
    return ic;
}

InitialCondition InitialCondition::harmonic(double a, double b) {
    InitialCondition ic;
    ic.kind_ = Kind::harmonic;
    ic.a_ = a;
    ic.b_ = b;
    return ic;
}

InitialCondition InitialCondition::parameter_sine(double frequency) {
    InitialCondition ic;
    ic.kind_ = Kind::parameter_sine;
    ic.a_ = frequency;
    return ic;
}

InitialCondition InitialCondition::samples(std::vector<double> values, std::string source) {
    InitialCondition ic;
    ic.kind_ = Kind::samples;
    ic.values_ = std::move(values);
    ic.source_ = std::move(source);
    return ic;
}

InitialCondition InitialCondition::parse(std::string_view text) {
    const auto colon = text.find(':');
    const std::string_view head = text.substr(0, colon);
    const std::string_view args = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
    if (head == "zero" && colon == std::string_view::npos) return zero();
    if (head == "impulse" && !args.empty()) {
        std::uint64_t j = 0;
        auto [ptr, ec] = std::from_chars(args.data(), args.data() + args.size(), j);
        if (ec != std::errc{} || ptr != args.data() + args.size()) {
            throw InvalidArgument("impulse index must be a non-negative integer, got '" + std::string(args) + "'");
        }
        return impulse(j);
    }
    if (head == "harmonic") {
        const auto comma = args.find(',');
        if (comma == std::string_view::npos) throw InvalidArgument("harmonic initial data needs 'harmonic:A,B'");
        return harmonic(parse_double(args.substr(0, comma), "harmonic boundary value"),
                        parse_double(args.substr(comma + 1), "harmonic boundary value"));
    }
    if (head == "sine" && !args.empty()) return parameter_sine(parse_double(args, "sine frequency"));
    if (head == "samples" && !args.empty()) {
        std::string path(args);
        return samples(read_samples_file(path), path);
    }
    throw InvalidArgument("unrecognised initial condition '" + std::string(text) +
                          "' (expected zero, impulse:J, harmonic:A,B, sine:F or samples:PATH)");
}

std::vector<double> InitialCondition::evaluate(int m) const {
    require_level(m);
    const std::size_t n = vertex_count(m);
    std::vector<double> v(n, 0.0);
    switch (kind_) {
        case Kind::zero:
            break;
        case Kind::impulse:
            if (index_ >= n) {
                throw InvalidArgument("impulse index " + std::to_string(index_) + " is outside 0.." +
                                      std::to_string(n - 1));
            }
            v[index_] = 1.0;
            break;
        case Kind::harmonic:
            for (std::size_t i = 0; i < n; ++i) v[i] = a_ + (b_ - a_) * std::ldexp(static_cast<double>(i), -3 * m);
            break;
        case Kind::parameter_sine:
            for (std::size_t i = 0; i < n; ++i) {
                v[i] = std::sin(std::numbers::pi * a_ * std::ldexp(static_cast<double>(i), -3 * m));
            }
            break;
        case Kind::samples:
            if (values_.size() != n) {
                throw InvalidArgument("samples hold " + std::to_string(values_.size()) + " values but level " +
                                      std::to_string(m) + " has " + std::to_string(n) + " vertices");
            }
            v = values_;
            break;
    }
    clamp_boundary(v);
    return v;
}

std::string InitialCondition::describe() const {
    switch (kind_) {
        case Kind::zero: return "zero";
        case Kind::impulse: return "impulse:" + std::to_string(index_);
        case Kind::harmonic: return "harmonic:" + format_number(a_) + "," + format_number(b_);
        case Kind::parameter_sine: return "sine:" + format_number(a_);
        case Kind::samples: return "samples:" + source_;
    }
    return "zero";
}

// ---------------------------------------------------------------------------

void SchemeConfig::validate() const {
    require_level(m);
    if (N < 1) throw InvalidArgument("number of steps N must be at least 1");
    if (!(T > 0.0) || !std::isfinite(T)) throw InvalidArgument("horizon T must be positive and finite");
    for (auto k : snapshot_steps) {
        if (k < 0 || k > N) {
            throw InvalidArgument("snapshot step " + std::to_string(k) + " is outside 0.." + std::to_string(N));
        }
    }
    if (!(growth_limit > 0.0)) throw InvalidArgument("growth limit must be positive");
}

TridiagonalMatrix heat_step_matrix(int m, double h) { return stepping_matrix(m, h, 1.0); }

TridiagonalMatrix wave_step_matrix(int m, double h) {
    if (!(h >= 0.0) || !std::isfinite(h)) throw InvalidArgument("time step must be finite and non-negative");
    return stepping_matrix(m, h * h, 2.0);
}

std::vector<SolutionSnapshot> heat_solve(const SchemeConfig& cfg, const StepObserver& observer) {
    cfg.validate();
    const TridiagonalMatrix a = heat_step_matrix(cfg.m, cfg.h());
    std::vector<double> cur = cfg.initial.evaluate(cfg.m);
    std::vector<double> next(cur.size());
    const double reference = max_norm(cur);

    SnapshotRecorder recorder(cfg, observer);
    recorder.record(0, cur);
    for (std::int64_t k = 1; k <= cfg.N; ++k) {
        apply_into(a, cur, next);
        clamp_boundary(next);
        check_state(next, reference, cfg.growth_limit, k);
        std::swap(cur, next);
        recorder.record(k, cur);
    }
    return recorder.take();
}

std::vector<SolutionSnapshot> wave_solve(const SchemeConfig& cfg, const StepObserver& observer) {
    cfg.validate();
    const TridiagonalMatrix a = wave_step_matrix(cfg.m, cfg.h());
    WaveState s = wave_start(cfg);
    const double reference = std::max(max_norm(s.prev), max_norm(s.cur));
    check_state(s.cur, reference, cfg.growth_limit, 1);

    SnapshotRecorder recorder(cfg, observer);
    recorder.record(0, s.prev);
    recorder.record(1, s.cur);
    std::vector<double> scratch(s.cur.size());
    for (std::int64_t k = 2; k <= cfg.N; ++k) {
        leapfrog(a, s, scratch);
        check_state(s.cur, reference, cfg.growth_limit, k);
        recorder.record(k, s.cur);
    }
    return recorder.take();
}

double wave_reversal_error(const SchemeConfig& cfg) {
    cfg.validate();
    const TridiagonalMatrix a = wave_step_matrix(cfg.m, cfg.h());
    WaveState s = wave_start(cfg);
    const std::vector<double> initial = s.prev;
    const double reference = std::max(max_norm(s.prev), max_norm(s.cur));
    std::vector<double> scratch(s.cur.size());
    for (std::int64_t k = 2; k <= cfg.N; ++k) {
        leapfrog(a, s, scratch);
        check_state(s.cur, reference, cfg.growth_limit, k);
    }
    // Same recurrence with the roles of past and future exchanged.
    std::swap(s.prev, s.cur);
    for (std::int64_t k = cfg.N - 1; k >= 1; --k) leapfrog(a, s, scratch);

    double err = 0.0;
    for (std::size_t i = 0; i < initial.size(); ++i) err = std::max(err, std::abs(s.cur[i] - initial[i]));
    return err;
}

StabilityReport stability_check(Scheme scheme, int m, double h) {
    require_level(m);
    if (!(h >= 0.0) || !std::isfinite(h)) throw InvalidArgument("time step must be finite and non-negative");
    StabilityReport report;
    report.scheme = scheme;
    const double coefficient = scheme == Scheme::heat ? h : h * h;
    report.ratio = coefficient * pow64(m);
    report.lambda_max = max_eigenvalue(renormalized_laplacian(m));
    report.spectral_bound = coefficient * report.lambda_max;
    report.threshold = scheme == Scheme::heat ? 2.0 : 4.0;
    report.stable = report.spectral_bound <= report.threshold;
    return report;
}

double max_norm(std::span<const double> v) noexcept {
    double norm = 0.0;
    for (double x : v) norm = std::max(norm, std::abs(x));
    return norm;
}

}  // namespace fractal_fdm
