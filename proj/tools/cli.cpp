#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>

#include "fractal_fdm/error_analysis.hpp"
#include "fractal_fdm/errors.hpp"
#include "fractal_fdm/geometry.hpp"
#include "fractal_fdm/io.hpp"
#include "fractal_fdm/laplacian.hpp"
#include "fractal_fdm/schemes.hpp"

namespace fractal_fdm::cli {

namespace {

using nlohmann::json;

constexpr const char* kToolName = "fractal-fdm";
constexpr const char* kToolVersion = "0.1.0";

/// Canonical flag list of one invocation; replaying it reproduces the run.
class Manifest {
public:
    explicit Manifest(std::string subcommand) : subcommand_(std::move(subcommand)) {}

    void param(const std::string& name, const std::string& value) {
        params_[name] = value;
        argv_.push_back("--" + name);
        argv_.push_back(value);
    }
    void param(const std::string& name, double value) { param(name, format_number(value)); }
    void param(const std::string& name, std::int64_t value) { param(name, std::to_string(value)); }
    void param(const std::string& name, int value) { param(name, std::to_string(value)); }
    void flag(const std::string& name) {
        params_[name] = true;
        argv_.push_back("--" + name);
    }
    void output(const std::string& path, const std::string& format) {
        output_path_ = path;
        format_ = format;
        if (!path.empty()) param("out", path);
        param("format", format);
    }
    json& summary() { return summary_; }

    json to_json() const {
        std::vector<std::string> argv{subcommand_};
        argv.insert(argv.end(), argv_.begin(), argv_.end());
        json j = {{"tool", kToolName},
                  {"version", kToolVersion},
                  {"subcommand", subcommand_},
                  {"parameters", params_},
                  {"argv", argv},
                  {"output_path", output_path_.empty() ? json(nullptr) : json(output_path_)},
                  {"format", format_}};
        if (!summary_.empty()) j["summary"] = summary_;
        return j;
    }

private:
    std::string subcommand_;
    json params_ = json::object();
    std::vector<std::string> argv_;
    std::string output_path_;
    std::string format_;
    json summary_ = json::object();
};

struct Streams {
    std::ostream& out;
    std::ostream& err;
};

/// Writes the data to `path` (or `streams.out`) followed by the manifest echo.
void emit(const Streams& streams, const Manifest& manifest, const std::string& path,
          const std::function<void(std::ostream&)>& write) {
    if (path.empty()) {
        write(streams.out);
        streams.err << "manifest: " << manifest.to_json().dump() << '\n';
        return;
    }
    {
        std::ofstream file(path, std::ios::binary);
        if (!file) throw Error("cannot open output file '" + path + "'");
        write(file);
        if (!file) throw Error("failed writing '" + path + "'");
    }
    const std::string manifest_path = path + ".manifest.json";
    std::ofstream mf(manifest_path, std::ios::binary);
    if (!mf) throw Error("cannot open manifest file '" + manifest_path + "'");
    mf << manifest.to_json().dump(2) << '\n';
    streams.out << "wrote " << path << " and " << manifest_path << '\n';
}

std::ostream& info(const Streams& streams, const std::string& out_path) {
    return out_path.empty() ? streams.err : streams.out;
}

void add_output_options(CLI::App* cmd, std::string& format, std::string& out) {
    cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    cmd->add_option("--out", out, "Output file (default: standard output)");
}

std::string join_steps(const std::vector<std::int64_t>& steps) {
    std::string s;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        if (i > 0) s += ',';
        s += std::to_string(steps[i]);
    }
    return s;
}

std::pair<int, int> parse_level_range(const std::string& text) {
    auto to_int = [&](const std::string& part) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(part, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != part.size() || part.empty()) throw InvalidArgument("cannot parse level '" + text + "'");
        return v;
    };
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
        const int m = to_int(text);
        return {m, m};
    }
    const int lo = to_int(text.substr(0, dots));
    const int hi = to_int(text.substr(dots + 2));
    if (lo > hi) throw InvalidArgument("empty level range '" + text + "'");
    return {lo, hi};
}

// ---------------------------------------------------------------------------

struct CurveOptions {
    int m = 1;
    std::string format = "csv";
    std::string out;
};

int cmd_curve(const CurveOptions& o, const Streams& s) {
    const GraphApprox graph = build_graph(o.m);
    Manifest manifest("curve");
    manifest.param("m", o.m);
    manifest.output(o.out, o.format);
    manifest.summary()["vertices"] = graph.size();
    emit(s, manifest, o.out, [&](std::ostream& os) {
        if (o.format == "json") {
            os << vertices_json(graph).dump(2) << '\n';
        } else {
            write_vertices_csv(os, graph);
        }
    });
    return kOk;
}

struct LaplacianOptions {
    int m = 1;
    bool renormalized = false;
    std::string format = "csv";
    std::string out;
};

int cmd_laplacian(const LaplacianOptions& o, const Streams& s) {
    const TridiagonalMatrix mat = o.renormalized ? renormalized_laplacian(o.m) : laplacian_matrix(o.m);
    Manifest manifest("laplacian");
    manifest.param("m", o.m);
    if (o.renormalized) manifest.flag("renormalized");
    manifest.output(o.out, o.format);
    emit(s, manifest, o.out, [&](std::ostream& os) {
        if (o.format == "json") {
            const json j = {{"n", mat.size()},
                            {"renormalized", o.renormalized},
                            {"sub", std::vector<double>(mat.sub().begin(), mat.sub().end())},
                            {"diag", std::vector<double>(mat.diag().begin(), mat.diag().end())},
                            {"sup", std::vector<double>(mat.sup().begin(), mat.sup().end())}};
            os << j.dump(2) << '\n';
        } else {
            write_matrix_csv(os, mat);
        }
    });
    return kOk;
}

struct SolveOptions {
    int m = 1;
    double T = 10.0;
    std::int64_t N = 10;
    std::string initial;  // empty: impulse at the chain midpoint
    std::string velocity = "zero";
    std::vector<std::int64_t> snapshots;
    double growth_limit = 1e8;
    bool check_reverse = false;
    std::string format = "csv";
    std::string out;
};

int cmd_solve(Scheme scheme, const SolveOptions& o, const Streams& s) {
    require_level(o.m);
    SchemeConfig cfg;
    cfg.m = o.m;
    cfg.T = o.T;
    cfg.N = o.N;
    const std::string initial =
        o.initial.empty() ? "impulse:" + std::to_string(pow8(o.m) / 2) : o.initial;
    cfg.initial = InitialCondition::parse(initial);
    if (scheme == Scheme::wave) cfg.initial_velocity = InitialCondition::parse(o.velocity);
    cfg.growth_limit = o.growth_limit;

    std::vector<std::int64_t> dropped;
    for (auto k : o.snapshots) {
        if (k < 0) throw InvalidArgument("snapshot steps must be non-negative");
        if (k > o.N) {
            dropped.push_back(k);
        } else {
            cfg.snapshot_steps.push_back(k);
        }
    }
    if (o.snapshots.empty()) cfg.snapshot_steps = {0, o.N};
    if (!dropped.empty()) {
        s.err << "warning: snapshot steps beyond N = " << o.N << " ignored: " << join_steps(dropped) << '\n';
    }
    cfg.validate();

    Manifest manifest(std::string(to_string(scheme)));
    manifest.param("m", o.m);
    manifest.param("T", o.T);
    manifest.param("N", o.N);
    manifest.param("initial", cfg.initial.describe());
    if (scheme == Scheme::wave) manifest.param("velocity", cfg.initial_velocity.describe());
    manifest.param("snapshots", join_steps(o.snapshots.empty() ? cfg.snapshot_steps : o.snapshots));
    manifest.param("growth-limit", o.growth_limit);
    if (o.check_reverse && scheme == Scheme::wave) manifest.flag("check-reverse");
    manifest.output(o.out, o.format);

    const StabilityReport stability = stability_check(scheme, o.m, cfg.h());
    manifest.summary()["stability"] = stability_json(stability);
    if (!stability.stable) {
        s.err << "warning: " << to_string(scheme) << " scheme is unstable: spectral bound "
              << format_number(stability.spectral_bound) << " exceeds " << format_number(stability.threshold)
              << " (ratio " << format_number(stability.ratio) << ")\n";
    }

    const auto snapshots = scheme == Scheme::heat ? heat_solve(cfg) : wave_solve(cfg);

    if (o.check_reverse && scheme == Scheme::wave) {
        const double rev = wave_reversal_error(cfg);
        manifest.summary()["reversal_error"] = rev;
        info(s, o.out) << "reversal max-norm error: " << format_number(rev) << '\n';
    }

    const GraphApprox graph = build_graph(o.m);
    emit(s, manifest, o.out, [&](std::ostream& os) {
        if (o.format == "json") {
            os << snapshots_json(cfg, scheme, stability, snapshots).dump(2) << '\n';
        } else {
            write_snapshots_csv(os, graph, snapshots);
        }
    });
    return kOk;
}

struct DirichletOptions {
    std::string levels = "1";
    double q = 2.0;
    double a = 0.0;
    double b = 1.0;
    std::string format = "csv";
    std::string out;
};

int cmd_dirichlet(const DirichletOptions& o, const Streams& s) {
    const auto [lo, hi] = parse_level_range(o.levels);
    std::vector<DirichletReport> reports;
    for (int m = lo; m <= hi; ++m) reports.push_back(dirichlet_report({m, o.q, {o.a, o.b}}));

    Manifest manifest("dirichlet-error");
    manifest.param("m", o.levels);
    manifest.param("q", o.q);
    manifest.param("a", o.a);
    manifest.param("b", o.b);
    manifest.output(o.out, o.format);
    double worst = 0.0;
    for (const auto& r : reports) worst = std::max(worst, r.error);
    manifest.summary()["max_E_m"] = worst;

    emit(s, manifest, o.out, [&](std::ostream& os) {
        if (o.format == "json") {
            if (reports.size() == 1) {
                os << dirichlet_json(reports.front()).dump(2) << '\n';
            } else {
                json arr = json::array();
                for (const auto& r : reports) arr.push_back(dirichlet_json(r));
                os << arr.dump(2) << '\n';
            }
        } else {
            write_dirichlet_csv(os, reports);
        }
    });
    return kOk;
}

struct BoundOptions {
    std::string scheme = "heat";
    double alpha = 1.0;
    double c = 1.0;
    int m = 0;
    double h = 1.0;
    std::string format = "csv";
    std::string out;
};

int cmd_bound(const BoundOptions& o, const Streams& s) {
    const Scheme scheme = parse_scheme(o.scheme);
    if (o.m < 0) throw InvalidArgument("graph level must be non-negative");
    const HolderParams p{o.alpha, o.c};
    const double bound = scheme == Scheme::heat ? heat_holder_bound(p, o.m, o.h) : wave_holder_bound(p, o.m, o.h);
    const double ratio = (scheme == Scheme::heat ? o.h : o.h * o.h) * pow64(o.m);

    Manifest manifest("bound");
    manifest.param("scheme", o.scheme);
    manifest.param("alpha", o.alpha);
    manifest.param("c", o.c);
    manifest.param("m", o.m);
    manifest.param("h", o.h);
    manifest.output(o.out, o.format);
    manifest.summary()["bound"] = bound;

    emit(s, manifest, o.out, [&](std::ostream& os) {
        if (o.format == "json") {
            const json j = {{"scheme", o.scheme}, {"alpha", o.alpha}, {"c", o.c}, {"m", o.m},
                            {"h", o.h},           {"bound", bound},   {"ratio", ratio}};
            os << j.dump(2) << '\n';
        } else {
            os << "scheme,alpha,c,m,h,bound,ratio\n"
               << o.scheme << ',' << format_number(o.alpha) << ',' << format_number(o.c) << ',' << o.m << ','
               << format_number(o.h) << ',' << format_number(bound) << ',' << format_number(ratio) << '\n';
        }
    });
    if (!o.out.empty()) s.out << "bound: " << format_number(bound) << '\n';
    return kOk;
}

std::vector<std::string> replay_args(const std::string& manifest_path, const std::string& out_override) {
    std::ifstream in(manifest_path);
    if (!in) throw InvalidArgument("cannot open manifest '" + manifest_path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw InvalidArgument("manifest '" + manifest_path + "' is not valid JSON: " + e.what());
    }
    if (!j.contains("argv") || !j["argv"].is_array() || j["argv"].empty()) {
        throw InvalidArgument("manifest '" + manifest_path + "' has no argv array");
    }
    auto args = j["argv"].get<std::vector<std::string>>();
    if (args.front() == "replay") throw InvalidArgument("a manifest cannot replay another manifest");
    if (!out_override.empty()) {
        auto it = std::find(args.begin(), args.end(), "--out");
        if (it != args.end() && std::next(it) != args.end()) {
            *std::next(it) = out_override;
        } else {
            args.push_back("--out");
            args.push_back(out_override);
        }
    }
    return args;
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    const Streams streams{out, err};

    CLI::App app{"Finite-difference heat and wave solvers on graph approximations of the Minkowski curve",
                 kToolName};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    CurveOptions curve;
    auto* c_curve = app.add_subcommand("curve", "Export the level-m vertex chain");
    c_curve->add_option("--m", curve.m, "Graph level")->capture_default_str();
    add_output_options(c_curve, curve.format, curve.out);

    LaplacianOptions lap;
    auto* c_lap = app.add_subcommand("laplacian", "Export the level-m graph Laplacian");
    c_lap->add_option("--m", lap.m, "Graph level")->capture_default_str();
    c_lap->add_flag("--renormalized", lap.renormalized, "Scale by 64^m");
    add_output_options(c_lap, lap.format, lap.out);

    SolveOptions heat;
    SolveOptions wave;
    wave.m = 2;
    wave.N = 1000;
    auto add_solve = [&](const char* name, const char* about, SolveOptions& o, bool is_wave) {
        auto* cmd = app.add_subcommand(name, about);
        cmd->add_option("--m", o.m, "Graph level")->capture_default_str();
        cmd->add_option("--T", o.T, "Time horizon")->capture_default_str();
        cmd->add_option("--N", o.N, "Number of time steps")->capture_default_str();
        cmd->add_option("--initial", o.initial,
                        "zero | impulse:J | harmonic:A,B | sine:F | samples:PATH (default: impulse at the midpoint)");
        if (is_wave) {
            cmd->add_option("--velocity", o.velocity, "Initial velocity, same syntax as --initial")
                ->capture_default_str();
            cmd->add_flag("--check-reverse", o.check_reverse, "Report the forward/backward recovery error");
        }
        cmd->add_option("--snapshots", o.snapshots, "Comma-separated step indices to record")->delimiter(',');
        cmd->add_option("--growth-limit", o.growth_limit, "Abort once the max-norm grows by this factor")
            ->capture_default_str();
        add_output_options(cmd, o.format, o.out);
        return cmd;
    };
    auto* c_heat = add_solve("heat", "Explicit Euler heat run", heat, false);
    auto* c_wave = add_solve("wave", "Leapfrog wave run", wave, true);

    DirichletOptions dir;
    auto* c_dir = app.add_subcommand("dirichlet-error", "Dirichlet benchmark error E_m for harmonic data");
    c_dir->add_option("--m", dir.levels, "Level or range A..B")->capture_default_str();
    c_dir->add_option("--q", dir.q, "Reaction coefficient")->capture_default_str();
    c_dir->add_option("--a", dir.a, "Harmonic value at P_0")->capture_default_str();
    c_dir->add_option("--b", dir.b, "Harmonic value at P_1")->capture_default_str();
    add_output_options(c_dir, dir.format, dir.out);

    BoundOptions bound;
    auto* c_bound = app.add_subcommand("bound", "Theoretical Hölder error bound");
    c_bound->set_help_flag("--help", "Print this help message and exit");  // -h would clash with --h
    c_bound->add_option("--scheme", bound.scheme, "heat or wave")
        ->check(CLI::IsMember({"heat", "wave"}))
        ->capture_default_str();
    c_bound->add_option("--alpha", bound.alpha, "Hölder exponent (> 0)")->capture_default_str();
    c_bound->add_option("--c", bound.c, "Hölder constant (> 0)")->capture_default_str();
    c_bound->add_option("--m", bound.m, "Graph level")->capture_default_str();
    c_bound->add_option("--h", bound.h, "Time step")->capture_default_str();
    add_output_options(c_bound, bound.format, bound.out);

    std::string manifest_path;
    std::string replay_out;
    auto* c_replay = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
    c_replay->add_option("manifest", manifest_path, "Manifest JSON written by an earlier run")->required();
    c_replay->add_option("--out", replay_out, "Write to this path instead of the recorded one");

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInvalidArguments;
    }

    try {
        if (c_curve->parsed()) return cmd_curve(curve, streams);
        if (c_lap->parsed()) return cmd_laplacian(lap, streams);
        if (c_heat->parsed()) return cmd_solve(Scheme::heat, heat, streams);
        if (c_wave->parsed()) return cmd_solve(Scheme::wave, wave, streams);
        if (c_dir->parsed()) return cmd_dirichlet(dir, streams);
        if (c_bound->parsed()) return cmd_bound(bound, streams);
        if (c_replay->parsed()) return run(replay_args(manifest_path, replay_out), out, err);
    } catch (const Diverged& e) {
        err << "error: run diverged at step " << e.step() << ": " << e.what() << '\n';
        return kDiverged;
    } catch (const ResourceLimit& e) {
        err << "error: " << e.what() << '\n';
        return kResourceCap;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidArguments;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }
    return kInvalidArguments;
}

}  // namespace fractal_fdm::cli
