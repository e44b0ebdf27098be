#include "fractal_fdm/io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <ostream>

#include "fractal_fdm/errors.hpp"

namespace fractal_fdm {

std::string format_number(double x) {
    std::array<char, 32> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    if (ec != std::errc{}) throw Error("number formatting failed");
    return std::string(buf.data(), ptr);
}

namespace {

char* put_number(char* p, char* end, double x) {
    auto [ptr, ec] = std::to_chars(p, end, x);
    if (ec != std::errc{}) throw Error("number formatting failed");
    return ptr;
}

}  // namespace

// Level 8 has 16.7M rows, so rows are formatted into a reused buffer instead
// of going through Vertex and Word. The address is base-8 digits of index - 1,
// each plus one, which is what canonical_address computes.
void write_vertices_csv(std::ostream& out, const GraphApprox& graph) {
    out << "index,param,x,y,address\n";
    const int m = graph.level();
    std::string buffer;
    buffer.reserve(1 << 20);
    std::array<char, 128> row{};
    char* const end = row.data() + row.size();
    for (std::size_t i = 0; i < graph.size(); ++i) {
        char* p = std::to_chars(row.data(), end, i).ptr;
        *p++ = ',';
        p = put_number(p, end, graph.param(i));
        *p++ = ',';
        p = put_number(p, end, graph[i].x);
        *p++ = ',';
        p = put_number(p, end, graph[i].y);
        *p++ = ',';
        if (i == 0) {
            p = std::copy_n("origin", 6, p);
        } else {
            std::uint64_t rest = i - 1;
            for (int pos = m - 1; pos >= 0; --pos) {
                p[pos] = static_cast<char>('1' + (rest & 7u));
                rest >>= 3;
            }
            p += m;
        }
        *p++ = '\n';
        buffer.append(row.data(), p);
        if (buffer.size() > (1 << 20) - row.size()) {
            out.write(buffer.data(), static_cast<std::streamsize>(buffer.size()));
            buffer.clear();
        }
    }
    out.write(buffer.data(), static_cast<std::streamsize>(buffer.size()));
}

nlohmann::json vertices_json(const GraphApprox& graph) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < graph.size(); ++i) {
        const Vertex v = graph.vertex(i);
        rows.push_back({{"index", v.index},
                        {"param", v.param},
                        {"x", v.coords.x},
                        {"y", v.coords.y},
                        {"address", v.address_string()}});
    }
    return rows;
}

void write_matrix_csv(std::ostream& out, const TridiagonalMatrix& mat) {
    const std::size_t n = mat.size();
    if (n <= kDenseMatrixLimit) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (j > 0) out << ',';
                out << format_number(mat.at(i, j));
            }
            out << '\n';
        }
        return;
    }
    out << "row,col,value\n";
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) out << i << ',' << i - 1 << ',' << format_number(mat.sub()[i - 1]) << '\n';
        out << i << ',' << i << ',' << format_number(mat.diag()[i]) << '\n';
        if (i + 1 < n) out << i << ',' << i + 1 << ',' << format_number(mat.sup()[i]) << '\n';
    }
}

void write_snapshots_csv(std::ostream& out, const GraphApprox& graph, std::span<const SolutionSnapshot> snapshots) {
    out << "step,time,index,param,x,y,u\n";
    for (const auto& snap : snapshots) {
        if (snap.values.size() != graph.size()) throw InvalidArgument("snapshot length does not match the graph");
        const std::string prefix = std::to_string(snap.step) + ',' + format_number(snap.time) + ',';
        for (std::size_t i = 0; i < graph.size(); ++i) {
            out << prefix << i << ',' << format_number(graph.param(i)) << ',' << format_number(graph[i].x) << ','
                << format_number(graph[i].y) << ',' << format_number(snap.values[i]) << '\n';
        }
    }
}

nlohmann::json stability_json(const StabilityReport& report) {
    return {{"scheme", std::string(to_string(report.scheme))},
            {"ratio", report.ratio},
            {"lambda_max", report.lambda_max},
            {"spectral_bound", report.spectral_bound},
            {"threshold", report.threshold},
            {"stable", report.stable}};
}

nlohmann::json snapshots_json(const SchemeConfig& cfg, Scheme scheme, const StabilityReport& stability,
                              std::span<const SolutionSnapshot> snapshots) {
    nlohmann::json snaps = nlohmann::json::array();
    for (const auto& snap : snapshots) snaps.push_back({{"step", snap.step}, {"time", snap.time}, {"u", snap.values}});
    nlohmann::json meta = {{"scheme", std::string(to_string(scheme))},
                           {"m", cfg.m},
                           {"T", cfg.T},
                           {"N", cfg.N},
                           {"h", cfg.h()},
                           {"initial", cfg.initial.describe()},
                           {"stability", stability_json(stability)}};
    if (scheme == Scheme::wave) meta["velocity"] = cfg.initial_velocity.describe();
    return {{"run", meta}, {"snapshots", snaps}};
}

nlohmann::json dirichlet_json(const DirichletReport& report) {
    return {{"m", report.m},
            {"q", report.q},
            {"boundary", {report.boundary.a, report.boundary.b}},
            {"E_m", report.error},
            {"residual", report.residual},
            {"solver", "tridiagonal-direct"}};
}

void write_dirichlet_csv(std::ostream& out, std::span<const DirichletReport> reports) {
    out << "m,q,a,b,E_m,residual\n";
    for (const auto& r : reports) {
        out << r.m << ',' << format_number(r.q) << ',' << format_number(r.boundary.a) << ','
            << format_number(r.boundary.b) << ',' << format_number(r.error) << ',' << format_number(r.residual)
            << '\n';
    }
}

}  // namespace fractal_fdm
