#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fractal_fdm/error_analysis.hpp"
#include "fractal_fdm/errors.hpp"
#include "fractal_fdm/geometry.hpp"
#include "fractal_fdm/harmonic.hpp"
#include "fractal_fdm/laplacian.hpp"
#include "fractal_fdm/schemes.hpp"

namespace py = pybind11;
using namespace fractal_fdm;

namespace {

Word to_word(const std::vector<int>& letters) { return Word(letters); }

std::vector<int> from_word(const Word& w) { return {w.letters().begin(), w.letters().end()}; }

py::tuple point(Point2 p) { return py::make_tuple(p.x, p.y); }

Point2 to_point(std::pair<double, double> p) { return {p.first, p.second}; }

Corner to_corner(const std::string& name) {
    if (name == "P0" || name == "p0") return Corner::P0;
    if (name == "P1" || name == "p1") return Corner::P1;
    throw InvalidArgument("corner must be 'P0' or 'P1'");
}

SchemeConfig make_config(int m, double T, std::int64_t N, const std::string& initial, const std::string& velocity,
                         std::vector<std::int64_t> snapshots, double growth_limit) {
    SchemeConfig cfg;
    cfg.m = m;
    cfg.T = T;
    cfg.N = N;
    cfg.initial = InitialCondition::parse(initial);
    cfg.initial_velocity = InitialCondition::parse(velocity);
    cfg.snapshot_steps = std::move(snapshots);
    cfg.growth_limit = growth_limit;
    return cfg;
}

py::list snapshots_to_py(const std::vector<SolutionSnapshot>& snaps) {
    py::list out;
    for (const auto& s : snaps) {
        py::dict d;
        d["step"] = s.step;
        d["time"] = s.time;
        d["values"] = s.values;
        out.append(d);
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Finite-difference heat and wave solvers on graph approximations of the Minkowski curve.";

    auto base = py::register_exception<Error>(m, "FractalFdmError");
    py::register_exception<InvalidArgument>(m, "InvalidArgumentError", PyExc_ValueError);
    py::register_exception<ResourceLimit>(m, "ResourceLimitError", base.ptr());
    // Translators run in reverse registration order, so the subclass goes last.
    auto numerical = py::register_exception<NumericalError>(m, "NumericalError", base.ptr());
    py::register_exception<Diverged>(m, "DivergedError", numerical.ptr());

    m.def("max_level", &max_level);
    m.def("set_max_level", &set_max_level, py::arg("level"));

    m.def("apply_map", [](int i, std::pair<double, double> p) { return point(apply_map(i, to_point(p))); },
          py::arg("i"), py::arg("p"));
    m.def("apply_word",
          [](const std::vector<int>& w, std::pair<double, double> p) { return point(apply_word(to_word(w), to_point(p))); },
          py::arg("word"), py::arg("p"));
    m.def("enumerate_words", [](int level) {
        std::vector<std::vector<int>> out;
        for (const auto& w : enumerate_words(level)) out.push_back(from_word(w));
        return out;
    }, py::arg("m"));
    m.def("build_graph", [](int level) {
        const GraphApprox g = build_graph(level);
        std::vector<double> xs, ys, params;
        std::vector<std::string> addresses;
        for (std::size_t i = 0; i < g.size(); ++i) {
            const Vertex v = g.vertex(i);
            xs.push_back(v.coords.x);
            ys.push_back(v.coords.y);
            params.push_back(v.param);
            addresses.push_back(v.address_string());
        }
        py::dict d;
        d["level"] = level;
        d["x"] = xs;
        d["y"] = ys;
        d["param"] = params;
        d["address"] = addresses;
        return d;
    }, py::arg("m"), "Vertex chain as parallel lists x, y, param, address.");

    py::class_<TridiagonalMatrix>(m, "TridiagonalMatrix")
        .def_property_readonly("n", &TridiagonalMatrix::size)
        .def_property_readonly("sub", [](const TridiagonalMatrix& a) { return std::vector<double>(a.sub().begin(), a.sub().end()); })
        .def_property_readonly("diag", [](const TridiagonalMatrix& a) { return std::vector<double>(a.diag().begin(), a.diag().end()); })
        .def_property_readonly("sup", [](const TridiagonalMatrix& a) { return std::vector<double>(a.sup().begin(), a.sup().end()); })
        .def("to_dense", [](const TridiagonalMatrix& a) {
            const auto flat = a.to_dense();
            const std::size_t n = a.size();
            std::vector<std::vector<double>> rows(n);
            for (std::size_t i = 0; i < n; ++i) rows[i].assign(flat.begin() + static_cast<long>(i * n), flat.begin() + static_cast<long>((i + 1) * n));
            return rows;
        })
        .def("apply", [](const TridiagonalMatrix& a, const std::vector<double>& v) { return multiply(a, v); }, py::arg("v"))
        .def("max_eigenvalue", [](const TridiagonalMatrix& a, double tol) { return max_eigenvalue(a, tol); },
             py::arg("tol") = kDefaultEigenTolerance);

    m.def("laplacian_matrix", &laplacian_matrix, py::arg("m"));
    m.def("renormalized_laplacian", &renormalized_laplacian, py::arg("m"));

    m.def("harmonic_at",
          [](double a, double b, const std::vector<int>& w, const std::string& corner) {
              return harmonic_at({a, b}, to_word(w), to_corner(corner));
          },
          py::arg("a"), py::arg("b"), py::arg("word"), py::arg("corner") = "P0");
    m.def("sample_harmonic", [](double a, double b, int level) { return sample_harmonic({a, b}, level); },
          py::arg("a"), py::arg("b"), py::arg("m"));

    m.def("heat_step_matrix", &heat_step_matrix, py::arg("m"), py::arg("h"));
    m.def("wave_step_matrix", &wave_step_matrix, py::arg("m"), py::arg("h"));
    m.def("heat_solve",
          [](int level, double T, std::int64_t N, const std::string& initial, std::vector<std::int64_t> snapshots,
             double growth_limit) {
              return snapshots_to_py(heat_solve(make_config(level, T, N, initial, "zero", std::move(snapshots), growth_limit)));
          },
          py::arg("m"), py::arg("T"), py::arg("N"), py::arg("initial") = "zero",
          py::arg("snapshots") = std::vector<std::int64_t>{}, py::arg("growth_limit") = 1e8);
    m.def("wave_solve",
          [](int level, double T, std::int64_t N, const std::string& initial, const std::string& velocity,
             std::vector<std::int64_t> snapshots, double growth_limit) {
              return snapshots_to_py(wave_solve(make_config(level, T, N, initial, velocity, std::move(snapshots), growth_limit)));
          },
          py::arg("m"), py::arg("T"), py::arg("N"), py::arg("initial") = "zero", py::arg("velocity") = "zero",
          py::arg("snapshots") = std::vector<std::int64_t>{}, py::arg("growth_limit") = 1e8);
    m.def("wave_reversal_error",
          [](int level, double T, std::int64_t N, const std::string& initial, const std::string& velocity) {
              return wave_reversal_error(make_config(level, T, N, initial, velocity, {}, 1e8));
          },
          py::arg("m"), py::arg("T"), py::arg("N"), py::arg("initial") = "zero", py::arg("velocity") = "zero");
    m.def("stability_check", [](const std::string& scheme, int level, double h) {
        const auto r = stability_check(parse_scheme(scheme), level, h);
        py::dict d;
        d["scheme"] = std::string(to_string(r.scheme));
        d["ratio"] = r.ratio;
        d["lambda_max"] = r.lambda_max;
        d["spectral_bound"] = r.spectral_bound;
        d["threshold"] = r.threshold;
        d["stable"] = r.stable;
        return d;
    }, py::arg("scheme"), py::arg("m"), py::arg("h"));

    m.def("heat_holder_bound", [](double alpha, double c, int level, double h) { return heat_holder_bound({alpha, c}, level, h); },
          py::arg("alpha"), py::arg("c"), py::arg("m"), py::arg("h"));
    m.def("wave_holder_bound", [](double alpha, double c, int level, double h) { return wave_holder_bound({alpha, c}, level, h); },
          py::arg("alpha"), py::arg("c"), py::arg("m"), py::arg("h"));
    m.def("solve_dirichlet", [](int level, double q, double a, double b) { return solve_dirichlet({level, q, {a, b}}); },
          py::arg("m"), py::arg("q") = 2.0, py::arg("a") = 0.0, py::arg("b") = 1.0);
    m.def("dirichlet_error", [](int level, double q, double a, double b) { return dirichlet_error({level, q, {a, b}}); },
          py::arg("m"), py::arg("q") = 2.0, py::arg("a") = 0.0, py::arg("b") = 1.0);
}
