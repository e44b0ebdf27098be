#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <random>

#include "fractal_fdm/errors.hpp"
#include "fractal_fdm/geometry.hpp"
#include "fractal_fdm/laplacian.hpp"
#include "fractal_fdm/schemes.hpp"
#include "oracles.hpp"

using namespace fractal_fdm;

namespace {

SchemeConfig config(int m, double T, std::int64_t N, InitialCondition initial) {
    SchemeConfig cfg;
    cfg.m = m;
    cfg.T = T;
    cfg.N = N;
    cfg.initial = std::move(initial);
    return cfg;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

}  // namespace

TEST_CASE("heat_step_matrix reproduces the printed level-1 matrix at h = 1") {
    const auto a = heat_step_matrix(1, 1.0);
    REQUIRE(a.size() == 9);
    for (std::size_t i = 0; i < 9; ++i) {
        for (std::size_t j = 0; j < 9; ++j) {
            double want = 0.0;
            if (i == j) want = (i == 0 || i == 8) ? -63.0 : -127.0;
            if (i + 1 == j || j + 1 == i) want = 64.0;
            CHECK(a.at(i, j) == want);
        }
    }
}

TEST_CASE("heat_step_matrix edge cases") {
    CHECK(heat_step_matrix(0, 0.0) == TridiagonalMatrix::identity(2));
    const auto a = heat_step_matrix(2, 1e-5);
    CHECK(a.diag()[10] == doctest::Approx(1.0 - 2.0 * 4096.0 * 1e-5).epsilon(1e-15));
    CHECK(a.sub()[3] == doctest::Approx(4096.0 * 1e-5).epsilon(1e-15));
    CHECK_THROWS_AS(heat_step_matrix(1, -1.0), InvalidArgument);
    const auto dense = TridiagonalMatrix::identity(65) - 1e-5 * renormalized_laplacian(2);
    for (std::size_t i = 0; i < 65; ++i) CHECK(a.diag()[i] == doctest::Approx(dense.diag()[i]).epsilon(1e-15));
}

TEST_CASE("wave_step_matrix") {
    CHECK(wave_step_matrix(0, 0.0) == 2.0 * TridiagonalMatrix::identity(2));
    CHECK(wave_step_matrix(1, 1.0).diag()[3] == -126.0);
    CHECK(wave_step_matrix(1, 1.0).diag()[0] == -62.0);
    for (double h : {0.5, 1e-2, 3e-3}) {
        const auto want = 2.0 * TridiagonalMatrix::identity(65) - (h * h) * renormalized_laplacian(2);
        const auto got = wave_step_matrix(2, h);
        for (std::size_t i = 0; i < 65; ++i) CHECK(got.diag()[i] == doctest::Approx(want.diag()[i]).epsilon(1e-14));
        for (std::size_t i = 0; i < 64; ++i) CHECK(got.sup()[i] == doctest::Approx(want.sup()[i]).epsilon(1e-14));
    }
}

TEST_CASE("initial conditions are projected onto zero boundary values") {
    const auto h = InitialCondition::harmonic(1.0, 2.0).evaluate(1);
    CHECK(h.front() == 0.0);
    CHECK(h.back() == 0.0);
    CHECK(h[4] == 1.5);

    const auto imp = InitialCondition::impulse(4).evaluate(1);
    CHECK(imp[4] == 1.0);
    CHECK(max_norm(imp) == 1.0);
    CHECK(max_norm(InitialCondition::impulse(0).evaluate(1)) == 0.0);
    CHECK_THROWS_AS(InitialCondition::impulse(9).evaluate(1), InvalidArgument);

    const auto s = InitialCondition::parameter_sine(1.0).evaluate(1);
    CHECK(s[4] == doctest::Approx(1.0));
    CHECK(s.back() == 0.0);

    CHECK_THROWS_AS(InitialCondition::samples({1.0, 2.0}).evaluate(1), InvalidArgument);
}

TEST_CASE("initial condition parsing round-trips through describe") {
    for (const char* text : {"zero", "impulse:256", "harmonic:0,1", "harmonic:-0.5,2.25", "sine:3"}) {
        CHECK(InitialCondition::parse(text).describe() == text);
    }
    CHECK_THROWS_AS(InitialCondition::parse("impulse:"), InvalidArgument);
    CHECK_THROWS_AS(InitialCondition::parse("impulse:-3"), InvalidArgument);
    CHECK_THROWS_AS(InitialCondition::parse("harmonic:1"), InvalidArgument);
    CHECK_THROWS_AS(InitialCondition::parse("gauss:1"), InvalidArgument);
    CHECK_THROWS_AS(InitialCondition::parse("samples:/nonexistent/file"), InvalidArgument);

    const char* path = "test_schemes_samples.txt";
    {
        std::ofstream out(path);
        out << "9, 1, 2\n3 4 5\n6,7,9\n";
    }
    const auto ic = InitialCondition::parse(std::string("samples:") + path);
    CHECK(ic.kind() == InitialCondition::Kind::samples);
    CHECK(ic.evaluate(1) == std::vector<double>{0, 1, 2, 3, 4, 5, 6, 7, 0});
    std::remove(path);
}

TEST_CASE("config validation") {
    auto cfg = config(1, 1.0, 10, InitialCondition::zero());
    cfg.snapshot_steps = {11};
    CHECK_THROWS_AS(heat_solve(cfg), InvalidArgument);
    cfg.snapshot_steps = {};
    cfg.N = 0;
    CHECK_THROWS_AS(heat_solve(cfg), InvalidArgument);
    cfg.N = 10;
    cfg.T = -1.0;
    CHECK_THROWS_AS(wave_solve(cfg), InvalidArgument);
    cfg.T = 1.0;
    cfg.m = 99;
    CHECK_THROWS_AS(heat_solve(cfg), ResourceLimit);
}

TEST_CASE("zero data stays zero") {
    auto cfg = config(2, 10.0, 50, InitialCondition::zero());
    cfg.snapshot_steps = {10, 50};
    for (const auto& snaps : {heat_solve(cfg), wave_solve(cfg)}) {
        REQUIRE(snaps.size() == 3);
        CHECK(snaps[0].step == 0);
        CHECK(snaps[2].step == 50);
        CHECK(snaps[2].time == doctest::Approx(10.0));
        for (const auto& s : snaps) CHECK(max_norm(s.values) == 0.0);
    }
}

TEST_CASE("heat_solve agrees with the dense matrix-power oracle at level 1") {
    const double h = 1.0 / 256.0;  // h 64 = 1/4, stable
    auto cfg = config(1, 100 * h, 100, InitialCondition::impulse(3));
    cfg.snapshot_steps = {1, 2, 17, 50, 100};
    const auto snaps = heat_solve(cfg);
    REQUIRE(snaps.size() == 6);

    Eigen::MatrixXd a = Eigen::MatrixXd::Identity(9, 9) - h * 64.0 * oracle::dense_path_laplacian(9);
    Eigen::VectorXd u = Eigen::VectorXd::Zero(9);
    u(3) = 1.0;
    std::size_t next = 0;
    for (std::int64_t k = 0; k <= 100; ++k) {
        if (k > 0) {
            u = a * u;
            u(0) = 0.0;
            u(8) = 0.0;
        }
        if (next < snaps.size() && snaps[next].step == k) {
            for (Eigen::Index i = 0; i < 9; ++i) CHECK(std::abs(snaps[next].values[static_cast<std::size_t>(i)] - u(i)) <= 1e-10);
            ++next;
        }
    }
    CHECK(next == snaps.size());
}

TEST_CASE("heat max-norm is non-increasing in the monotone regime") {
    // h 64^m 2 <= 1
    for (int m = 1; m <= 3; ++m) {
        const double h = 0.5 / pow64(m);
        auto cfg = config(m, 400 * h, 400, InitialCondition::impulse(pow8(m) / 2));
        double prev = INFINITY;
        heat_solve(cfg, [&](std::int64_t, std::span<const double> u) {
            const double norm = max_norm(u);
            CHECK(norm <= prev);
            prev = norm;
        });
    }
}

TEST_CASE("heat_solve is linear and superposes") {
    const int m = 2;
    auto base = config(m, 100 * 0.25 / pow64(m), 100, InitialCondition::zero());
    base.snapshot_steps = {25, 100};
    std::mt19937_64 rng(21);
    std::normal_distribution<double> g;
    std::vector<double> g1(vertex_count(m)), g2(vertex_count(m)), g12(vertex_count(m)), g1s(vertex_count(m));
    for (std::size_t i = 0; i < g1.size(); ++i) {
        g1[i] = g(rng);
        g2[i] = g(rng);
        g12[i] = g1[i] + g2[i];
        g1s[i] = -3.5 * g1[i];
    }
    auto run = [&](const std::vector<double>& data) {
        auto cfg = base;
        cfg.initial = InitialCondition::samples(data);
        return heat_solve(cfg);
    };
    const auto r1 = run(g1), r2 = run(g2), r12 = run(g12), r1s = run(g1s);
    for (std::size_t s = 0; s < r1.size(); ++s) {
        const double scale = std::max(max_norm(r12[s].values), 1e-300);
        for (std::size_t i = 0; i < g1.size(); ++i) {
            CHECK(std::abs(r12[s].values[i] - (r1[s].values[i] + r2[s].values[i])) <= 1e-12 * scale);
            CHECK(std::abs(r1s[s].values[i] - (-3.5) * r1[s].values[i]) <= 1e-12 * max_norm(r1s[s].values));
        }
    }
}

TEST_CASE("every snapshot has exact zeros on the boundary") {
    auto cfg = config(2, 1.0, 1000, InitialCondition::harmonic(1.0, -2.0));
    cfg.snapshot_steps = {1, 10, 999, 1000};
    cfg.initial_velocity = InitialCondition::parameter_sine(2.0);
    for (const auto& snaps : {wave_solve(cfg)}) {
        for (const auto& s : snaps) {
            CHECK(s.values.front() == 0.0);
            CHECK(s.values.back() == 0.0);
        }
    }
    cfg.T = 1000 * 0.25 / pow64(2);
    for (const auto& s : heat_solve(cfg)) {
        CHECK(s.values.front() == 0.0);
        CHECK(s.values.back() == 0.0);
    }
}

TEST_CASE("unstable heat runs grow and are reported as diverged") {
    auto cfg = config(1, 10.0, 10, InitialCondition::impulse(4));
    cfg.growth_limit = std::numeric_limits<double>::infinity();
    cfg.snapshot_steps = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    const auto snaps = heat_solve(cfg);
    CHECK(max_norm(snaps.back().values) >= 10.0);

    cfg.growth_limit = 1e8;
    try {
        heat_solve(cfg);
        FAIL("expected divergence");
    } catch (const Diverged& e) {
        CHECK(e.step() >= 1);
        CHECK(e.step() <= 10);
    }

    // Overflow to infinity is caught even without a growth limit.
    auto long_cfg = config(1, 2000.0, 2000, InitialCondition::impulse(4));
    long_cfg.growth_limit = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(heat_solve(long_cfg), Diverged);
}

TEST_CASE("instability appears within a logarithmic number of steps") {
    // h lambda_max > 2 + margin: spectral radius of A is at least 1 + margin.
    for (int m = 1; m <= 3; ++m) {
        const double lam = max_eigenvalue(renormalized_laplacian(m));
        const double h = 2.2 / lam;
        const double rho = h * lam - 1.0;  // 1.2
        const auto steps = static_cast<std::int64_t>(4 * std::ceil(std::log(1e3 * vertex_count(m)) / std::log(rho)));
        auto cfg = config(m, h * static_cast<double>(steps), steps, InitialCondition::impulse(pow8(m) / 2));
        cfg.growth_limit = std::numeric_limits<double>::infinity();
        bool grew = false;
        heat_solve(cfg, [&](std::int64_t, std::span<const double> u) {
            if (max_norm(u) >= 10.0) grew = true;
        });
        CHECK(grew);
    }
}

TEST_CASE("wave recurrence is exactly reversible at dyadic parameters") {
    // h^2 64 = 1: every intermediate value is a small dyadic rational, so the arithmetic is exact.
    auto cfg = config(1, 25.0 / 8.0, 25, InitialCondition::impulse(4));
    CHECK(wave_reversal_error(cfg) == 0.0);
}

TEST_CASE("wave reversal at the documented regime") {
    auto cfg = config(2, 10.0, 1000, InitialCondition::impulse(32));
    CHECK(wave_reversal_error(cfg) <= 1e-8);
    cfg.initial_velocity = InitialCondition::parameter_sine(1.0);
    CHECK(wave_reversal_error(cfg) <= 1e-8);
}

TEST_CASE("wave start is the second-order Taylor step") {
    auto cfg = config(1, 0.1, 1, InitialCondition::impulse(4));
    cfg.initial_velocity = InitialCondition::impulse(5);
    const double h = 0.1;
    const auto snaps = wave_solve(cfg, {});
    std::vector<std::vector<double>> seen;
    wave_solve(cfg, [&](std::int64_t, std::span<const double> u) { seen.emplace_back(u.begin(), u.end()); });
    REQUIRE(seen.size() == 2);
    const auto u0 = InitialCondition::impulse(4).evaluate(1);
    const auto lap = multiply(renormalized_laplacian(1), u0);
    for (std::size_t i = 1; i < 8; ++i) {
        const double want = u0[i] + (i == 5 ? h : 0.0) - 0.5 * h * h * lap[i];
        CHECK(seen[1][i] == doctest::Approx(want).epsilon(1e-15));
    }
    CHECK(snaps.size() == 1);
}

TEST_CASE("wave_solve agrees with a dense leapfrog oracle") {
    const double h = 1e-2;
    auto cfg = config(1, 60 * h, 60, InitialCondition::impulse(2));
    cfg.snapshot_steps = {60};
    const auto snaps = wave_solve(cfg);
    const Eigen::MatrixXd lap = 64.0 * oracle::dense_path_laplacian(9);
    const Eigen::MatrixXd a = 2.0 * Eigen::MatrixXd::Identity(9, 9) - h * h * lap;
    Eigen::VectorXd prev = Eigen::VectorXd::Zero(9);
    prev(2) = 1.0;
    Eigen::VectorXd cur = prev - 0.5 * h * h * lap * prev;
    cur(0) = cur(8) = 0.0;
    for (int k = 2; k <= 60; ++k) {
        Eigen::VectorXd next = a * cur - prev;
        next(0) = next(8) = 0.0;
        prev = cur;
        cur = next;
    }
    for (Eigen::Index i = 0; i < 9; ++i) CHECK(std::abs(snaps.back().values[static_cast<std::size_t>(i)] - cur(i)) <= 1e-12);
}

TEST_CASE("stability_check") {
    const auto unstable = stability_check(Scheme::heat, 1, 1.0);
    CHECK(unstable.ratio == 64.0);
    CHECK_FALSE(unstable.stable);

    const auto trivial = stability_check(Scheme::heat, 0, 0.5);
    CHECK(trivial.spectral_bound == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(trivial.stable);

    const auto slow_heat = stability_check(Scheme::heat, 3, 1e-6);
    CHECK(slow_heat.ratio == doctest::Approx(0.262144).epsilon(1e-12));
    CHECK(slow_heat.lambda_max < 4.0 * pow64(3));
    CHECK(slow_heat.stable);

    const auto long_wave = stability_check(Scheme::wave, 2, 1e-2);
    CHECK(long_wave.ratio == doctest::Approx(0.4096).epsilon(1e-12));
    CHECK(long_wave.threshold == 4.0);
    CHECK(long_wave.stable);

    CHECK_FALSE(stability_check(Scheme::wave, 2, 0.04).stable);
    CHECK(parse_scheme("wave") == Scheme::wave);
    CHECK_THROWS_AS(parse_scheme("diffusion"), InvalidArgument);
}
