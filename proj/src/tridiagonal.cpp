#include "fractal_fdm/tridiagonal.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <string>

#include "fractal_fdm/errors.hpp"

namespace fractal_fdm {

namespace {

constexpr int kMaxBisectionSteps = 2000;

void require_same_shape(const TridiagonalMatrix& a, const TridiagonalMatrix& b) {
    if (a.size() != b.size()) {
        throw InvalidArgument("tridiagonal dimension mismatch: " + std::to_string(a.size()) +
                              " vs " + std::to_string(b.size()));
    }
}

void require_symmetric(const TridiagonalMatrix& mat) {
    if (!mat.is_symmetric()) throw InvalidArgument("eigenvalue routines need a symmetric tridiagonal matrix");
    if (mat.size() == 0) throw InvalidArgument("eigenvalue routines need a non-empty matrix");
}

// Gershgorin interval containing the whole spectrum.
std::pair<double, double> gershgorin(const TridiagonalMatrix& mat) {
    auto d = mat.diag();
    auto e = mat.sub();
    double lo = INFINITY;
    double hi = -INFINITY;
    for (std::size_t i = 0; i < d.size(); ++i) {
        double radius = 0.0;
        if (i > 0) radius += std::abs(e[i - 1]);
        if (i + 1 < d.size()) radius += std::abs(e[i]);
        lo = std::min(lo, d[i] - radius);
        hi = std::max(hi, d[i] + radius);
    }
    return {lo, hi};
}

}  // namespace

TridiagonalMatrix::TridiagonalMatrix(std::vector<double> sub, std::vector<double> diag, std::vector<double> sup)
    : sub_(std::move(sub)), diag_(std::move(diag)), sup_(std::move(sup)) {
    const std::size_t off = diag_.empty() ? 0 : diag_.size() - 1;
    if (sub_.size() != off || sup_.size() != off) {
        throw InvalidArgument("off-diagonals of an n x n tridiagonal matrix need n - 1 entries");
    }
}

TridiagonalMatrix TridiagonalMatrix::identity(std::size_t n) {
    const std::size_t off = n == 0 ? 0 : n - 1;
    return {std::vector<double>(off, 0.0), std::vector<double>(n, 1.0), std::vector<double>(off, 0.0)};
}

double TridiagonalMatrix::at(std::size_t i, std::size_t j) const {
    if (i >= size() || j >= size()) throw InvalidArgument("matrix index out of range");
    if (i == j) return diag_[i];
    if (j + 1 == i) return sub_[j];
    if (i + 1 == j) return sup_[i];
    return 0.0;
}

std::vector<double> TridiagonalMatrix::to_dense() const {
    const std::size_t n = size();
    std::vector<double> dense(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        dense[i * n + i] = diag_[i];
        if (i + 1 < n) {
            dense[i * n + i + 1] = sup_[i];
            dense[(i + 1) * n + i] = sub_[i];
        }
    }
    return dense;
}

TridiagonalMatrix operator*(double s, const TridiagonalMatrix& a) {
    TridiagonalMatrix out = a;
    for (auto* band : {&out.sub_, &out.diag_, &out.sup_}) {
        for (double& x : *band) x *= s;
    }
    return out;
}

TridiagonalMatrix operator+(const TridiagonalMatrix& a, const TridiagonalMatrix& b) {
    require_same_shape(a, b);
    TridiagonalMatrix out = a;
    for (std::size_t i = 0; i < out.diag_.size(); ++i) out.diag_[i] += b.diag_[i];
    for (std::size_t i = 0; i < out.sub_.size(); ++i) {
        out.sub_[i] += b.sub_[i];
        out.sup_[i] += b.sup_[i];
    }
    return out;
}

TridiagonalMatrix operator-(const TridiagonalMatrix& a, const TridiagonalMatrix& b) {
    return a + (-1.0) * b;
}

void apply_into(const TridiagonalMatrix& mat, std::span<const double> v, std::span<double> out) {
    const std::size_t n = mat.size();
    if (v.size() != n || out.size() != n) {
        throw InvalidArgument("vector length " + std::to_string(v.size()) + " does not match matrix size " +
                              std::to_string(n));
    }
    if (n == 0) return;
    auto d = mat.diag();
    auto lo = mat.sub();
    auto up = mat.sup();
    if (n == 1) {
        out[0] = d[0] * v[0];
        return;
    }
    // Restrict-qualified pointers let the compiler vectorize the interior loop.
    const double* __restrict pd = d.data();
    const double* __restrict pl = lo.data();
    const double* __restrict pu = up.data();
    const double* __restrict pv = v.data();
    double* __restrict po = out.data();
    po[0] = pd[0] * pv[0] + pu[0] * pv[1];
    for (std::size_t i = 1; i + 1 < n; ++i) po[i] = pl[i - 1] * pv[i - 1] + pd[i] * pv[i] + pu[i] * pv[i + 1];
    po[n - 1] = pl[n - 2] * pv[n - 2] + pd[n - 1] * pv[n - 1];
}

std::vector<double> multiply(const TridiagonalMatrix& mat, std::span<const double> v) {
    std::vector<double> out(v.size());
    apply_into(mat, v, out);
    return out;
}

std::vector<double> solve(const TridiagonalMatrix& mat, std::span<const double> rhs) {
    const std::size_t n = mat.size();
    if (rhs.size() != n) throw InvalidArgument("right-hand side length does not match matrix size");
    if (n == 0) return {};
    auto a = mat.sub();
    auto b = mat.diag();
    auto c = mat.sup();
    std::vector<double> c_star(n, 0.0);
    std::vector<double> x(n, 0.0);

    double pivot = b[0];
    if (pivot == 0.0) throw NumericalError("tridiagonal solve hit a zero pivot at row 0");
    if (n > 1) c_star[0] = c[0] / pivot;
    x[0] = rhs[0] / pivot;
    for (std::size_t i = 1; i < n; ++i) {
        pivot = b[i] - a[i - 1] * c_star[i - 1];
        if (pivot == 0.0 || !std::isfinite(pivot)) {
            throw NumericalError("tridiagonal solve hit a zero pivot at row " + std::to_string(i));
        }
        if (i + 1 < n) c_star[i] = c[i] / pivot;
        x[i] = (rhs[i] - a[i - 1] * x[i - 1]) / pivot;
    }
    for (std::size_t i = n - 1; i-- > 0;) x[i] -= c_star[i] * x[i + 1];
    return x;
}

std::size_t count_eigenvalues_below(const TridiagonalMatrix& mat, double x) {
    require_symmetric(mat);
    auto d = mat.diag();
    auto e = mat.sub();
    double max_off_sq = 1.0;
    for (double v : e) max_off_sq = std::max(max_off_sq, v * v);
    const double pivmin = DBL_MIN * max_off_sq;

    std::size_t count = 0;
    double q = d[0] - x;
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++count;
    for (std::size_t i = 1; i < d.size(); ++i) {
        q = d[i] - x - e[i - 1] * e[i - 1] / q;
        if (std::abs(q) < pivmin) q = -pivmin;
        if (q < 0.0) ++count;
    }
    return count;
}

double eigenvalue(const TridiagonalMatrix& mat, std::size_t k, double tol) {
    require_symmetric(mat);
    if (k >= mat.size()) throw InvalidArgument("eigenvalue index out of range");
    if (!(tol > 0.0)) throw InvalidArgument("eigenvalue tolerance must be positive");
    auto [lo, hi] = gershgorin(mat);
    const double scale = std::max(std::abs(lo), std::abs(hi));
    const double floor = 4.0 * DBL_EPSILON * std::max(scale, DBL_MIN);
    // Widen so that lo and hi strictly bracket the spectrum.
    lo -= floor;
    hi += floor;
    for (int step = 0; step < kMaxBisectionSteps; ++step) {
        if (hi - lo <= std::max(tol * std::max(std::abs(lo), std::abs(hi)), floor)) return 0.5 * (lo + hi);
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) return mid;
        if (count_eigenvalues_below(mat, mid) > k) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    throw NumericalError("eigenvalue bisection did not converge within " + std::to_string(kMaxBisectionSteps) +
                         " steps");
}

double max_eigenvalue(const TridiagonalMatrix& mat, double tol) {
    require_symmetric(mat);
    return eigenvalue(mat, mat.size() - 1, tol);
}

}  // namespace fractal_fdm
