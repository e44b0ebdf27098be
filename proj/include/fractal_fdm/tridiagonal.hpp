#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fractal_fdm {

inline constexpr double kDefaultEigenTolerance = 1e-10;

/// Three-diagonal n x n operator. Only the three diagonals are stored.
class TridiagonalMatrix {
public:
    TridiagonalMatrix() = default;

    /// sub and sup must have length diag.size() - 1 (both empty when n <= 1).
    TridiagonalMatrix(std::vector<double> sub, std::vector<double> diag, std::vector<double> sup);

    static TridiagonalMatrix identity(std::size_t n);

    std::size_t size() const noexcept { return diag_.size(); }
    std::span<const double> sub() const noexcept { return sub_; }
    std::span<const double> diag() const noexcept { return diag_; }
    std::span<const double> sup() const noexcept { return sup_; }

    /// Entry (i, j); zero outside the band.
    double at(std::size_t i, std::size_t j) const;

    bool is_symmetric() const noexcept { return sub_ == sup_; }

    /// Row-major dense copy, for debugging and small-n oracles.
    std::vector<double> to_dense() const;

    friend bool operator==(const TridiagonalMatrix&, const TridiagonalMatrix&) = default;

    friend TridiagonalMatrix operator*(double s, const TridiagonalMatrix& a);
    friend TridiagonalMatrix operator+(const TridiagonalMatrix& a, const TridiagonalMatrix& b);
    friend TridiagonalMatrix operator-(const TridiagonalMatrix& a, const TridiagonalMatrix& b);

private:
    std::vector<double> sub_;
    std::vector<double> diag_;
    std::vector<double> sup_;
};

/// out = mat * v. `out` must not alias `v`.
void apply_into(const TridiagonalMatrix& mat, std::span<const double> v, std::span<double> out);

std::vector<double> multiply(const TridiagonalMatrix& mat, std::span<const double> v);

/// Direct solve by forward elimination and back substitution (no pivoting).
/// Throws NumericalError on a zero pivot.
std::vector<double> solve(const TridiagonalMatrix& mat, std::span<const double> rhs);

/// Number of eigenvalues strictly below x (Sturm sequence count). Symmetric input only.
std::size_t count_eigenvalues_below(const TridiagonalMatrix& mat, double x);

/// k-th smallest eigenvalue (0-based) by Sturm bisection, to relative tolerance tol.
double eigenvalue(const TridiagonalMatrix& mat, std::size_t k, double tol = kDefaultEigenTolerance);

/// Largest eigenvalue of a symmetric tridiagonal matrix.
double max_eigenvalue(const TridiagonalMatrix& mat, double tol = kDefaultEigenTolerance);

}  // namespace fractal_fdm
