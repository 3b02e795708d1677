#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace rescon {

using Vector = std::vector<double>;

/// Dense row-major matrix for the small (n <= ~32) systems used here.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    Matrix transposed() const;
    double frobenius_norm() const;
    bool is_symmetric() const;

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, std::span<const double> x);

double dot(std::span<const double> a, std::span<const double> b);

/// Result of Gaussian elimination with partial pivoting on a (possibly
/// overdetermined) system. `rank` is the numerical rank of the coefficient
/// matrix; `consistent` is false when a zero row keeps a nonzero right side.
struct LinearSolution {
    Vector x;
    std::size_t rank = 0;
    bool consistent = true;
};

LinearSolution solve_least_rows(Matrix a, Vector b, double pivot_tol = 1e-12);

struct SymmetricEigen {
    Vector values;   // ascending
    Matrix vectors;  // column k pairs with values[k]
    int sweeps = 0;
};

/// Cyclic Jacobi rotations; stops when the off-diagonal Frobenius norm drops
/// below `off_tol`.
SymmetricEigen jacobi_eigen(const Matrix& sym, double off_tol = 1e-12, int max_sweeps = 100);

}  // namespace rescon
