#include "rescon/linalg.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace rescon {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

double Matrix::frobenius_norm() const {
    double sum = 0.0;
    for (double v : data_) sum += v * v;
    return std::sqrt(sum);
}

bool Matrix::is_symmetric() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix product: shape mismatch");
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("matrix sum: shape mismatch");
    Matrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
    return c;
}

Vector operator*(const Matrix& a, std::span<const double> x) {
    if (a.cols() != x.size()) throw std::invalid_argument("matrix-vector product: shape mismatch");
    Vector y(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) y[i] = dot(a.row(i), x);
    return y;
}

double dot(std::span<const double> a, std::span<const double> b) {
    assert(a.size() == b.size());
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

LinearSolution solve_least_rows(Matrix a, Vector b, double pivot_tol) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    if (b.size() != m) throw std::invalid_argument("solve: rhs size mismatch");

    const double scale = std::max(1.0, a.frobenius_norm());
    std::vector<std::size_t> pivot_cols;
    std::size_t r = 0;
    for (std::size_t col = 0; col < n && r < m; ++col) {
        std::size_t best = r;
        for (std::size_t i = r + 1; i < m; ++i)
            if (std::abs(a(i, col)) > std::abs(a(best, col))) best = i;
        if (std::abs(a(best, col)) <= pivot_tol * scale) continue;

        if (best != r) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(r, j), a(best, j));
            std::swap(b[r], b[best]);
        }
        for (std::size_t i = r + 1; i < m; ++i) {
            const double factor = a(i, col) / a(r, col);
            if (factor == 0.0) continue;
            for (std::size_t j = col; j < n; ++j) a(i, j) -= factor * a(r, j);
            b[i] -= factor * b[r];
        }
        pivot_cols.push_back(col);
        ++r;
    }

    LinearSolution out;
    out.rank = r;
    for (std::size_t i = r; i < m; ++i)
        if (std::abs(b[i]) > pivot_tol * std::max(1.0, scale)) out.consistent = false;

    // Back substitution; free variables are set to zero.
    out.x.assign(n, 0.0);
    for (std::size_t k = r; k-- > 0;) {
        const std::size_t col = pivot_cols[k];
        double acc = b[k];
        for (std::size_t j = col + 1; j < n; ++j) acc -= a(k, j) * out.x[j];
        out.x[col] = acc / a(k, col);
    }
    return out;
}

namespace {

double off_diagonal_norm(const Matrix& m) {
    double sum = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (i != j) sum += m(i, j) * m(i, j);
    return std::sqrt(sum);
}

}  // namespace

SymmetricEigen jacobi_eigen(const Matrix& sym, double off_tol, int max_sweeps) {
    if (sym.rows() != sym.cols()) throw std::invalid_argument("jacobi_eigen: matrix not square");
    const std::size_t n = sym.rows();
    Matrix a = sym;
    Matrix v = Matrix::identity(n);

    int sweep = 0;
    for (; sweep < max_sweeps && off_diagonal_norm(a) > off_tol; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                // Rotation angle zeroing a(p,q), in the stable tangent form.
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });

    SymmetricEigen out;
    out.sweeps = sweep;
    out.values.resize(n);
    out.vectors = Matrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]);
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

}  // namespace rescon
