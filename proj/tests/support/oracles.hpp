#pragma once

// Independent reference computations used by the unit and acceptance tests.
// None of these share code with the library implementations they check.

#include "rescon/graph.hpp"
#include "rescon/linalg.hpp"

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace oracle {

// Householder reduction of a symmetric matrix to tridiagonal form
// (diagonal d, subdiagonal e); similarity preserves the spectrum.
struct Tridiagonal {
    std::vector<double> d;
    std::vector<double> e;
};

inline Tridiagonal tridiagonalize(const rescon::Matrix& a) {
    const std::size_t n = a.rows();
    std::vector<std::vector<double>> m(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m[i][j] = 0.5 * (a(i, j) + a(j, i));
    for (std::size_t k = 0; k + 2 < n; ++k) {
        double norm = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) norm += m[i][k] * m[i][k];
        norm = std::sqrt(norm);
        if (norm == 0.0) continue;
        const double alpha = m[k + 1][k] > 0.0 ? -norm : norm;
        std::vector<double> v(n, 0.0);
        for (std::size_t i = k + 1; i < n; ++i) v[i] = m[i][k];
        v[k + 1] -= alpha;
        double vv = 0.0;
        for (double x : v) vv += x * x;
        if (vv == 0.0) continue;
        // m <- H m H with H = I - 2 v v^T / (v^T v)
        std::vector<double> p(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) p[i] += m[i][j] * v[j];
        double vp = 0.0;
        for (std::size_t i = 0; i < n; ++i) vp += v[i] * p[i];
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                m[i][j] += -2.0 * (v[i] * p[j] + p[i] * v[j]) / vv + 4.0 * vp * v[i] * v[j] / (vv * vv);
    }
    Tridiagonal t;
    for (std::size_t i = 0; i < n; ++i) t.d.push_back(m[i][i]);
    for (std::size_t i = 0; i + 1 < n; ++i) t.e.push_back(m[i + 1][i]);
    return t;
}

// Number of eigenvalues strictly below x: Sturm count on the tridiagonal form
// with a minimum pivot guard.
inline int count_below(const Tridiagonal& t, double x) {
    double emax = 1.0;
    for (double v : t.e) emax = std::max(emax, v * v);
    const double pivmin = 1e-290 * emax;
    int negative = 0;
    double q = 0.0;
    for (std::size_t i = 0; i < t.d.size(); ++i) {
        q = t.d[i] - x - (i == 0 ? 0.0 : t.e[i - 1] * t.e[i - 1] / q);
        if (std::abs(q) < pivmin) q = -pivmin;
        if (q < 0.0) ++negative;
    }
    return negative;
}

inline int count_below(const rescon::Matrix& a, double x) { return count_below(tridiagonalize(a), x); }

// Eigenvalue number `index` (0-based, ascending) by bisection on the count.
inline double eigenvalue_by_bisection(const rescon::Matrix& a, int index, double tol = 1e-12) {
    double radius = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double r = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) r += std::abs(a(i, j));
        radius = std::max(radius, r);
    }
    const Tridiagonal t = tridiagonalize(a);
    double lo = -radius - 1.0;
    double hi = radius + 1.0;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (count_below(t, mid) > index) hi = mid;
        else lo = mid;
    }
    return 0.5 * (lo + hi);
}

inline double central_difference(const std::function<double(double)>& f, double x, double h = 1e-6) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

// Every digraph on n nodes (n <= 4), as lists of (from, to) pairs.
inline std::vector<std::vector<rescon::Edge>> all_digraphs(std::size_t n) {
    std::vector<rescon::Edge> slots;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) slots.push_back({i, j});
    std::vector<std::vector<rescon::Edge>> out;
    for (unsigned long mask = 0; mask < (1UL << slots.size()); ++mask) {
        std::vector<rescon::Edge> e;
        for (std::size_t k = 0; k < slots.size(); ++k)
            if (mask & (1UL << k)) e.push_back(slots[k]);
        out.push_back(std::move(e));
    }
    return out;
}

// Reachability closure by repeated squaring of the boolean adjacency.
inline bool strongly_connected_by_closure(std::size_t n, const std::vector<rescon::Edge>& edges) {
    std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) r[i][i] = true;
    for (const auto& e : edges) r[e.from][e.to] = true;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (r[i][k] && r[k][j]) r[i][j] = true;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!r[i][j]) return false;
    return true;
}

inline bool close_rel(double a, double b, double rel, double abs_floor = 0.0) {
    return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b)) + abs_floor;
}

}  // namespace oracle
