#include "rescon/graph.hpp"

#include "rescon/error.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace rescon {

Digraph::Digraph(std::size_t n) : n_(n), adjacency_(n, n), neighbors_(n) {}

Digraph Digraph::from_edges(std::size_t n, std::span<const Edge> edges) {
    Digraph g(n);
    for (const Edge& e : edges) g.add_edge(e.from, e.to);
    return g;
}

Digraph Digraph::from_adjacency(const Matrix& adjacency) {
    if (adjacency.rows() != adjacency.cols())
        throw std::invalid_argument("adjacency matrix must be square");
    Digraph g(adjacency.rows());
    for (std::size_t i = 0; i < g.n_; ++i) {
        for (std::size_t j = 0; j < g.n_; ++j) {
            const double w = adjacency(i, j);
            if (w != 0.0 && w != 1.0)
                throw std::invalid_argument("adjacency weights must be 0 or 1");
            if (i == j && w != 0.0) throw std::invalid_argument("adjacency diagonal must be zero");
            if (w == 1.0) g.add_edge(j, i);
        }
    }
    return g;
}

void Digraph::add_edge(std::size_t from, std::size_t to) {
    if (from >= n_ || to >= n_) throw std::out_of_range("edge endpoint out of range");
    if (from == to) throw std::invalid_argument("self loops are not allowed");
    if (adjacency_(to, from) == 1.0) return;
    adjacency_(to, from) = 1.0;
    auto& nb = neighbors_[to];
    nb.insert(std::upper_bound(nb.begin(), nb.end(), from), from);
}

std::vector<Edge> Digraph::edges() const {
    std::vector<Edge> out;
    for (std::size_t to = 0; to < n_; ++to)
        for (std::size_t from : neighbors_[to]) out.push_back({from, to});
    std::sort(out.begin(), out.end(), [](const Edge& a, const Edge& b) {
        return a.from != b.from ? a.from < b.from : a.to < b.to;
    });
    return out;
}

Matrix build_laplacian(const Digraph& g) {
    const std::size_t n = g.size();
    Matrix lap(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        double degree = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double a = g.adjacency()(i, j);
            lap(i, j) = -a;
            degree += a;
        }
        lap(i, i) = degree;
    }
    return lap;
}

namespace {

// Nodes reachable from node 0 following edges forward (transpose=false) or
// backward (transpose=true).
std::vector<bool> reachable_from_first(const Digraph& g, bool transpose) {
    const std::size_t n = g.size();
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
        const std::size_t v = stack.back();
        stack.pop_back();
        for (std::size_t w = 0; w < n; ++w) {
            const bool edge = transpose ? g.has_edge(w, v) : g.has_edge(v, w);
            if (edge && !seen[w]) {
                seen[w] = true;
                stack.push_back(w);
            }
        }
    }
    return seen;
}

}  // namespace

bool is_strongly_connected(const Digraph& g) {
    if (g.size() == 0) return false;
    const auto fwd = reachable_from_first(g, false);
    const auto bwd = reachable_from_first(g, true);
    return std::all_of(fwd.begin(), fwd.end(), [](bool b) { return b; }) &&
           std::all_of(bwd.begin(), bwd.end(), [](bool b) { return b; });
}

Vector left_eigenvector(const Matrix& laplacian) {
    const std::size_t n = laplacian.rows();
    if (n == 0 || laplacian.cols() != n) throw std::invalid_argument("laplacian must be square and nonempty");

    // L^T h = 0 stacked with 1^T h = 1.
    Matrix system(n + 1, n);
    Vector rhs(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) system(i, j) = laplacian(j, i);
    for (std::size_t j = 0; j < n; ++j) system(n, j) = 1.0;
    rhs[n] = 1.0;

    const LinearSolution sol = solve_least_rows(system, rhs);
    if (sol.rank < n || !sol.consistent)
        throw NotStronglyConnected("left null space of the Laplacian has dimension " +
                                   std::to_string(n + 1 - sol.rank) + ", expected 1");
    for (double hi : sol.x)
        if (!(hi > 0.0)) throw NotStronglyConnected("left null vector has a nonpositive entry");
    return sol.x;
}

SpectralData build_spectral_data(const Matrix& laplacian, std::span<const double> h) {
    const std::size_t n = laplacian.rows();
    if (h.size() != n) throw std::invalid_argument("h length does not match the Laplacian");

    SpectralData out;
    out.h.assign(h.begin(), h.end());
    out.hbar = *std::max_element(h.begin(), h.end());

    // Q_ij = h_i L_ij + L_ji h_j, written symmetrically so Q == Q^T exactly.
    out.q = Matrix(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const double v = h[i] * laplacian(i, j) + laplacian(j, i) * h[j];
            out.q(i, j) = v;
            out.q(j, i) = v;
        }

    out.eigenvalues = jacobi_eigen(out.q).values;
    out.lambda2 = n >= 2 ? out.eigenvalues[1] : 0.0;
    if (!(out.lambda2 > 1e-10))
        throw DegenerateSpectrum("second smallest eigenvalue of H L + L^T H is " +
                                 std::to_string(out.lambda2) + "; graph is not strongly connected");
    return out;
}

SpectralData analyze(const Digraph& g) {
    const Matrix lap = build_laplacian(g);
    const Vector h = left_eigenvector(lap);
    return build_spectral_data(lap, h);
}

}  // namespace rescon
