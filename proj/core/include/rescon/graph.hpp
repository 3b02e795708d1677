#pragma once

#include "rescon/linalg.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace rescon {

/// Directed edge: agent `to` receives signals from agent `from` (a_{to,from} = 1).
struct Edge {
    std::size_t from = 0;
    std::size_t to = 0;

    bool operator==(const Edge&) const = default;
};

/// Communication digraph with binary weights. Row i of the adjacency matrix
/// lists the agents that i listens to.
class Digraph {
public:
    Digraph() = default;
    explicit Digraph(std::size_t n);

    static Digraph from_edges(std::size_t n, std::span<const Edge> edges);
    /// Throws std::invalid_argument unless the matrix is square, 0/1-valued
    /// and has a zero diagonal.
    static Digraph from_adjacency(const Matrix& adjacency);

    void add_edge(std::size_t from, std::size_t to);

    std::size_t size() const noexcept { return n_; }
    const Matrix& adjacency() const noexcept { return adjacency_; }
    bool has_edge(std::size_t from, std::size_t to) const { return adjacency_(to, from) != 0.0; }
    const std::vector<std::size_t>& neighbors(std::size_t i) const { return neighbors_[i]; }
    std::vector<Edge> edges() const;

    bool operator==(const Digraph& other) const { return adjacency_ == other.adjacency_; }

private:
    std::size_t n_ = 0;
    Matrix adjacency_;
    std::vector<std::vector<std::size_t>> neighbors_;
};

/// In-degree matrix minus adjacency; rows sum to zero.
Matrix build_laplacian(const Digraph& g);

bool is_strongly_connected(const Digraph& g);

/// Positive left null vector of a strongly connected Laplacian, normalized
/// to sum one. Throws NotStronglyConnected otherwise.
Vector left_eigenvector(const Matrix& laplacian);

struct SpectralData {
    Vector h;
    Matrix q;             // H L + L^T H, symmetric by construction
    Vector eigenvalues;   // of q, ascending
    double lambda2 = 0.0;
    double hbar = 0.0;    // max_i h_i
};

/// Throws DegenerateSpectrum when lambda2 <= 1e-10.
SpectralData build_spectral_data(const Matrix& laplacian, std::span<const double> h);

/// Laplacian, left eigenvector and spectral data in one call.
SpectralData analyze(const Digraph& g);

}  // namespace rescon
