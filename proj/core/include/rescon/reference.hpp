#pragma once

#include "rescon/graph.hpp"

#include <optional>
#include <span>
#include <vector>

namespace rescon {

/// Gain and sign-power exponent of the finite-time reference protocol
/// s_i' = -k |w_i|^alpha sign(w_i), w_i = sum_{j in N_i} (s_i - s_j).
struct ReferenceParams {
    double k = 1.0;
    double alpha = 0.5;

    void validate() const;

    bool operator==(const ReferenceParams&) const = default;
};

/// Local reference errors w = L s.
Vector local_errors(const Digraph& g, std::span<const double> s);

/// |w_i| below this is treated as zero; keeps fixed-step integration from
/// chattering around the consensus manifold.
inline constexpr double kChatterGuard = 1e-12;

Vector reference_rate(std::span<const double> s, const Digraph& g, const ReferenceParams& p);

/// W = sum_i h_i |w_i|^{1+alpha} / (1+alpha).
double lyapunov_w(std::span<const double> s, std::span<const double> h, double alpha, const Digraph& g);

/// Decay constant of W^{1/(1+alpha)}:
///   Q = k lambda2 / (2 N) * ((1+alpha) / hbar)^{2 alpha / (1+alpha)}.
double decay_constant(const ReferenceParams& p, const SpectralData& spectral, std::size_t n);

/// Upper bound on the consensus time from W(0):
///   T0 = W0^{1/(1+alpha)} (1+alpha) / (Q (1-alpha)).
double settling_bound_t0(double w0, const ReferenceParams& p, const SpectralData& spectral, std::size_t n);

/// First sample time after which max_{i,j} |s_i - s_j| <= tolerance for every
/// remaining sample, or nullopt if the last sample is still outside.
std::optional<double> detect_consensus_time(std::span<const double> times,
                                            std::span<const Vector> states, double tolerance);

}  // namespace rescon
