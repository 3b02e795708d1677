#include "rescon/reference.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rescon {

void ReferenceParams::validate() const {
    if (!(k > 0.0)) throw std::invalid_argument("reference.k must be > 0");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("reference.alpha must lie in (0, 1)");
}

Vector local_errors(const Digraph& g, std::span<const double> s) {
    const std::size_t n = g.size();
    if (s.size() != n) throw std::invalid_argument("reference state length does not match the graph");
    Vector w(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j : g.neighbors(i)) w[i] += s[i] - s[j];
    return w;
}

Vector reference_rate(std::span<const double> s, const Digraph& g, const ReferenceParams& p) {
    Vector rate = local_errors(g, s);
    for (double& w : rate) {
        const double mag = std::abs(w);
        w = mag < kChatterGuard ? 0.0 : -p.k * std::pow(mag, p.alpha) * (w > 0.0 ? 1.0 : -1.0);
    }
    return rate;
}

double lyapunov_w(std::span<const double> s, std::span<const double> h, double alpha, const Digraph& g) {
    const Vector w = local_errors(g, s);
    if (h.size() != w.size()) throw std::invalid_argument("h length does not match the graph");
    double sum = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) sum += h[i] * std::pow(std::abs(w[i]), 1.0 + alpha);
    return sum / (1.0 + alpha);
}

double decay_constant(const ReferenceParams& p, const SpectralData& spectral, std::size_t n) {
    const double expo = 2.0 * p.alpha / (1.0 + p.alpha);
    return 0.5 * p.k * spectral.lambda2 / static_cast<double>(n) *
           std::pow((1.0 + p.alpha) / spectral.hbar, expo);
}

double settling_bound_t0(double w0, const ReferenceParams& p, const SpectralData& spectral, std::size_t n) {
    if (w0 < 0.0) throw std::invalid_argument("W0 must be nonnegative");
    if (w0 == 0.0) return 0.0;
    const double q = decay_constant(p, spectral, n);
    return std::pow(w0, 1.0 / (1.0 + p.alpha)) * (1.0 + p.alpha) / (q * (1.0 - p.alpha));
}

std::optional<double> detect_consensus_time(std::span<const double> times,
                                            std::span<const Vector> states, double tolerance) {
    if (times.size() != states.size()) throw std::invalid_argument("times and states differ in length");
    std::optional<double> entry;
    for (std::size_t k = 0; k < times.size(); ++k) {
        const auto [lo, hi] = std::minmax_element(states[k].begin(), states[k].end());
        const double spread = states[k].empty() ? 0.0 : *hi - *lo;
        if (spread <= tolerance) {
            if (!entry) entry = times[k];
        } else {
            entry.reset();
        }
    }
    return entry;
}

}  // namespace rescon
