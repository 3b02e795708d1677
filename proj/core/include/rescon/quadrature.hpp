#pragma once

#include <functional>

namespace rescon {

struct QuadratureResult {
    double value = 0.0;
    bool finite = true;       // false if the integrand produced a non-finite sample
    bool converged = true;    // false if some panel hit the depth limit
    int evaluations = 0;
};

/// Adaptive Simpson with Richardson correction. `abs_tol` is the total
/// absolute error budget over [a, b].
QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                  double abs_tol, int max_depth = 50);

}  // namespace rescon
