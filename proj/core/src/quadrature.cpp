#include "rescon/quadrature.hpp"

#include <cmath>

namespace rescon {

namespace {

// Lobes of oscillating integrands can fool a single Simpson comparison.
constexpr int kMinDepth = 3;
constexpr double kRoundingFloor = 64.0 * 2.220446049250313e-16;

struct Panel {
    double a, fa, m, fm, b, fb, whole;
};

class Simpson {
public:
    Simpson(const std::function<double(double)>& f, int max_depth) : f_(f), max_depth_(max_depth) {}

    double eval(double x) {
        const double y = f_(x);
        ++result.evaluations;
        if (!std::isfinite(y)) result.finite = false;
        return y;
    }

    double refine(const Panel& p, double tol, int depth) {
        const double lm = 0.5 * (p.a + p.m);
        const double rm = 0.5 * (p.m + p.b);
        const double flm = eval(lm);
        const double frm = eval(rm);
        const double left = (p.m - p.a) / 6.0 * (p.fa + 4.0 * flm + p.fm);
        const double right = (p.b - p.m) / 6.0 * (p.fm + 4.0 * frm + p.fb);
        const double delta = left + right - p.whole;
        if (!result.finite) return left + right;
        if (depth >= max_depth_) {
            result.converged = false;
            return left + right + delta / 15.0;
        }
        // Below rounding noise further halving cannot converge.
        const double noise = kRoundingFloor * (std::abs(left) + std::abs(right) + std::abs(p.fa) * (p.b - p.a));
        if (depth >= kMinDepth && std::abs(delta) <= std::max(15.0 * tol, noise)) return left + right + delta / 15.0;
        return refine({p.a, p.fa, lm, flm, p.m, p.fm, left}, 0.5 * tol, depth + 1) +
               refine({p.m, p.fm, rm, frm, p.b, p.fb, right}, 0.5 * tol, depth + 1);
    }

    QuadratureResult result;

private:
    const std::function<double(double)>& f_;
    int max_depth_;
};

}  // namespace

QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                  double abs_tol, int max_depth) {
    Simpson s(f, max_depth);
    if (a == b) return s.result;
    const double m = 0.5 * (a + b);
    const double fa = s.eval(a);
    const double fm = s.eval(m);
    const double fb = s.eval(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double value = s.refine({a, fa, m, fm, b, fb, whole}, abs_tol, 0);
    s.result.value = value;
    return s.result;
}

}  // namespace rescon
