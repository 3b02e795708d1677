#pragma once

#include <functional>
#include <string>
#include <vector>

namespace rescon {

enum class TrigKind { sine, cosine };

/// N(nu) = exp(f(nu)) * trig(omega * nu) with f(nu) = a * (nu^2 + b)^c.
///
/// With a > 0, b >= 0 and c in (0.5, 1], f is even, f and f' are strictly
/// increasing on nu > 0 and both grow without bound, which is what makes the
/// function usable for several simultaneously unknown control directions.
/// c = 1, b = 0 gives the classic exp(a nu^2) form.
struct NussbaumSpec {
    double a = 1.0;
    double b = 0.0;
    double c = 1.0;
    double omega = 1.0;
    TrigKind variant = TrigKind::sine;

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;

    bool operator==(const NussbaumSpec&) const = default;
};

double exponent(const NussbaumSpec& spec, double nu);
double exponent_derivative(const NussbaumSpec& spec, double nu);

/// Throws OverflowError when f(nu) exceeds log(DBL_MAX).
double eval(const NussbaumSpec& spec, double nu);
double eval_derivative(const NussbaumSpec& spec, double nu);

double period(const NussbaumSpec& spec);

// Sign-constant windows ("lobes") of trig(omega nu) on nu >= 0. Lobe 1 is the
// first positive lobe starting at 0; odd lobes are positive, even negative.
// Sine lobes are half periods; cosine starts with a quarter period.
struct Lobe {
    double lo = 0.0;
    double hi = 0.0;
    int sign = 1;
};

Lobe lobe(double omega, TrigKind layout, int index);

/// Integral of N over lobe `index` (>= 1). Throws OverflowError when the
/// value is not representable as a double.
double half_period_integral(const NussbaumSpec& spec, int index);

/// ln|integral| and sign of a lobe integral, computed on the integrand scaled
/// by exp(-f(hi)) so that lobes far beyond double range remain computable.
struct LogMagnitude {
    double log_abs = 0.0;
    int sign = 1;
};

LogMagnitude lobe_integral_log(const NussbaumSpec& spec, int index);

/// An arbitrary evaluable candidate, with the lobe layout it oscillates on.
struct RawFunction {
    std::function<double(double)> fn;
    double omega = 1.0;
    TrigKind layout = TrigKind::sine;
    std::string label;
};

/// One row per lobe pair i: P_i is lobe 2i-1, N_i lobe 2i.
///   sp = int_0^{w_pos} max(N,0),   sn = int_0^{w_neg} min(N,0)
///   ratio1 = (w_pos - int_0^{w_pos} min(N,0)) / sp
///   ratio2 = (w_neg + sp) / (-sn)
/// Sums are kept as logarithms since they leave double range quickly.
/// lobe_ratio = -Z^n_{i-1} / Z^p_i with its bound exp(-T/2 f'(start of N_{i-1}));
/// both are NaN for i = 1 and for raw functions (bound only).
struct RatioRow {
    int index = 0;
    double w_pos = 0.0;
    double w_neg = 0.0;
    double log_sp = 0.0;
    double log_neg_sn = 0.0;
    double ratio1 = 0.0;
    double ratio2 = 0.0;
    double log_ratio1 = 0.0;
    double log_ratio2 = 0.0;
    double log_lobe_ratio = 0.0;
    double log_lobe_bound = 0.0;
};

enum class Verdict { pass, fail };

struct RatioReport {
    std::vector<RatioRow> rows;
    Verdict verdict = Verdict::fail;
    bool truncated = false;
    std::string note;

    /// The lobe domination inequality at every row where it is defined.
    bool domination_holds(double log_slack = 1e-9) const;
};

/// Finite-index heuristic for the N-Function property: PASS when both ratio
/// sequences are non-increasing over the last five rows and both final ratios
/// are below 0.05. A liminf cannot be decided by finite computation; this is a
/// numerical certificate, not a proof.
///
/// For raw functions an overflowing integrand truncates the report with
/// `truncated` set; fewer than three complete rows throws OverflowError.
RatioReport certify_nfunction(const NussbaumSpec& spec, int max_index);
RatioReport certify_nfunction(const RawFunction& candidate, int max_index);

inline constexpr double kCertifyRatioThreshold = 0.05;
inline constexpr int kCertifyWindow = 5;

}  // namespace rescon
