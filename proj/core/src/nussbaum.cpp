#include "rescon/nussbaum.hpp"

#include "rescon/error.hpp"
#include "rescon/quadrature.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rescon {

namespace {

const double kMaxExponent = std::log(DBL_MAX);
constexpr double kQuadTol = 1e-10;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double trig(TrigKind kind, double x) { return kind == TrigKind::sine ? std::sin(x) : std::cos(x); }
double trig_prime(TrigKind kind, double x) { return kind == TrigKind::sine ? std::cos(x) : -std::sin(x); }

void check_exponent(double f, double nu) {
    if (!(f <= kMaxExponent))
        throw OverflowError("exp(f(nu)) overflows at nu = " + std::to_string(nu) +
                            " (f = " + std::to_string(f) + ")");
}

double log_add(double x, double y) {
    if (x == kNegInf) return y;
    if (y == kNegInf) return x;
    const double hi = std::max(x, y);
    return hi + std::log1p(std::exp(std::min(x, y) - hi));
}

// Shared tail of both certify overloads: turns lobe integrals into rows.
class RatioBuilder {
public:
    void add_pair(int i, const Lobe& pos, const Lobe& neg, const LogMagnitude& zp, const LogMagnitude& zn,
                  double log_bound) {
        RatioRow row;
        row.index = i;
        row.w_pos = pos.hi;
        row.w_neg = neg.hi;
        const double log_neg_sn_prev = log_neg_sn_;
        log_sp_ = log_add(log_sp_, zp.log_abs);
        log_neg_sn_ = log_add(log_neg_sn_, zn.log_abs);
        row.log_sp = log_sp_;
        row.log_neg_sn = log_neg_sn_;
        row.log_ratio1 = log_add(std::log(pos.hi), log_neg_sn_prev) - log_sp_;
        row.log_ratio2 = log_add(std::log(neg.hi), log_sp_) - log_neg_sn_;
        row.ratio1 = std::exp(row.log_ratio1);
        row.ratio2 = std::exp(row.log_ratio2);
        if (i >= 2) {
            row.log_lobe_ratio = prev_zn_log_ - zp.log_abs;
            row.log_lobe_bound = log_bound;
        } else {
            row.log_lobe_ratio = std::numeric_limits<double>::quiet_NaN();
            row.log_lobe_bound = std::numeric_limits<double>::quiet_NaN();
        }
        prev_zn_log_ = zn.log_abs;
        report.rows.push_back(row);
    }

    void classify() {
        auto& rows = report.rows;
        if (rows.size() < 3)
            throw OverflowError("ratio report truncated before index 3 (" + std::to_string(rows.size()) +
                                " complete rows)");
        const std::size_t window = std::min<std::size_t>(kCertifyWindow, rows.size());
        bool decreasing = true;
        for (std::size_t k = rows.size() - window + 1; k < rows.size(); ++k) {
            if (rows[k].log_ratio1 > rows[k - 1].log_ratio1) decreasing = false;
            if (rows[k].log_ratio2 > rows[k - 1].log_ratio2) decreasing = false;
        }
        const RatioRow& last = rows.back();
        const bool small = last.ratio1 < kCertifyRatioThreshold && last.ratio2 < kCertifyRatioThreshold;
        report.verdict = decreasing && small ? Verdict::pass : Verdict::fail;
        if (!decreasing) append_note("ratios not eventually decreasing");
        if (!small) append_note("final ratio not below threshold");
    }

    void append_note(const std::string& s) {
        if (!report.note.empty()) report.note += "; ";
        report.note += s;
    }

    RatioReport report;

private:
    double log_sp_ = kNegInf;
    double log_neg_sn_ = kNegInf;
    double prev_zn_log_ = kNegInf;
};

}  // namespace

void NussbaumSpec::validate() const {
    if (!(a > 0.0)) throw std::invalid_argument("nussbaum.a must be > 0");
    if (!(b >= 0.0)) throw std::invalid_argument("nussbaum.b must be >= 0");
    if (!(c > 0.5 && c <= 1.0)) throw std::invalid_argument("nussbaum.c must lie in (0.5, 1]");
    if (!(omega > 0.0)) throw std::invalid_argument("nussbaum.omega must be > 0");
}

double exponent(const NussbaumSpec& spec, double nu) {
    return spec.a * std::pow(nu * nu + spec.b, spec.c);
}

double exponent_derivative(const NussbaumSpec& spec, double nu) {
    if (nu == 0.0) return 0.0;
    return 2.0 * spec.a * spec.c * nu * std::pow(nu * nu + spec.b, spec.c - 1.0);
}

double eval(const NussbaumSpec& spec, double nu) {
    const double f = exponent(spec, nu);
    check_exponent(f, nu);
    return std::exp(f) * trig(spec.variant, spec.omega * nu);
}

double eval_derivative(const NussbaumSpec& spec, double nu) {
    const double f = exponent(spec, nu);
    check_exponent(f, nu);
    const double x = spec.omega * nu;
    return std::exp(f) * (exponent_derivative(spec, nu) * trig(spec.variant, x) +
                          spec.omega * trig_prime(spec.variant, x));
}

double period(const NussbaumSpec& spec) { return 2.0 * std::numbers::pi / spec.omega; }

Lobe lobe(double omega, TrigKind layout, int index) {
    if (index < 1) throw std::invalid_argument("lobe index must be >= 1");
    const double half = std::numbers::pi / omega;
    Lobe out;
    out.sign = index % 2 == 1 ? 1 : -1;
    if (layout == TrigKind::sine) {
        out.lo = (index - 1) * half;
        out.hi = index * half;
    } else if (index == 1) {
        out.lo = 0.0;
        out.hi = 0.5 * half;
    } else {
        out.lo = 0.5 * half + (index - 2) * half;
        out.hi = 0.5 * half + (index - 1) * half;
    }
    return out;
}

LogMagnitude lobe_integral_log(const NussbaumSpec& spec, int index) {
    const Lobe w = lobe(spec.omega, spec.variant, index);
    // f is increasing on nu >= 0, so f(hi) bounds the exponent on the lobe.
    const double f_hi = exponent(spec, w.hi);
    const auto scaled = [&](double nu) {
        return std::exp(exponent(spec, nu) - f_hi) * trig(spec.variant, spec.omega * nu);
    };
    const QuadratureResult q = adaptive_simpson(scaled, w.lo, w.hi, kQuadTol);
    LogMagnitude out;
    out.sign = q.value >= 0.0 ? 1 : -1;
    out.log_abs = f_hi + std::log(std::abs(q.value));
    return out;
}

double half_period_integral(const NussbaumSpec& spec, int index) {
    const LogMagnitude z = lobe_integral_log(spec, index);
    if (!(z.log_abs <= kMaxExponent))
        throw OverflowError("lobe " + std::to_string(index) + " integral exceeds double range");
    return z.sign * std::exp(z.log_abs);
}

bool RatioReport::domination_holds(double log_slack) const {
    for (const RatioRow& row : rows) {
        if (std::isnan(row.log_lobe_ratio) || std::isnan(row.log_lobe_bound)) continue;
        if (row.log_lobe_ratio > row.log_lobe_bound + log_slack) return false;
    }
    return true;
}

RatioReport certify_nfunction(const NussbaumSpec& spec, int max_index) {
    spec.validate();
    if (max_index < 3) throw std::invalid_argument("max_index must be >= 3");
    const double half_t = 0.5 * period(spec);

    RatioBuilder builder;
    for (int i = 1; i <= max_index; ++i) {
        const Lobe pos = lobe(spec.omega, spec.variant, 2 * i - 1);
        const Lobe neg = lobe(spec.omega, spec.variant, 2 * i);
        const LogMagnitude zp = lobe_integral_log(spec, 2 * i - 1);
        const LogMagnitude zn = lobe_integral_log(spec, 2 * i);
        double log_bound = std::numeric_limits<double>::quiet_NaN();
        if (i >= 2) {
            const Lobe prev_neg = lobe(spec.omega, spec.variant, 2 * i - 2);
            log_bound = -half_t * exponent_derivative(spec, prev_neg.lo);
        }
        builder.add_pair(i, pos, neg, zp, zn, log_bound);
    }
    builder.classify();
    return builder.report;
}

RatioReport certify_nfunction(const RawFunction& candidate, int max_index) {
    if (!candidate.fn) throw std::invalid_argument("raw candidate has no function");
    if (!(candidate.omega > 0.0)) throw std::invalid_argument("raw candidate omega must be > 0");
    if (max_index < 3) throw std::invalid_argument("max_index must be >= 3");

    const auto integrate_lobe = [&](const Lobe& w, bool& ok) {
        double peak = 0.0;
        constexpr int kSamples = 64;
        for (int k = 0; k <= kSamples; ++k) {
            const double y = candidate.fn(w.lo + (w.hi - w.lo) * k / kSamples);
            if (!std::isfinite(y)) {
                ok = false;
                return LogMagnitude{};
            }
            peak = std::max(peak, std::abs(y));
        }
        const QuadratureResult q = adaptive_simpson(candidate.fn, w.lo, w.hi, kQuadTol * std::max(peak, 1e-300));
        ok = q.finite && std::isfinite(q.value);
        return LogMagnitude{std::log(std::abs(q.value)), q.value >= 0.0 ? 1 : -1};
    };

    RatioBuilder builder;
    for (int i = 1; i <= max_index; ++i) {
        const Lobe pos = lobe(candidate.omega, candidate.layout, 2 * i - 1);
        const Lobe neg = lobe(candidate.omega, candidate.layout, 2 * i);
        bool ok_p = true;
        bool ok_n = true;
        const LogMagnitude zp = integrate_lobe(pos, ok_p);
        const LogMagnitude zn = ok_p ? integrate_lobe(neg, ok_n) : LogMagnitude{};
        if (!ok_p || !ok_n) {
            builder.report.truncated = true;
            builder.append_note("integrand overflowed in pair " + std::to_string(i));
            break;
        }
        if (zp.sign < 0 || zn.sign > 0) {
            builder.append_note("lobe signs do not follow the declared layout at pair " + std::to_string(i));
            builder.classify();
            builder.report.verdict = Verdict::fail;
            return builder.report;
        }
        builder.add_pair(i, pos, neg, zp, zn, std::numeric_limits<double>::quiet_NaN());
    }
    builder.classify();
    return builder.report;
}

}  // namespace rescon
