#include "rescon/plant.hpp"

#include "rescon/error.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rescon {

ScalarSignal ScalarSignal::constant(double value) {
    ScalarSignal s;
    s.offset = value;
    return s;
}

ScalarSignal ScalarSignal::sine(double offset, double amplitude, double frequency, double phase) {
    return {SignalKind::sinusoid, offset, amplitude, frequency, phase, false};
}

ScalarSignal ScalarSignal::cosine(double offset, double amplitude, double frequency, double phase) {
    return {SignalKind::sinusoid, offset, amplitude, frequency, phase, true};
}

double ScalarSignal::value(double t) const {
    if (kind == SignalKind::constant) return offset;
    const double x = frequency * t + phase;
    return offset + amplitude * (uses_cos ? std::cos(x) : std::sin(x));
}

double ScalarSignal::derivative(double t) const {
    if (kind == SignalKind::constant) return 0.0;
    const double x = frequency * t + phase;
    return amplitude * frequency * (uses_cos ? -std::sin(x) : std::cos(x));
}

double Regressor::value(double x1, double x2) const {
    const double x = var == StateVar::x1 ? x1 : x2;
    switch (kind) {
        case RegressorKind::linear: return x;
        case RegressorKind::x_sin_x: return x * std::sin(x);
        case RegressorKind::x_cos_x: return x * std::cos(x);
        case RegressorKind::x_tanh_x: return x * std::tanh(x);
        case RegressorKind::product: return x1 * x2;
    }
    return 0.0;
}

namespace {

double d_self(RegressorKind kind, double x) {
    switch (kind) {
        case RegressorKind::linear: return 1.0;
        case RegressorKind::x_sin_x: return std::sin(x) + x * std::cos(x);
        case RegressorKind::x_cos_x: return std::cos(x) - x * std::sin(x);
        case RegressorKind::x_tanh_x: {
            const double th = std::tanh(x);
            return th + x * (1.0 - th * th);
        }
        case RegressorKind::product: break;
    }
    return 0.0;
}

}  // namespace

double Regressor::d_dx1(double x1, double x2) const {
    if (kind == RegressorKind::product) return x2;
    return var == StateVar::x1 ? d_self(kind, x1) : 0.0;
}

double Regressor::d_dx2(double x1, double x2) const {
    if (kind == RegressorKind::product) return x1;
    return var == StateVar::x2 ? d_self(kind, x2) : 0.0;
}

double BoundingFunction::value(std::span<const double> v) const {
    double sq = 0.0;
    for (double x : v) sq += x * x;
    return std::sqrt(offset + weight * sq);
}

double BoundingFunction::derivative(double v) const { return weight * v / value(v); }

AttackProfile AttackProfile::identity(std::size_t n) {
    AttackProfile a;
    a.rho_s.assign(n, ScalarSignal::constant(1.0));
    a.rho_a.assign(n, ScalarSignal::constant(1.0));
    return a;
}

PlantRate plant_rate(const AgentModel& m, double x1, double x2, double u_applied, double t) {
    double drift1 = 0.0;
    for (std::size_t k = 0; k < m.psi1.size(); ++k) drift1 += m.psi1[k].value(x1, x2) * m.theta1[k];
    double drift2 = 0.0;
    for (std::size_t k = 0; k < m.psi2.size(); ++k) drift2 += m.psi2[k].value(x1, x2) * m.theta2[k];

    PlantRate r;
    r.dx1 = drift1 + m.g1.value(t) * x2 + m.o1.value(t);
    r.dx2 = drift2 + m.g2.value(t) * u_applied + m.o2.value(t);
    if (!std::isfinite(r.dx1) || !std::isfinite(r.dx2))
        throw NonFiniteState(kUnknownAgent, t, "plant rate is not finite at t = " + std::to_string(t));
    return r;
}

SensorReading corrupt_sensors(const AttackProfile& a, std::size_t agent, double y, double x2, double t) {
    return {a.rho_o.value(t) * y, a.rho_s.at(agent).value(t) * x2};
}

double corrupt_actuator(const AttackProfile& a, std::size_t agent, double u, double t) {
    return a.rho_a.at(agent).value(t) * u;
}

Corrupted corrupt(const AttackProfile& a, std::size_t agent, double y, double x2, double u, double t) {
    const SensorReading s = corrupt_sensors(a, agent, y, x2, t);
    return {s.y_check, s.x2_check, corrupt_actuator(a, agent, u, t)};
}

const SignalMargin* AssumptionReport::find(const std::string& signal) const {
    for (const auto& m : margins)
        if (m.signal == signal) return &m;
    return nullptr;
}

void AssumptionReport::throw_if_failed() const {
    if (failures.empty()) return;
    const auto& f = failures.front();
    throw AssumptionViolation(f.signal, f.time, f.signal + ": " + f.message);
}

namespace {

constexpr double kBoundSlack = 1e-12;

class Sampler {
public:
    Sampler(double horizon, double step) {
        if (!(horizon > 0.0)) throw std::invalid_argument("assumption horizon must be > 0");
        if (!(step > 0.0)) throw std::invalid_argument("assumption grid step must be > 0");
        const auto count = static_cast<std::size_t>(std::floor(horizon / step));
        for (std::size_t k = 0; k <= count; ++k) times.push_back(static_cast<double>(k) * step);
        if (times.back() < horizon) times.push_back(horizon);
    }

    std::vector<double> times;
};

void check_nonzero(const ScalarSignal& sig, const std::string& name, const Sampler& grid,
                   AssumptionReport& report) {
    SignalMargin m{name, INFINITY, 0.0, 0.0};
    double prev = 0.0;
    bool failed = false;
    for (std::size_t k = 0; k < grid.times.size(); ++k) {
        const double t = grid.times[k];
        const double v = sig.value(t);
        m.min_abs = std::min(m.min_abs, std::abs(v));
        m.max_abs = std::max(m.max_abs, std::abs(v));
        m.max_abs_rate = std::max(m.max_abs_rate, std::abs(sig.derivative(t)));
        if (!failed && (v == 0.0 || (k > 0 && (v > 0.0) != (prev > 0.0)))) {
            report.failures.push_back({name, t, "coefficient vanishes or changes sign"});
            failed = true;
        }
        prev = v;
    }
    report.margins.push_back(m);
}

void check_bounded(const ScalarSignal& sig, const std::string& name, double lower, double upper,
                   double max_rate, bool check_rate, const Sampler& grid, AssumptionReport& report) {
    SignalMargin m{name, INFINITY, 0.0, 0.0};
    bool bound_failed = false;
    bool rate_failed = false;
    double prev = 0.0;
    for (std::size_t k = 0; k < grid.times.size(); ++k) {
        const double t = grid.times[k];
        const double v = sig.value(t);
        const double mag = std::abs(v);
        const double rate = std::abs(sig.derivative(t));
        m.min_abs = std::min(m.min_abs, mag);
        m.max_abs = std::max(m.max_abs, mag);
        m.max_abs_rate = std::max(m.max_abs_rate, rate);
        const bool sign_flip = k > 0 && (v > 0.0) != (prev > 0.0);
        if (!bound_failed && (mag < lower - kBoundSlack || mag > upper + kBoundSlack || sign_flip)) {
            report.failures.push_back({name, t, "magnitude " + std::to_string(mag) + " outside declared [" +
                                                    std::to_string(lower) + ", " + std::to_string(upper) + "]"});
            bound_failed = true;
        }
        if (check_rate && !rate_failed && rate > max_rate + kBoundSlack) {
            report.failures.push_back({name, t, "rate " + std::to_string(rate) + " exceeds declared " +
                                                    std::to_string(max_rate)});
            rate_failed = true;
        }
        prev = v;
    }
    report.margins.push_back(m);
}

void check_disturbance(const ScalarSignal& sig, const std::string& name, const Sampler& grid,
                       AssumptionReport& report) {
    SignalMargin m{name, INFINITY, 0.0, 0.0};
    for (double t : grid.times) {
        const double v = sig.value(t);
        if (!std::isfinite(v)) {
            report.failures.push_back({name, t, "disturbance is not finite"});
            break;
        }
        m.min_abs = std::min(m.min_abs, std::abs(v));
        m.max_abs = std::max(m.max_abs, std::abs(v));
        m.max_abs_rate = std::max(m.max_abs_rate, std::abs(sig.derivative(t)));
    }
    report.margins.push_back(m);
}

}  // namespace

AssumptionReport validate_assumptions(std::span<const AgentModel> agents, const AttackProfile& attack,
                                      double horizon, double grid_step) {
    const Sampler grid(horizon, grid_step);
    AssumptionReport report;
    const AttackBounds& b = attack.bounds;

    for (std::size_t i = 0; i < agents.size(); ++i) {
        const std::string base = "/agents/" + std::to_string(i) + "/";
        check_nonzero(agents[i].g1, base + "g1", grid, report);
        check_nonzero(agents[i].g2, base + "g2", grid, report);
        check_disturbance(agents[i].o1, base + "o1", grid, report);
        check_disturbance(agents[i].o2, base + "o2", grid, report);
    }

    check_bounded(attack.rho_o, "/attack/rho_o", b.o_lower, b.o_upper, b.rate, true, grid, report);
    for (std::size_t i = 0; i < attack.rho_s.size(); ++i)
        check_bounded(attack.rho_s[i], "/attack/rho_s/" + std::to_string(i), b.s_lower, b.s_upper, b.rate,
                      true, grid, report);
    for (std::size_t i = 0; i < attack.rho_a.size(); ++i)
        check_bounded(attack.rho_a[i], "/attack/rho_a/" + std::to_string(i), b.a_lower, b.a_upper, 0.0,
                      false, grid, report);
    return report;
}

}  // namespace rescon
