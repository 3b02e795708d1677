#pragma once

#include "rescon/linalg.hpp"

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace rescon {

enum class SignalKind { constant, sinusoid };

/// offset + amplitude * {sin|cos}(frequency * t + phase); a constant signal
/// uses `offset` only.
struct ScalarSignal {
    SignalKind kind = SignalKind::constant;
    double offset = 0.0;
    double amplitude = 0.0;
    double frequency = 0.0;
    double phase = 0.0;
    bool uses_cos = false;

    static ScalarSignal constant(double value);
    static ScalarSignal sine(double offset, double amplitude, double frequency, double phase = 0.0);
    static ScalarSignal cosine(double offset, double amplitude, double frequency, double phase = 0.0);

    double value(double t) const;
    double derivative(double t) const;

    bool operator==(const ScalarSignal&) const = default;
};

enum class RegressorKind { linear, x_sin_x, x_cos_x, x_tanh_x, product };
enum class StateVar { x1, x2 };

/// One entry of the regressor catalog, evaluated on the true agent state.
/// `product` is x1 * x2 and ignores `var`.
struct Regressor {
    RegressorKind kind = RegressorKind::linear;
    StateVar var = StateVar::x1;

    double value(double x1, double x2) const;
    double d_dx1(double x1, double x2) const;
    double d_dx2(double x1, double x2) const;

    bool operator==(const Regressor&) const = default;
};

/// phi(v) = sqrt(offset + weight * |v|^2). Smooth, positive, and linear
/// growth dominates every catalog regressor.
struct BoundingFunction {
    double offset = 1.0;
    double weight = 1.0;

    double value(std::span<const double> v) const;
    double value(double v) const { return value(std::span<const double>(&v, 1)); }
    /// d phi / d v for the scalar case.
    double derivative(double v) const;

    bool operator==(const BoundingFunction&) const = default;
};

struct AgentModel {
    std::vector<Regressor> psi1;
    Vector theta1;
    std::vector<Regressor> psi2;
    Vector theta2;
    ScalarSignal g1 = ScalarSignal::constant(1.0);
    ScalarSignal g2 = ScalarSignal::constant(1.0);
    ScalarSignal o1;
    ScalarSignal o2;
    BoundingFunction phi1;
    BoundingFunction phi2;

    bool operator==(const AgentModel&) const = default;
};

/// Declared magnitude bounds of the attack weights and of the sensor-weight
/// rates.
struct AttackBounds {
    double o_lower = 1.0;
    double o_upper = 1.0;
    double s_lower = 1.0;
    double s_upper = 1.0;
    double a_lower = 1.0;
    double a_upper = 1.0;
    double rate = 0.0;

    bool operator==(const AttackBounds&) const = default;
};

/// rho_o is shared by all agents; rho_s and rho_a are per agent.
struct AttackProfile {
    ScalarSignal rho_o = ScalarSignal::constant(1.0);
    std::vector<ScalarSignal> rho_s;
    std::vector<ScalarSignal> rho_a;
    AttackBounds bounds;

    static AttackProfile identity(std::size_t n);

    /// Sensor attack intensity 1 / lower bound of |rho_o|.
    double intensity() const { return 1.0 / bounds.o_lower; }

    bool operator==(const AttackProfile&) const = default;
};

struct PlantRate {
    double dx1 = 0.0;
    double dx2 = 0.0;
};

inline constexpr std::size_t kUnknownAgent = std::numeric_limits<std::size_t>::max();

/// True dynamics driven by the post-attack input. Throws NonFiniteState.
PlantRate plant_rate(const AgentModel& m, double x1, double x2, double u_applied, double t);

/// What the local controller is allowed to see.
struct SensorReading {
    double y_check = 0.0;
    double x2_check = 0.0;
};

SensorReading corrupt_sensors(const AttackProfile& a, std::size_t agent, double y, double x2, double t);
double corrupt_actuator(const AttackProfile& a, std::size_t agent, double u, double t);

struct Corrupted {
    double y_check = 0.0;
    double x2_check = 0.0;
    double u_applied = 0.0;
};

Corrupted corrupt(const AttackProfile& a, std::size_t agent, double y, double x2, double u, double t);

struct SignalMargin {
    std::string signal;
    double min_abs = 0.0;
    double max_abs = 0.0;
    double max_abs_rate = 0.0;
};

struct AssumptionFailure {
    std::string signal;
    double time = 0.0;
    std::string message;
};

struct AssumptionReport {
    std::vector<SignalMargin> margins;
    std::vector<AssumptionFailure> failures;

    bool ok() const { return failures.empty(); }
    const SignalMargin* find(const std::string& signal) const;
    /// Throws AssumptionViolation for the first failure.
    void throw_if_failed() const;
};

/// Samples every coefficient, disturbance and attack weight on [0, horizon]:
/// control coefficients must keep one sign, attack magnitudes must stay in
/// the declared intervals, and sensor-weight rates below the declared rate.
AssumptionReport validate_assumptions(std::span<const AgentModel> agents, const AttackProfile& attack,
                                      double horizon, double grid_step);

}  // namespace rescon
