#pragma once

#include "rescon/scenario.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rescon {

/// Continuous state of one agent, laid out contiguously in the global vector.
struct AgentState {
    double x1 = 0.0;
    double x2 = 0.0;
    double s = 0.0;
    double L = 1.0;
    double F1 = 0.0;
    double F2 = 0.0;

    bool operator==(const AgentState&) const = default;
};

inline constexpr std::size_t kStatesPerAgent = 6;

struct GlobalState {
    double t = 0.0;
    std::vector<AgentState> agents;
};

Vector pack(std::span<const AgentState> agents);
std::vector<AgentState> unpack(std::span<const double> flat);

/// Derived per-agent signals at one instant.
struct AgentSignals {
    double y = 0.0;
    double y_check = 0.0;
    double x2_check = 0.0;
    double u = 0.0;
    double u_applied = 0.0;
    double e = 0.0;
    double z1 = 0.0;
    double z2 = 0.0;
    double v1 = 0.0;
    double phi2 = 0.0;
    double varpi = 0.0;
    double L_rate = 0.0;
    double F1_rate = 0.0;
    double F2_rate = 0.0;
};

struct TraceRecord {
    double t = 0.0;
    std::vector<AgentState> state;
    std::vector<AgentSignals> signals;
    double error_sum = 0.0;  // E = sum over all ordered pairs (y_i - y_j)^2
};

enum class Outcome { completed, blow_up, non_finite };

const char* to_string(Outcome o);

/// Largest magnitude reached by each signal family.
struct SignalPeaks {
    double y = 0.0;
    double x2 = 0.0;
    double s = 0.0;
    double u = 0.0;
    double L = 0.0;
    double F1 = 0.0;
    double F2 = 0.0;

    double max() const;
};

/// Checks made at every integration step, independent of the recording cadence.
struct StepMonitor {
    std::size_t steps = 0;
    double min_L_increment = 0.0;
    double min_F1_increment = 0.0;
    double min_F2_increment = 0.0;
    SignalPeaks peaks;
};

struct SimTrace {
    double dt = 0.0;
    std::size_t agents = 0;
    std::vector<TraceRecord> records;
    Outcome outcome = Outcome::completed;
    std::string diagnostic;
    double end_time = 0.0;
    StepMonitor monitor;

    std::vector<double> times() const;
};

double error_sum(std::span<const AgentSignals> signals);

/// Composes the attack channel, the local controllers, the plants and the
/// reference protocol into one ODE right-hand side over 6N states.
class ClosedLoop {
public:
    explicit ClosedLoop(Scenario scenario);

    const Scenario& scenario() const { return scenario_; }
    Vector initial_state() const;

    /// Writes d/dt of `state` into `rate`; when `signals` is non-null it
    /// receives the derived signals at this instant. Throws NonFiniteState or
    /// OverflowError.
    void rate(double t, std::span<const double> state, std::span<double> rate,
              std::vector<AgentSignals>* signals = nullptr) const;

    Vector rate(double t, std::span<const double> state) const;
    std::vector<AgentSignals> signals(double t, std::span<const double> state) const;

private:
    Scenario scenario_;
    ControllerOptions options_;
};

Vector global_rate(const Scenario& scenario, double t, std::span<const double> state);

/// Classical fixed-step RK4 over [0, horizon]. Identical scenarios produce
/// bit-identical traces. Divergence is reported through `outcome`.
SimTrace integrate(const Scenario& scenario);

struct Summary {
    Outcome outcome = Outcome::completed;
    bool bounded = false;
    SignalPeaks max_abs;
    std::optional<double> settling_time;  // entry into the residual set
    double omega_bound = 0.0;
    double error_sum_final = 0.0;          // mean E over the last 10% of the run
    double tail_spread = 0.0;              // max |y_i - y_j| over the last 10%
    double s0_empirical = 0.0;
    double min_gain_increment = 0.0;
    double dt = 0.0;
    double end_time = 0.0;
    std::string scenario_hash;
};

inline constexpr double kResidualSetTolerance = 0.05;
inline constexpr double kTailFraction = 0.1;

Summary compute_summary(const SimTrace& trace, const Scenario& scenario);

/// Largest pairwise output disagreement in a record.
double output_spread(const TraceRecord& r);

}  // namespace rescon
