#pragma once

#include "rescon/controller.hpp"
#include "rescon/error.hpp"
#include "rescon/graph.hpp"
#include "rescon/plant.hpp"
#include "rescon/reference.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace rescon {

struct AgentInitial {
    double x1 = 0.0;
    double x2 = 0.0;
    double s = 0.0;
    double L = 1.0;
    double F1 = 0.0;
    double F2 = 0.0;

    bool operator==(const AgentInitial&) const = default;
};

struct AgentConfig {
    AgentModel model;
    ControllerParams controller;
    AgentInitial initial;

    bool operator==(const AgentConfig&) const = default;
};

struct IntegrationSettings {
    double dt = 1e-3;
    double horizon = 50.0;
    std::size_t record_every = 10;
    double blow_up_threshold = 1e8;

    bool operator==(const IntegrationSettings&) const = default;
};

struct ScenarioFlags {
    bool squared_gain_term = false;
    bool adaptive_gain_enabled = true;
    bool verbose_trace = false;
    // Integrate only the reference states; plant and controller stay frozen.
    bool reference_only = false;

    bool operator==(const ScenarioFlags&) const = default;
};

/// Complete description of one experiment.
struct Scenario {
    int version = 1;
    std::string name;
    Digraph topology;
    std::vector<AgentConfig> agents;
    AttackProfile attack;
    ReferenceParams reference;
    IntegrationSettings integration;
    ScenarioFlags flags;

    std::size_t size() const { return agents.size(); }
    ControllerOptions controller_options() const {
        return {flags.squared_gain_term, flags.adaptive_gain_enabled};
    }
    double max_epsilon() const;
    /// Radius of the residual set for pairwise output errors:
    /// 2 * (1 / lower bound of |rho_o|) * max_i epsilon_i.
    double omega_bound() const;

    bool operator==(const Scenario&) const = default;
};

inline constexpr double kAssumptionGridStep = 0.01;

/// Every violated constraint, each tagged with its field path and rule.
/// With `check_assumptions` the attack and coefficient signals are sampled over
/// the scenario horizon as well.
std::vector<Violation> check_scenario(const Scenario& s, bool check_assumptions = true);

/// Throws ValidationError listing all violations.
void validate_scenario(const Scenario& s, bool check_assumptions = true);

/// exp(0.9 (nu^2 + 0.001)^0.7) cos(0.4 nu)
NussbaumSpec slow_growth_nussbaum();
/// exp(nu^2) cos(0.4 nu)
NussbaumSpec classic_nussbaum();

/// The four-agent benchmark: heterogeneous second-order agents with sensor
/// and actuator deception on every channel, agent 3 with a reversed control
/// coefficient. Topology is the directed ring 1->2->3->4->1 plus 1<->3.
Scenario builtin_four_agent();

}  // namespace rescon
