#pragma once

#include "rescon/scenario.hpp"

#include <cmath>
#include <vector>

namespace fixture {

/// Two double integrators on a bidirectional edge, no attack, both Nussbaum
/// gains starting inside a stabilizing lobe of exp(0.1 nu^2) cos(nu).
inline rescon::Scenario gentle_pair(double horizon = 10.0) {
    using namespace rescon;
    Scenario sc;
    sc.name = "gentle-pair";
    const std::vector<Edge> edges{{0, 1}, {1, 0}};
    sc.topology = Digraph::from_edges(2, edges);
    sc.reference = {1.0, 0.5};
    sc.integration = {1e-3, horizon, 10, 1e8};
    for (int i = 0; i < 2; ++i) {
        AgentConfig a;
        a.controller.c1 = 1.0;
        a.controller.c2 = 1.0;
        a.controller.gamma = 0.5;
        a.controller.epsilon = 0.1;
        a.controller.varsigma = 0.9;
        a.controller.nussbaum = {0.1, 0.0, 1.0, 1.0, TrigKind::cosine};
        const double sign = i ? 1.0 : -1.0;
        a.initial = {0.5 * sign, 0.0, 0.3 * sign, 1.0, M_PI, M_PI};
        sc.agents.push_back(a);
    }
    sc.attack = AttackProfile::identity(2);
    sc.attack.bounds.rate = 1.0;
    return sc;
}

/// Reference-protocol-only run on `g` from s(0) = s0; plants stay frozen.
inline rescon::Scenario reference_only(const rescon::Digraph& g, const std::vector<double>& s0,
                                       rescon::ReferenceParams p, double dt, double horizon) {
    using namespace rescon;
    Scenario sc = gentle_pair(horizon);
    sc.name = "reference-only";
    sc.topology = g;
    sc.reference = p;
    sc.integration.dt = dt;
    sc.integration.record_every = 1;
    sc.flags.reference_only = true;
    const AgentConfig proto = sc.agents.front();
    sc.agents.assign(g.size(), proto);
    for (std::size_t i = 0; i < g.size(); ++i) sc.agents[i].initial.s = s0[i];
    sc.attack = AttackProfile::identity(g.size());
    sc.attack.bounds.rate = 1.0;
    return sc;
}

}  // namespace fixture
