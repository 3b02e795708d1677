#include "rescon/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rescon {

ValidationError::ValidationError(std::vector<Violation> violations)
    : Error([&] {
          std::string msg = "scenario validation failed:";
          for (const auto& v : violations) msg += "\n  " + v.path + ": " + v.message + " [" + v.rule + "]";
          return msg;
      }()),
      violations_(std::move(violations)) {}

double Scenario::max_epsilon() const {
    double eps = 0.0;
    for (const auto& a : agents) eps = std::max(eps, a.controller.epsilon);
    return eps;
}

double Scenario::omega_bound() const { return 2.0 * attack.intensity() * max_epsilon(); }

namespace {

class Collector {
public:
    void require(bool ok, std::string path, std::string rule, std::string message) {
        if (!ok) out.push_back({std::move(path), std::move(rule), std::move(message)});
    }

    std::vector<Violation> out;
};

bool all_finite(std::initializer_list<double> xs) {
    return std::all_of(xs.begin(), xs.end(), [](double x) { return std::isfinite(x); });
}

void check_params(const std::string& base, const ControllerParams& p, bool adaptive, Collector& c) {
    c.require(p.c1 > 0.0, base + "/c1", "backstepping-gain-positive", "c1 must be > 0");
    c.require(p.c2 > 0.0, base + "/c2", "backstepping-gain-positive", "c2 must be > 0");
    if (adaptive)
        c.require(p.gamma > 0.0, base + "/gamma", "adaptive-gain-update", "gamma must be > 0");
    else
        c.require(p.gamma >= 0.0, base + "/gamma", "adaptive-gain-update", "gamma must be >= 0");
    c.require(p.epsilon > 0.0, base + "/epsilon", "adaptive-gain-update", "epsilon must be > 0");
    c.require(p.varsigma > 0.0 && p.varsigma < 1.0, base + "/varsigma", "adaptive-gain-update",
              "varsigma must lie in (0, 1)");
    const auto& n = p.nussbaum;
    const std::string nb = base + "/nussbaum";
    c.require(n.a > 0.0, nb + "/a", "n-function-family", "a must be > 0");
    c.require(n.b >= 0.0, nb + "/b", "n-function-family", "b must be >= 0");
    c.require(n.c > 0.5 && n.c <= 1.0, nb + "/c", "n-function-family",
              "c must lie in (0.5, 1] so that f' is strictly increasing and unbounded");
    c.require(n.omega > 0.0, nb + "/omega", "n-function-family", "omega must be > 0");
}

}  // namespace

std::vector<Violation> check_scenario(const Scenario& s, bool check_assumptions) {
    Collector c;
    const std::size_t n = s.agents.size();

    c.require(s.version == 1, "/version", "schema-version", "unsupported version " + std::to_string(s.version));
    c.require(n >= 2, "/agents", "agent-count", "at least two agents are required");
    c.require(s.topology.size() == n, "/topology/agents", "agent-count",
              "topology size " + std::to_string(s.topology.size()) + " does not match " + std::to_string(n) +
                  " agents");
    if (s.topology.size() == n && n >= 2)
        c.require(is_strongly_connected(s.topology), "/topology/edges", "strong-connectivity",
                  "communication digraph must be strongly connected");

    c.require(s.reference.k > 0.0, "/reference/k", "finite-time-reference-protocol", "k must be > 0");
    c.require(s.reference.alpha > 0.0 && s.reference.alpha < 1.0, "/reference/alpha",
              "finite-time-reference-protocol", "alpha must lie in (0, 1)");

    const auto& in = s.integration;
    c.require(in.dt > 0.0 && std::isfinite(in.dt), "/integration/dt", "integration", "dt must be > 0");
    c.require(in.horizon >= 0.0 && std::isfinite(in.horizon), "/integration/horizon", "integration",
              "horizon must be >= 0");
    c.require(in.record_every >= 1, "/integration/record_every", "integration", "record_every must be >= 1");
    c.require(in.blow_up_threshold > 0.0, "/integration/blow_up_threshold", "integration",
              "blow_up_threshold must be > 0");

    for (std::size_t i = 0; i < n; ++i) {
        const std::string base = "/agents/" + std::to_string(i);
        const AgentConfig& a = s.agents[i];
        check_params(base + "/controller", a.controller, s.flags.adaptive_gain_enabled, c);
        c.require(a.model.psi1.size() == a.model.theta1.size(), base + "/theta1", "plant-structure",
                  "theta1 length must match psi1");
        c.require(a.model.psi2.size() == a.model.theta2.size(), base + "/theta2", "plant-structure",
                  "theta2 length must match psi2");
        for (std::size_t k = 0; k < a.model.psi1.size(); ++k) {
            const Regressor& r = a.model.psi1[k];
            c.require(r.kind != RegressorKind::product && r.var == StateVar::x1,
                      base + "/psi1/" + std::to_string(k), "plant-structure",
                      "first-channel regressors may depend on x1 only");
        }
        c.require(a.model.phi1.offset > 0.0 && a.model.phi1.weight >= 0.0, base + "/phi1", "bounding-function",
                  "phi1 needs offset > 0 and weight >= 0");
        c.require(a.model.phi2.offset > 0.0 && a.model.phi2.weight >= 0.0, base + "/phi2", "bounding-function",
                  "phi2 needs offset > 0 and weight >= 0");
        const auto& ini = a.initial;
        c.require(all_finite({ini.x1, ini.x2, ini.s, ini.L, ini.F1, ini.F2}), base + "/initial", "initial-state",
                  "initial values must be finite");
        c.require(ini.L >= 1.0, base + "/initial/L", "adaptive-gain-update", "L(0) must be >= 1");
    }

    const AttackBounds& b = s.attack.bounds;
    c.require(s.attack.rho_s.size() == n, "/attack/rho_s", "attack-model", "one sensor weight per agent");
    c.require(s.attack.rho_a.size() == n, "/attack/rho_a", "attack-model", "one actuator weight per agent");
    c.require(b.o_lower > 0.0 && b.o_lower <= b.o_upper, "/attack/bounds/rho_o", "attack-bounds",
              "need 0 < lower <= upper");
    c.require(b.s_lower > 0.0 && b.s_lower <= b.s_upper, "/attack/bounds/rho_s", "attack-bounds",
              "need 0 < lower <= upper");
    c.require(b.a_lower > 0.0 && b.a_lower <= b.a_upper, "/attack/bounds/rho_a", "attack-bounds",
              "need 0 < lower <= upper");
    c.require(b.rate > 0.0, "/attack/bounds/rate", "attack-bounds", "rate bound must be > 0");

    const bool shapes_ok = c.out.empty();
    if (check_assumptions && shapes_ok && s.integration.horizon > 0.0) {
        std::vector<AgentModel> models;
        for (const auto& a : s.agents) models.push_back(a.model);
        const AssumptionReport rep =
            validate_assumptions(models, s.attack, s.integration.horizon, kAssumptionGridStep);
        for (const auto& f : rep.failures) {
            const bool attack = f.signal.rfind("/attack", 0) == 0;
            c.require(false, f.signal, attack ? "attack-bounds" : "control-coefficient-nonzero",
                      f.message + " at t = " + std::to_string(f.time));
        }
    }
    return c.out;
}

void validate_scenario(const Scenario& s, bool check_assumptions) {
    auto v = check_scenario(s, check_assumptions);
    if (!v.empty()) throw ValidationError(std::move(v));
}

NussbaumSpec slow_growth_nussbaum() { return {0.9, 0.001, 0.7, 0.4, TrigKind::cosine}; }

NussbaumSpec classic_nussbaum() { return {1.0, 0.0, 1.0, 0.4, TrigKind::cosine}; }

Scenario builtin_four_agent() {
    using S = ScalarSignal;
    const Regressor lin1{RegressorKind::linear, StateVar::x1};
    const Regressor lin2{RegressorKind::linear, StateVar::x2};
    const Regressor prod{RegressorKind::product, StateVar::x1};

    Scenario sc;
    sc.name = "four-agent";
    const std::vector<Edge> edges{{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}, {2, 0}};
    sc.topology = Digraph::from_edges(4, edges);
    sc.reference = {2.0, 0.8};
    sc.integration = {1e-3, 50.0, 10, 1e8};

    std::vector<AgentModel> m(4);
    m[0].psi1 = {lin1};
    m[0].theta1 = {2.0};
    m[0].psi2 = {prod};
    m[0].theta2 = {-2.0};
    m[0].g1 = S::constant(1.0);
    m[0].g2 = S::constant(1.0);
    m[0].o1 = S::sine(0.0, 0.4, 1.0);
    m[0].o2 = S::sine(0.0, 0.4, 1.0);

    m[1].psi1 = {{RegressorKind::x_sin_x, StateVar::x1}};
    m[1].theta1 = {-1.0};
    m[1].psi2 = {lin2};
    m[1].theta2 = {1.0};
    m[1].g1 = S::cosine(-1.0, -0.2, 1.0);
    m[1].g2 = S::cosine(2.0, -0.5, 1.0);
    m[1].o1 = S::cosine(0.0, 0.4, 1.0);
    m[1].o2 = S::cosine(0.0, 0.4, 1.0);

    m[2].psi1 = {{RegressorKind::x_cos_x, StateVar::x1}};
    m[2].theta1 = {0.5};
    m[2].psi2 = {{RegressorKind::x_tanh_x, StateVar::x2}};
    m[2].theta2 = {-0.5};
    m[2].g1 = S::constant(1.0);
    m[2].g2 = S::constant(-1.0);
    m[2].o1 = S::sine(0.0, -0.4, 1.0);
    m[2].o2 = S::sine(0.0, -0.4, 1.0);

    m[3].psi1 = {lin1};
    m[3].theta1 = {-0.2};
    m[3].psi2 = {prod};
    m[3].theta2 = {-0.2};
    m[3].g1 = S::cosine(2.0, -1.2, 1.0);
    m[3].g2 = S::cosine(2.0, -1.2, 1.0);
    m[3].o1 = S::cosine(0.0, -0.4, 1.0);
    m[3].o2 = S::cosine(0.0, -0.4, 1.0);

    const double x0[4][2] = {{2.0, -1.0}, {0.5, -0.5}, {-1.0, 1.0}, {0.8, -1.0}};
    const double s0[4] = {1.5, 1.0, -1.5, 1.0};

    ControllerParams cp;
    cp.c1 = 0.2;
    cp.c2 = 0.2;
    cp.epsilon = 0.1;
    cp.varsigma = 0.9;
    cp.gamma = 1.5;
    cp.nussbaum = slow_growth_nussbaum();

    for (std::size_t i = 0; i < 4; ++i) {
        AgentConfig a;
        a.model = m[i];
        a.controller = cp;
        a.initial = {x0[i][0], x0[i][1], s0[i], 1.0, 0.0, 0.0};
        sc.agents.push_back(a);
    }

    sc.attack.rho_o = S::sine(-1.0, -0.2, 1.0);
    sc.attack.rho_s = {S::sine(1.0, 0.5, 2.0), S::sine(-1.0, -0.3, 2.0), S::cosine(2.0, -1.2, 2.0),
                       S::cosine(2.0, -1.5, 2.0)};
    sc.attack.rho_a = {S::cosine(1.0, 0.4, 4.0), S::sine(1.0, -0.3, 2.0), S::cosine(-2.0, 1.4, 2.0),
                       S::cosine(2.0, -1.4, 4.0)};
    // Analytic extrema of the weights above; rate bounds |rho_s'| <= 2 * 1.5.
    sc.attack.bounds = {0.8, 1.2, 0.5, 3.5, 0.6, 3.4, 3.0};
    return sc;
}

}  // namespace rescon
