#include "rescon/simulator.hpp"

#include "rescon/error.hpp"
#include "rescon/scenario_json.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rescon {

Vector pack(std::span<const AgentState> agents) {
    Vector flat;
    flat.reserve(agents.size() * kStatesPerAgent);
    for (const auto& a : agents) flat.insert(flat.end(), {a.x1, a.x2, a.s, a.L, a.F1, a.F2});
    return flat;
}

std::vector<AgentState> unpack(std::span<const double> flat) {
    if (flat.size() % kStatesPerAgent != 0) throw std::invalid_argument("state length is not a multiple of 6");
    std::vector<AgentState> out(flat.size() / kStatesPerAgent);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double* p = flat.data() + i * kStatesPerAgent;
        out[i] = {p[0], p[1], p[2], p[3], p[4], p[5]};
    }
    return out;
}

const char* to_string(Outcome o) {
    switch (o) {
        case Outcome::completed: return "completed";
        case Outcome::blow_up: return "blow_up";
        case Outcome::non_finite: return "non_finite";
    }
    return "unknown";
}

double SignalPeaks::max() const { return std::max({y, x2, s, u, L, F1, F2}); }

std::vector<double> SimTrace::times() const {
    std::vector<double> t;
    t.reserve(records.size());
    for (const auto& r : records) t.push_back(r.t);
    return t;
}

double error_sum(std::span<const AgentSignals> signals) {
    double sum = 0.0;
    for (std::size_t i = 0; i < signals.size(); ++i)
        for (std::size_t j = i + 1; j < signals.size(); ++j) {
            const double d = signals[i].y - signals[j].y;
            sum += d * d;
        }
    return 2.0 * sum;
}

double output_spread(const TraceRecord& r) {
    if (r.signals.empty()) return 0.0;
    const auto [lo, hi] = std::minmax_element(r.signals.begin(), r.signals.end(),
                                              [](const AgentSignals& a, const AgentSignals& b) { return a.y < b.y; });
    return hi->y - lo->y;
}

ClosedLoop::ClosedLoop(Scenario scenario)
    : scenario_(std::move(scenario)), options_(scenario_.controller_options()) {
    if (scenario_.topology.size() != scenario_.size())
        throw std::invalid_argument("topology size does not match the agent count");
}

Vector ClosedLoop::initial_state() const {
    std::vector<AgentState> agents;
    for (const auto& a : scenario_.agents)
        agents.push_back({a.initial.x1, a.initial.x2, a.initial.s, a.initial.L, a.initial.F1, a.initial.F2});
    return pack(agents);
}

void ClosedLoop::rate(double t, std::span<const double> state, std::span<double> out,
                      std::vector<AgentSignals>* signals) const {
    const std::size_t n = scenario_.size();
    if (state.size() != n * kStatesPerAgent || out.size() != state.size())
        throw std::invalid_argument("closed-loop state has the wrong length");

    // Reference protocol reads neighbours' s only.
    Vector s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = state[i * kStatesPerAgent + 2];
    const Vector s_rate = reference_rate(s, scenario_.topology, scenario_.reference);
    Vector varpi;
    if (signals) {
        varpi = local_errors(scenario_.topology, s);
        signals->assign(n, AgentSignals{});
    }

    for (std::size_t i = 0; i < n; ++i) {
        const double* x = state.data() + i * kStatesPerAgent;
        double* dx = out.data() + i * kStatesPerAgent;
        const AgentConfig& agent = scenario_.agents[i];
        const double x1 = x[0], x2 = x[1];

        dx[2] = s_rate[i];
        if (scenario_.flags.reference_only) {
            dx[0] = dx[1] = dx[3] = dx[4] = dx[5] = 0.0;
            if (signals) {
                AgentSignals& sig = (*signals)[i];
                sig.y = x1;
                sig.varpi = varpi[i];
            }
            continue;
        }

        const SensorReading meas = corrupt_sensors(scenario_.attack, i, x1, x2, t);
        const ControllerState cs{x[3], x[4], x[5]};
        const ControllerSignals ctl = evaluate_controller({meas.y_check, meas.x2_check, x[2]}, cs, agent.controller,
                                                          options_, agent.model.phi1, agent.model.phi2);
        const double u_applied = corrupt_actuator(scenario_.attack, i, ctl.u, t);

        PlantRate pr;
        try {
            pr = plant_rate(agent.model, x1, x2, u_applied, t);
        } catch (const NonFiniteState& err) {
            throw NonFiniteState(i, t, "agent " + std::to_string(i + 1) + ": " + err.what());
        }
        dx[0] = pr.dx1;
        dx[1] = pr.dx2;
        dx[3] = ctl.L_rate;
        dx[4] = ctl.F1_rate;
        dx[5] = ctl.F2_rate;
        for (int k = 0; k < static_cast<int>(kStatesPerAgent); ++k)
            if (!std::isfinite(dx[k]))
                throw NonFiniteState(i, t, "agent " + std::to_string(i + 1) + ": non-finite rate at t = " +
                                               std::to_string(t));

        if (signals) {
            AgentSignals& sig = (*signals)[i];
            sig.y = x1;
            sig.y_check = meas.y_check;
            sig.x2_check = meas.x2_check;
            sig.u = ctl.u;
            sig.u_applied = u_applied;
            sig.e = ctl.e;
            sig.z1 = ctl.z1;
            sig.z2 = ctl.z2;
            sig.v1 = ctl.v1;
            sig.phi2 = ctl.phi2;
            sig.varpi = varpi[i];
            sig.L_rate = ctl.L_rate;
            sig.F1_rate = ctl.F1_rate;
            sig.F2_rate = ctl.F2_rate;
        }
    }
}

Vector ClosedLoop::rate(double t, std::span<const double> state) const {
    Vector out(state.size());
    rate(t, state, out);
    return out;
}

std::vector<AgentSignals> ClosedLoop::signals(double t, std::span<const double> state) const {
    Vector scratch(state.size());
    std::vector<AgentSignals> sig;
    rate(t, state, scratch, &sig);
    return sig;
}

Vector global_rate(const Scenario& scenario, double t, std::span<const double> state) {
    return ClosedLoop(scenario).rate(t, state);
}

namespace {

void update_peaks(SignalPeaks& p, std::span<const double> state, std::span<const AgentSignals> sig) {
    const auto agents = unpack(state);
    for (std::size_t i = 0; i < agents.size(); ++i) {
        const AgentState& a = agents[i];
        p.y = std::max(p.y, std::abs(a.x1));
        p.x2 = std::max(p.x2, std::abs(a.x2));
        p.s = std::max(p.s, std::abs(a.s));
        p.L = std::max(p.L, std::abs(a.L));
        p.F1 = std::max(p.F1, std::abs(a.F1));
        p.F2 = std::max(p.F2, std::abs(a.F2));
        if (i < sig.size()) p.u = std::max(p.u, std::abs(sig[i].u));
    }
}

TraceRecord make_record(double t, std::span<const double> state, std::vector<AgentSignals> sig) {
    TraceRecord r;
    r.t = t;
    r.state = unpack(state);
    r.signals = std::move(sig);
    r.error_sum = error_sum(r.signals);
    return r;
}

// Failure paths keep the last finite state; only outputs are known there.
void record_last_good(SimTrace& trace, double t, std::span<const double> state) {
    if (!trace.records.empty() && trace.records.back().t >= t) return;
    const auto agents = unpack(state);
    std::vector<AgentSignals> sig(agents.size());
    for (std::size_t i = 0; i < agents.size(); ++i) sig[i].y = agents[i].x1;
    trace.records.push_back(make_record(t, state, std::move(sig)));
}

}  // namespace

SimTrace integrate(const Scenario& scenario) {
    const ClosedLoop loop(scenario);
    const IntegrationSettings& cfg = scenario.integration;
    if (!(cfg.dt > 0.0)) throw std::invalid_argument("dt must be > 0");
    if (cfg.record_every == 0) throw std::invalid_argument("record_every must be >= 1");

    SimTrace trace;
    trace.dt = cfg.dt;
    trace.agents = scenario.size();
    trace.monitor.min_L_increment = std::numeric_limits<double>::infinity();
    trace.monitor.min_F1_increment = std::numeric_limits<double>::infinity();
    trace.monitor.min_F2_increment = std::numeric_limits<double>::infinity();

    const auto steps = static_cast<std::size_t>(std::llround(cfg.horizon / cfg.dt));
    const std::size_t dim = scenario.size() * kStatesPerAgent;
    Vector y = loop.initial_state();
    Vector last_good = y;
    Vector k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);
    std::vector<AgentSignals> sig;

    const auto fail = [&](Outcome o, const std::string& why, double t) {
        trace.outcome = o;
        trace.diagnostic = why;
        trace.end_time = t;
    };

    std::size_t step = 0;
    try {
        // Stage one of each step doubles as the signal evaluation at t_n.
        for (;; ++step) {
            const double t = static_cast<double>(step) * cfg.dt;
            loop.rate(t, y, k1, &sig);
            update_peaks(trace.monitor.peaks, y, sig);
            trace.end_time = t;
            if (trace.monitor.peaks.max() > cfg.blow_up_threshold) {
                fail(Outcome::blow_up, "signal magnitude exceeded " + std::to_string(cfg.blow_up_threshold), t);
                trace.records.push_back(make_record(t, y, sig));
                break;
            }
            if (step % cfg.record_every == 0 || step == steps) trace.records.push_back(make_record(t, y, sig));
            if (step == steps) break;

            const double h = cfg.dt;
            last_good = y;
            for (std::size_t k = 0; k < dim; ++k) tmp[k] = y[k] + 0.5 * h * k1[k];
            loop.rate(t + 0.5 * h, tmp, k2);
            for (std::size_t k = 0; k < dim; ++k) tmp[k] = y[k] + 0.5 * h * k2[k];
            loop.rate(t + 0.5 * h, tmp, k3);
            for (std::size_t k = 0; k < dim; ++k) tmp[k] = y[k] + h * k3[k];
            loop.rate(t + h, tmp, k4);

            for (std::size_t i = 0; i < scenario.size(); ++i) {
                const std::size_t b = i * kStatesPerAgent;
                const auto incr = [&](std::size_t k) { return h / 6.0 * (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]); };
                trace.monitor.min_L_increment = std::min(trace.monitor.min_L_increment, incr(b + 3));
                trace.monitor.min_F1_increment = std::min(trace.monitor.min_F1_increment, incr(b + 4));
                trace.monitor.min_F2_increment = std::min(trace.monitor.min_F2_increment, incr(b + 5));
            }
            for (std::size_t k = 0; k < dim; ++k) y[k] += h / 6.0 * (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]);
            trace.monitor.steps = step + 1;

            for (double v : y)
                if (!std::isfinite(v))
                    throw NonFiniteState(kUnknownAgent, t + h, "state became non-finite at t = " + std::to_string(t + h));
        }
    } catch (const NonFiniteState& err) {
        fail(Outcome::non_finite, err.what(), err.time());
        record_last_good(trace, static_cast<double>(step) * cfg.dt, last_good);
    } catch (const OverflowError& err) {
        fail(Outcome::blow_up, std::string("Nussbaum gain overflow: ") + err.what(), static_cast<double>(step) * cfg.dt);
        record_last_good(trace, static_cast<double>(step) * cfg.dt, last_good);
    }
    return trace;
}

Summary compute_summary(const SimTrace& trace, const Scenario& scenario) {
    if (trace.records.empty()) throw std::invalid_argument("trace has no records");
    Summary out;
    out.outcome = trace.outcome;
    out.max_abs = trace.monitor.peaks;
    out.dt = trace.dt;
    out.end_time = trace.end_time;
    out.omega_bound = scenario.omega_bound();
    out.scenario_hash = scenario_hash(scenario);
    out.min_gain_increment = std::min({trace.monitor.min_L_increment, trace.monitor.min_F1_increment,
                                       trace.monitor.min_F2_increment});
    out.bounded = trace.outcome == Outcome::completed && std::isfinite(out.max_abs.max()) &&
                  out.max_abs.max() <= scenario.integration.blow_up_threshold;

    const double limit = out.omega_bound * (1.0 + kResidualSetTolerance);
    std::optional<double> entry;
    for (const auto& r : trace.records) {
        if (output_spread(r) <= limit) {
            if (!entry) entry = r.t;
        } else {
            entry.reset();
        }
    }
    out.settling_time = trace.outcome == Outcome::completed ? entry : std::nullopt;

    const double t_end = trace.records.back().t;
    const double tail_start = t_end - kTailFraction * t_end;
    double sum = 0.0;
    std::size_t count = 0;
    for (const auto& r : trace.records) {
        if (r.t < tail_start) continue;
        sum += r.error_sum;
        out.tail_spread = std::max(out.tail_spread, output_spread(r));
        ++count;
    }
    out.error_sum_final = count ? sum / static_cast<double>(count) : 0.0;

    const auto& last = trace.records.back().state;
    for (const auto& a : last) out.s0_empirical += a.s;
    out.s0_empirical /= static_cast<double>(last.size());
    return out;
}

}  // namespace rescon
