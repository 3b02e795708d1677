#include "rescon/sweep.hpp"

#include "rescon/error.hpp"
#include "rescon/scenario_json.hpp"

#include <json.hpp>

#include <algorithm>
#include <future>
#include <thread>

namespace rescon {

const char* to_string(SweepParameter p) {
    switch (p) {
        case SweepParameter::epsilon: return "epsilon";
        case SweepParameter::gamma: return "gamma";
        case SweepParameter::nussbaum: return "nussbaum";
        case SweepParameter::k: return "k";
        case SweepParameter::alpha: return "alpha";
        case SweepParameter::c1: return "c1";
        case SweepParameter::c2: return "c2";
        case SweepParameter::varsigma: return "varsigma";
    }
    return "epsilon";
}

SweepParameter parse_sweep_parameter(std::string_view name) {
    for (auto p : {SweepParameter::epsilon, SweepParameter::gamma, SweepParameter::nussbaum, SweepParameter::k,
                   SweepParameter::alpha, SweepParameter::c1, SweepParameter::c2, SweepParameter::varsigma})
        if (name == to_string(p)) return p;
    throw ParseError("/parameter: unknown sweep parameter '" + std::string(name) + "'");
}

Scenario apply_sweep_value(const Scenario& base, SweepParameter p, const SweepValue& v) {
    Scenario s = base;
    s.name = base.name + "/" + to_string(p) + "=" + (v.label.empty() ? nlohmann::json(v.value).dump() : v.label);
    switch (p) {
        case SweepParameter::k: s.reference.k = v.value; return s;
        case SweepParameter::alpha: s.reference.alpha = v.value; return s;
        case SweepParameter::gamma:
            if (v.value == 0.0) s.flags.adaptive_gain_enabled = false;
            break;
        default: break;
    }
    for (AgentConfig& a : s.agents) {
        ControllerParams& c = a.controller;
        switch (p) {
            case SweepParameter::epsilon: c.epsilon = v.value; break;
            case SweepParameter::gamma: c.gamma = v.value; break;
            case SweepParameter::nussbaum: c.nussbaum = v.spec; break;
            case SweepParameter::c1: c.c1 = v.value; break;
            case SweepParameter::c2: c.c2 = v.value; break;
            case SweepParameter::varsigma: c.varsigma = v.value; break;
            default: break;
        }
    }
    return s;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, unsigned max_threads) {
    std::vector<SweepRow> rows(spec.values.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        rows[i].value = spec.values[i];
        rows[i].scenario = apply_sweep_value(spec.base, spec.parameter, spec.values[i]);
        validate_scenario(rows[i].scenario);
    }
    if (max_threads == 0) max_threads = std::max(1u, std::thread::hardware_concurrency());

    auto run_one = [&rows](std::size_t i) {
        rows[i].trace = integrate(rows[i].scenario);
        rows[i].summary = compute_summary(rows[i].trace, rows[i].scenario);
    };
    for (std::size_t start = 0; start < rows.size(); start += max_threads) {
        const std::size_t stop = std::min(rows.size(), start + max_threads);
        std::vector<std::future<void>> batch;
        for (std::size_t i = start; i < stop; ++i) batch.push_back(std::async(std::launch::async, run_one, i));
        for (auto& f : batch) f.get();
    }
    return rows;
}

SweepSpec parse_sweep(std::string_view json_text) {
    using json = nlohmann::ordered_json;
    json root;
    try {
        root = json::parse(json_text.begin(), json_text.end());
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    if (!root.is_object()) throw ParseError(": expected an object");
    for (const auto& [key, _] : root.items())
        if (key != "base" && key != "parameter" && key != "values" && key != "horizon")
            throw ParseError("/" + key + ": unknown key");
    if (!root.contains("base") || !root.contains("parameter") || !root.contains("values"))
        throw ParseError(": sweep needs 'base', 'parameter' and 'values'");

    SweepSpec spec;
    const json& base = root["base"];
    if (base.is_string()) spec.base = load_scenario(base.get<std::string>());
    else spec.base = parse_scenario(base.dump());
    if (root.contains("horizon")) {
        if (!root["horizon"].is_number()) throw ParseError("/horizon: expected a number");
        spec.base.integration.horizon = root["horizon"].get<double>();
    }
    if (!root["parameter"].is_string()) throw ParseError("/parameter: expected a string");
    spec.parameter = parse_sweep_parameter(root["parameter"].get<std::string>());

    const json& values = root["values"];
    if (!values.is_array() || values.empty()) throw ParseError("/values: expected a nonempty array");
    for (std::size_t i = 0; i < values.size(); ++i) {
        SweepValue v;
        if (spec.parameter == SweepParameter::nussbaum) {
            v.spec = parse_nussbaum(values[i].dump());
            v.value = static_cast<double>(i);
            v.label = std::to_string(i);
        } else {
            if (!values[i].is_number()) throw ParseError("/values/" + std::to_string(i) + ": expected a number");
            v.value = values[i].get<double>();
            v.label = json(v.value).dump();
        }
        spec.values.push_back(v);
    }
    return spec;
}

}  // namespace rescon
