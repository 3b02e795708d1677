#pragma once

#include "rescon/scenario.hpp"
#include "rescon/simulator.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace rescon {

enum class SweepParameter { epsilon, gamma, nussbaum, k, alpha, c1, c2, varsigma };

const char* to_string(SweepParameter p);
SweepParameter parse_sweep_parameter(std::string_view name);

/// One swept value. Scalar parameters use `value`; the nussbaum sweep uses
/// `spec` and labels the row by its index in the value list.
struct SweepValue {
    double value = 0.0;
    NussbaumSpec spec;
    std::string label;
};

struct SweepSpec {
    Scenario base;
    SweepParameter parameter = SweepParameter::epsilon;
    std::vector<SweepValue> values;
};

/// Applies one value to every agent. For gamma, 0 selects the fixed-gain
/// ablation (L stays at its initial value).
Scenario apply_sweep_value(const Scenario& base, SweepParameter p, const SweepValue& v);

struct SweepRow {
    SweepValue value;
    Scenario scenario;
    SimTrace trace;
    Summary summary;
};

/// Runs every value as an independent simulation, concurrently. Divergent
/// runs appear as rows with `bounded == false`.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, unsigned max_threads = 0);

/// {"base": "builtin:four-agent" | path | scenario object, "parameter": name,
///  "values": [numbers] or [nussbaum objects], "horizon": optional override}
SweepSpec parse_sweep(std::string_view json_text);

}  // namespace rescon
