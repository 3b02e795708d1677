#include "rescon/error.hpp"
#include "rescon/nussbaum.hpp"
#include "rescon/report.hpp"
#include "rescon/scenario.hpp"
#include "rescon/scenario_json.hpp"
#include "rescon/simulator.hpp"
#include "rescon/svg_chart.hpp"
#include "rescon/sweep.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

namespace fs = std::filesystem;
using namespace rescon;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitUnstable = 3;

void write_file(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << text;
}

template <class Fn>
void write_stream(const fs::path& path, Fn&& fn) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    fn(out);
}

void print_violations(const ValidationError& e) {
    for (const Violation& v : e.violations()) std::cerr << v.path << ": " << v.message << " [" << v.rule << "]\n";
}

struct RunOptions {
    std::string scenario;
    std::string out_dir = ".";
    bool verbose = false;
    std::optional<double> dt;
    std::optional<double> horizon;
    bool squared_gain_term = false;
};

int cmd_run(const RunOptions& o) {
    Scenario s = load_scenario(o.scenario);
    if (o.verbose) s.flags.verbose_trace = true;
    if (o.dt) s.integration.dt = *o.dt;
    if (o.horizon) s.integration.horizon = *o.horizon;
    if (o.squared_gain_term) s.flags.squared_gain_term = true;
    validate_scenario(s);

    const SimTrace trace = integrate(s);
    const Summary summary = compute_summary(trace, s);
    const fs::path dir(o.out_dir);
    write_stream(dir / "trace.csv", [&](std::ostream& out) { write_trace_csv(out, trace, s.flags.verbose_trace); });
    write_file(dir / "summary.json", summary_json(summary) + "\n");
    std::cout << summary_json(summary) << '\n';
    if (trace.outcome != Outcome::completed) {
        std::cerr << "unstable: " << trace.diagnostic << '\n';
        return kExitUnstable;
    }
    return kExitOk;
}

int cmd_sweep(const std::string& file, const std::string& out_dir) {
    const SweepSpec spec = parse_sweep(read_text_file(file));
    const auto rows = run_sweep(spec);
    const fs::path dir(out_dir);
    write_stream(dir / "sweep.csv", [&](std::ostream& out) { write_sweep_csv(out, rows); });
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const std::string stem = "run_" + std::to_string(i);
        write_stream(dir / (stem + "_trace.csv"), [&](std::ostream& out) {
            write_trace_csv(out, rows[i].trace, rows[i].scenario.flags.verbose_trace);
        });
        write_file(dir / (stem + "_summary.json"), summary_json(rows[i].summary) + "\n");
    }
    write_sweep_csv(std::cout, rows);
    return kExitOk;
}

int cmd_verify(const std::string& file, std::optional<int> max_index, const std::string& out) {
    VerifyRequest req = parse_verify_request(read_text_file(file));
    if (max_index) req.max_index = *max_index;
    const RatioReport report = std::visit([&](const auto& c) { return certify_nfunction(c, req.max_index); },
                                          req.candidate);
    if (out.empty()) write_ratio_csv(std::cout, report);
    else write_stream(out, [&](std::ostream& o) { write_ratio_csv(o, report); });
    return report.verdict == Verdict::pass ? kExitOk : kExitFailure;
}

int cmd_plot(const std::string& csv, const std::string& selection, std::optional<double> omega, std::string out) {
    std::ifstream in(csv);
    if (!in) throw ParseError("cannot open " + csv);
    const CsvTable table = read_csv(in);
    const Chart chart = make_chart(table, parse_plot_selection(selection), omega);
    if (out.empty()) out = fs::path(csv).replace_extension("").string() + "_" + selection + ".svg";
    write_file(out, render_svg(chart));
    std::cout << out << '\n';
    return kExitOk;
}

int cmd_validate(const std::string& file) {
    const Scenario s = load_scenario(file);
    validate_scenario(s);
    std::cout << "valid: " << (s.name.empty() ? file : s.name) << " (" << s.size() << " agents)\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Resilient consensus simulation and verification toolkit"};
    app.require_subcommand(1);

    RunOptions run;
    auto* run_cmd = app.add_subcommand("run", "Simulate a scenario and write trace.csv and summary.json");
    run_cmd->add_option("scenario", run.scenario, "Scenario JSON or builtin:four-agent")->required();
    run_cmd->add_option("--out", run.out_dir, "Output directory");
    run_cmd->add_flag("--verbose-trace", run.verbose, "Add controller internals to the trace");
    run_cmd->add_option("--dt", run.dt, "Override the integration step");
    run_cmd->add_option("--horizon", run.horizon, "Override the horizon");
    run_cmd->add_flag("--squared-gain-term", run.squared_gain_term, "Use L^2 in the third control term");

    std::string sweep_file;
    std::string sweep_out = ".";
    auto* sweep_cmd = app.add_subcommand("sweep", "Run a parameter sweep");
    sweep_cmd->add_option("sweep", sweep_file, "Sweep JSON")->required();
    sweep_cmd->add_option("--out", sweep_out, "Output directory");

    std::string verify_file;
    std::string verify_out;
    std::optional<int> max_index;
    auto* verify_cmd = app.add_subcommand("nussbaum-verify", "Certify an N-Function candidate; CSV report");
    verify_cmd->add_option("spec", verify_file, "Candidate JSON")->required();
    verify_cmd->add_option("--max-index", max_index, "Number of lobe pairs")->check(CLI::Range(3, 1000));
    verify_cmd->add_option("--out", verify_out, "Write the CSV here instead of stdout");

    std::string plot_csv;
    std::string plot_select;
    std::optional<double> plot_omega;
    std::string plot_out;
    auto* plot_cmd = app.add_subcommand("plot", "Render a trace or sweep CSV as SVG");
    plot_cmd->add_option("csv", plot_csv, "Trace or sweep CSV")->required();
    plot_cmd->add_option("--select", plot_select, "outputs | gains | errors | E | sweep")->required();
    plot_cmd->add_option("--omega", plot_omega, "Residual-set radius drawn on the errors chart");
    plot_cmd->add_option("--out", plot_out, "SVG path");

    std::string validate_file;
    auto* validate_cmd = app.add_subcommand("validate", "Check a scenario against all constraints");
    validate_cmd->add_option("scenario", validate_file, "Scenario JSON or builtin:four-agent")->required();

    auto* dump_cmd = app.add_subcommand("dump-builtin", "Print the built-in four-agent scenario as JSON");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run_cmd) return cmd_run(run);
        if (*sweep_cmd) return cmd_sweep(sweep_file, sweep_out);
        if (*verify_cmd) return cmd_verify(verify_file, max_index, verify_out);
        if (*plot_cmd) return cmd_plot(plot_csv, plot_select, plot_omega, plot_out);
        if (*validate_cmd) return cmd_validate(validate_file);
        if (*dump_cmd) {
            std::cout << dump_scenario(builtin_four_agent()) << '\n';
            return kExitOk;
        }
    } catch (const ValidationError& e) {
        print_violations(e);
        return kExitInvalid;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitFailure;
}
