#include "rescon/report.hpp"

#include "rescon/error.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace rescon {

namespace {

// Shortest representation that parses back to the same double.
std::string num(double v) {
    if (std::isnan(v)) return "";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void add_family(std::vector<std::string>& h, const char* name, std::size_t n) {
    for (std::size_t i = 1; i <= n; ++i) h.push_back(std::string(name) + "_" + std::to_string(i));
}

}  // namespace

std::vector<std::string> trace_header(std::size_t agents, bool verbose) {
    std::vector<std::string> h{"t"};
    for (const char* f : {"y", "s", "x2", "u", "L", "F1", "F2"}) add_family(h, f, agents);
    h.push_back("E");
    if (verbose)
        for (const char* f : {"e", "z1", "z2", "v1", "Phi2", "ycheck", "x2check", "uapplied"}) add_family(h, f, agents);
    return h;
}

void write_trace_csv(std::ostream& out, const SimTrace& trace, bool verbose) {
    const auto header = trace_header(trace.agents, verbose);
    for (std::size_t k = 0; k < header.size(); ++k) out << (k ? "," : "") << header[k];
    out << '\n';
    for (const TraceRecord& r : trace.records) {
        std::string line = num(r.t);
        auto put = [&line](double v) {
            line += ',';
            line += num(v);
        };
        for (const auto& a : r.state) put(a.x1);
        for (const auto& a : r.state) put(a.s);
        for (const auto& a : r.state) put(a.x2);
        for (const auto& g : r.signals) put(g.u);
        for (const auto& a : r.state) put(a.L);
        for (const auto& a : r.state) put(a.F1);
        for (const auto& a : r.state) put(a.F2);
        put(r.error_sum);
        if (verbose) {
            for (const auto& g : r.signals) put(g.e);
            for (const auto& g : r.signals) put(g.z1);
            for (const auto& g : r.signals) put(g.z2);
            for (const auto& g : r.signals) put(g.v1);
            for (const auto& g : r.signals) put(g.phi2);
            for (const auto& g : r.signals) put(g.y_check);
            for (const auto& g : r.signals) put(g.x2_check);
            for (const auto& g : r.signals) put(g.u_applied);
        }
        out << line << '\n';
    }
}

std::string summary_json(const Summary& s, int indent) {
    nlohmann::ordered_json j;
    j["outcome"] = to_string(s.outcome);
    j["bounded"] = s.bounded;
    j["max_abs"] = {{"y", s.max_abs.y},   {"x2", s.max_abs.x2}, {"s", s.max_abs.s},  {"u", s.max_abs.u},
                    {"L", s.max_abs.L},   {"F1", s.max_abs.F1}, {"F2", s.max_abs.F2}};
    j["T_s"] = s.settling_time ? nlohmann::ordered_json(*s.settling_time) : nlohmann::ordered_json(nullptr);
    j["omega_bound"] = s.omega_bound;
    j["E_final"] = s.error_sum_final;
    j["tail_spread"] = s.tail_spread;
    j["s0_empirical"] = s.s0_empirical;
    j["min_gain_increment"] = s.min_gain_increment;
    j["dt"] = s.dt;
    j["end_time"] = s.end_time;
    j["scenario_hash"] = s.scenario_hash;
    return j.dump(indent);
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << "value,E_final,T_s,bounded,omega_bound\n";
    for (const SweepRow& r : rows) {
        out << num(r.value.value) << ',' << num(r.summary.error_sum_final) << ','
            << (r.summary.settling_time ? num(*r.summary.settling_time) : std::string()) << ','
            << (r.summary.bounded ? "true" : "false") << ',' << num(r.summary.omega_bound) << '\n';
    }
}

void write_ratio_csv(std::ostream& out, const RatioReport& report) {
    out << "index,w_pos,w_neg,log_Sp,log_neg_Sn,ratio1,ratio2,log_lobe_ratio,log_lobe_bound\n";
    for (const RatioRow& r : report.rows) {
        out << r.index << ',' << num(r.w_pos) << ',' << num(r.w_neg) << ',' << num(r.log_sp) << ','
            << num(r.log_neg_sn) << ',' << num(r.ratio1) << ',' << num(r.ratio2) << ',' << num(r.log_lobe_ratio)
            << ',' << num(r.log_lobe_bound) << '\n';
    }
    out << "# verdict " << (report.verdict == Verdict::pass ? "PASS" : "FAIL");
    if (report.truncated) out << " (truncated)";
    if (!report.note.empty()) out << ": " << report.note;
    out << '\n';
}

int CsvTable::column(const std::string& name) const {
    for (std::size_t k = 0; k < header.size(); ++k)
        if (header[k] == name) return static_cast<int>(k);
    return -1;
}

std::vector<double> CsvTable::values(int col) const {
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r.at(static_cast<std::size_t>(col)));
    return out;
}

CsvTable read_csv(std::istream& in) {
    CsvTable t;
    std::string line;
    std::size_t line_no = 0;
    auto split = [](const std::string& s) {
        std::vector<std::string> cells;
        std::stringstream ss(s);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (!s.empty() && s.back() == ',') cells.emplace_back();
        return cells;
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto cells = split(line);
        if (t.header.empty()) {
            t.header = std::move(cells);
            continue;
        }
        if (cells.size() != t.header.size())
            throw ParseError("csv line " + std::to_string(line_no) + ": expected " + std::to_string(t.header.size()) +
                             " cells");
        std::vector<double> row;
        for (const auto& c : cells) {
            if (c.empty()) {
                row.push_back(std::numeric_limits<double>::quiet_NaN());
            } else if (c == "true" || c == "false") {
                row.push_back(c == "true" ? 1.0 : 0.0);
            } else {
                double v = 0.0;
                const auto res = std::from_chars(c.data(), c.data() + c.size(), v);
                if (res.ec != std::errc() || res.ptr != c.data() + c.size())
                    throw ParseError("csv line " + std::to_string(line_no) + ": not a number '" + c + "'");
                row.push_back(v);
            }
        }
        t.rows.push_back(std::move(row));
    }
    if (t.header.empty()) throw ParseError("csv: missing header");
    return t;
}

}  // namespace rescon
