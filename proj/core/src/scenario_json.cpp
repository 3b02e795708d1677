#include "rescon/scenario_json.hpp"

#include "rescon/error.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <iomanip>
#include <set>
#include <sstream>

namespace rescon {

using json = nlohmann::ordered_json;

namespace {

// Typed accessors that report the JSON path on failure.
class Reader {
public:
    Reader(const json& node, std::string path) : node_(node), path_(std::move(path)) {}

    const json& node() const { return node_; }
    const std::string& path() const { return path_; }

    void expect_object(std::initializer_list<const char*> allowed) const {
        if (!node_.is_object()) fail("expected an object");
        const std::set<std::string> ok(allowed.begin(), allowed.end());
        for (const auto& [key, _] : node_.items())
            if (!ok.count(key)) throw ParseError(path_ + "/" + key + ": unknown key");
    }

    bool has(const char* key) const { return node_.contains(key); }

    Reader child(const char* key) const {
        if (!node_.contains(key)) throw ParseError(path_ + "/" + key + ": missing required key");
        return {node_.at(key), path_ + "/" + key};
    }

    Reader at(std::size_t i) const { return {node_.at(i), path_ + "/" + std::to_string(i)}; }

    double number() const {
        if (!node_.is_number()) fail("expected a number");
        return node_.get<double>();
    }

    double number(const char* key, double fallback) const { return has(key) ? child(key).number() : fallback; }
    double number(const char* key) const { return child(key).number(); }

    bool boolean(const char* key, bool fallback) const {
        if (!has(key)) return fallback;
        const Reader r = child(key);
        if (!r.node_.is_boolean()) r.fail("expected a boolean");
        return r.node_.get<bool>();
    }

    std::string string() const {
        if (!node_.is_string()) fail("expected a string");
        return node_.get<std::string>();
    }

    std::size_t array_size() const {
        if (!node_.is_array()) fail("expected an array");
        return node_.size();
    }

    std::size_t count() const {
        const double v = number();
        if (v < 0.0 || v != std::floor(v)) fail("expected a nonnegative integer");
        return static_cast<std::size_t>(v);
    }

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(path_ + ": " + what); }

private:
    const json& node_;
    std::string path_;
};

json signal_to_json(const ScalarSignal& s) {
    if (s.kind == SignalKind::constant) return json{{"kind", "constant"}, {"value", s.offset}};
    return json{{"kind", "sinusoid"},      {"offset", s.offset}, {"amplitude", s.amplitude},
                {"frequency", s.frequency}, {"phase", s.phase},   {"trig", s.uses_cos ? "cos" : "sin"}};
}

ScalarSignal signal_from_json(const Reader& r) {
    if (r.node().is_number()) return ScalarSignal::constant(r.number());
    const std::string kind = r.child("kind").string();
    if (kind == "constant") {
        r.expect_object({"kind", "value"});
        return ScalarSignal::constant(r.number("value"));
    }
    if (kind != "sinusoid") r.child("kind").fail("unknown signal kind '" + kind + "'");
    r.expect_object({"kind", "offset", "amplitude", "frequency", "phase", "trig"});
    ScalarSignal s;
    s.kind = SignalKind::sinusoid;
    s.offset = r.number("offset", 0.0);
    s.amplitude = r.number("amplitude");
    s.frequency = r.number("frequency");
    s.phase = r.number("phase", 0.0);
    const std::string trig = r.has("trig") ? r.child("trig").string() : "sin";
    if (trig != "sin" && trig != "cos") r.child("trig").fail("trig must be 'sin' or 'cos'");
    s.uses_cos = trig == "cos";
    return s;
}

const char* regressor_name(RegressorKind k) {
    switch (k) {
        case RegressorKind::linear: return "linear";
        case RegressorKind::x_sin_x: return "x_sin_x";
        case RegressorKind::x_cos_x: return "x_cos_x";
        case RegressorKind::x_tanh_x: return "x_tanh_x";
        case RegressorKind::product: return "product";
    }
    return "linear";
}

json regressors_to_json(const std::vector<Regressor>& rs) {
    json arr = json::array();
    for (const auto& r : rs) arr.push_back({{"kind", regressor_name(r.kind)}, {"var", r.var == StateVar::x1 ? "x1" : "x2"}});
    return arr;
}

std::vector<Regressor> regressors_from_json(const Reader& r) {
    std::vector<Regressor> out;
    for (std::size_t k = 0; k < r.array_size(); ++k) {
        const Reader e = r.at(k);
        e.expect_object({"kind", "var"});
        Regressor reg;
        const std::string kind = e.child("kind").string();
        if (kind == "linear") reg.kind = RegressorKind::linear;
        else if (kind == "x_sin_x") reg.kind = RegressorKind::x_sin_x;
        else if (kind == "x_cos_x") reg.kind = RegressorKind::x_cos_x;
        else if (kind == "x_tanh_x") reg.kind = RegressorKind::x_tanh_x;
        else if (kind == "product") reg.kind = RegressorKind::product;
        else e.child("kind").fail("unknown regressor '" + kind + "'");
        const std::string var = e.has("var") ? e.child("var").string() : "x1";
        if (var != "x1" && var != "x2") e.child("var").fail("var must be 'x1' or 'x2'");
        reg.var = var == "x1" ? StateVar::x1 : StateVar::x2;
        out.push_back(reg);
    }
    return out;
}

Vector numbers_from_json(const Reader& r) {
    Vector out;
    for (std::size_t k = 0; k < r.array_size(); ++k) out.push_back(r.at(k).number());
    return out;
}

json bounding_to_json(const BoundingFunction& b) { return {{"offset", b.offset}, {"weight", b.weight}}; }

BoundingFunction bounding_from_json(const Reader& r) {
    r.expect_object({"offset", "weight"});
    return {r.number("offset", 1.0), r.number("weight", 1.0)};
}

json nussbaum_to_json(const NussbaumSpec& n) {
    return {{"a", n.a}, {"b", n.b}, {"c", n.c}, {"omega", n.omega},
            {"variant", n.variant == TrigKind::sine ? "sine" : "cosine"}};
}

TrigKind trig_kind_from(const Reader& r) {
    const std::string v = r.string();
    if (v == "sine" || v == "sin") return TrigKind::sine;
    if (v == "cosine" || v == "cos") return TrigKind::cosine;
    r.fail("variant must be 'sine' or 'cosine'");
}

NussbaumSpec nussbaum_from_json(const Reader& r) {
    r.expect_object({"a", "b", "c", "omega", "variant"});
    NussbaumSpec n;
    n.a = r.number("a");
    n.b = r.number("b", 0.0);
    n.c = r.number("c", 1.0);
    n.omega = r.number("omega");
    n.variant = r.has("variant") ? trig_kind_from(r.child("variant")) : TrigKind::sine;
    return n;
}

json controller_to_json(const ControllerParams& p) {
    return {{"c1", p.c1},           {"c2", p.c2},         {"gamma", p.gamma},
            {"epsilon", p.epsilon}, {"varsigma", p.varsigma}, {"nussbaum", nussbaum_to_json(p.nussbaum)}};
}

ControllerParams controller_from_json(const Reader& r) {
    r.expect_object({"c1", "c2", "gamma", "epsilon", "varsigma", "nussbaum"});
    ControllerParams p;
    p.c1 = r.number("c1");
    p.c2 = r.number("c2");
    p.gamma = r.number("gamma");
    p.epsilon = r.number("epsilon");
    p.varsigma = r.number("varsigma");
    p.nussbaum = nussbaum_from_json(r.child("nussbaum"));
    return p;
}

json to_json(const Scenario& s) {
    json j;
    j["version"] = s.version;
    j["name"] = s.name;

    json edges = json::array();
    for (const Edge& e : s.topology.edges()) edges.push_back({e.from + 1, e.to + 1});
    j["topology"] = {{"agents", s.topology.size()}, {"edges", edges}};
    j["reference"] = {{"k", s.reference.k}, {"alpha", s.reference.alpha}};
    j["integration"] = {{"dt", s.integration.dt},
                        {"horizon", s.integration.horizon},
                        {"record_every", s.integration.record_every},
                        {"blow_up_threshold", s.integration.blow_up_threshold}};
    j["flags"] = {{"squared_gain_term", s.flags.squared_gain_term},
                  {"adaptive_gain_enabled", s.flags.adaptive_gain_enabled},
                  {"verbose_trace", s.flags.verbose_trace},
                  {"reference_only", s.flags.reference_only}};

    json agents = json::array();
    for (const AgentConfig& a : s.agents) {
        const AgentModel& m = a.model;
        agents.push_back({{"psi1", regressors_to_json(m.psi1)},
                          {"theta1", m.theta1},
                          {"psi2", regressors_to_json(m.psi2)},
                          {"theta2", m.theta2},
                          {"g1", signal_to_json(m.g1)},
                          {"g2", signal_to_json(m.g2)},
                          {"o1", signal_to_json(m.o1)},
                          {"o2", signal_to_json(m.o2)},
                          {"phi1", bounding_to_json(m.phi1)},
                          {"phi2", bounding_to_json(m.phi2)},
                          {"controller", controller_to_json(a.controller)},
                          {"initial",
                           {{"x1", a.initial.x1},
                            {"x2", a.initial.x2},
                            {"s", a.initial.s},
                            {"L", a.initial.L},
                            {"F1", a.initial.F1},
                            {"F2", a.initial.F2}}}});
    }
    j["agents"] = agents;

    json rho_s = json::array();
    for (const auto& sig : s.attack.rho_s) rho_s.push_back(signal_to_json(sig));
    json rho_a = json::array();
    for (const auto& sig : s.attack.rho_a) rho_a.push_back(signal_to_json(sig));
    const AttackBounds& b = s.attack.bounds;
    j["attack"] = {{"rho_o", signal_to_json(s.attack.rho_o)},
                   {"rho_s", rho_s},
                   {"rho_a", rho_a},
                   {"bounds",
                    {{"rho_o", {b.o_lower, b.o_upper}},
                     {"rho_s", {b.s_lower, b.s_upper}},
                     {"rho_a", {b.a_lower, b.a_upper}},
                     {"rate", b.rate}}}};
    return j;
}

std::pair<double, double> interval_from(const Reader& r) {
    if (r.array_size() != 2) r.fail("expected [lower, upper]");
    return {r.at(0).number(), r.at(1).number()};
}

Scenario from_json(const json& root) {
    const Reader r(root, "");
    r.expect_object({"version", "name", "topology", "reference", "integration", "flags", "agents", "attack"});
    Scenario s;
    s.version = r.has("version") ? static_cast<int>(r.child("version").count()) : 1;
    s.name = r.has("name") ? r.child("name").string() : "";

    const Reader topo = r.child("topology");
    topo.expect_object({"agents", "edges"});
    const std::size_t n = topo.child("agents").count();
    s.topology = Digraph(n);
    const Reader edges = topo.child("edges");
    for (std::size_t k = 0; k < edges.array_size(); ++k) {
        const Reader e = edges.at(k);
        if (e.array_size() != 2) e.fail("edge must be [from, to]");
        const std::size_t from = e.at(0).count();
        const std::size_t to = e.at(1).count();
        if (from < 1 || from > n || to < 1 || to > n) e.fail("edge endpoint outside 1.." + std::to_string(n));
        if (from == to) e.fail("self loops are not allowed");
        s.topology.add_edge(from - 1, to - 1);
    }

    const Reader ref = r.child("reference");
    ref.expect_object({"k", "alpha"});
    s.reference = {ref.number("k"), ref.number("alpha")};

    if (r.has("integration")) {
        const Reader in = r.child("integration");
        in.expect_object({"dt", "horizon", "record_every", "blow_up_threshold"});
        s.integration.dt = in.number("dt", s.integration.dt);
        s.integration.horizon = in.number("horizon", s.integration.horizon);
        if (in.has("record_every")) s.integration.record_every = in.child("record_every").count();
        s.integration.blow_up_threshold = in.number("blow_up_threshold", s.integration.blow_up_threshold);
    }
    if (r.has("flags")) {
        const Reader f = r.child("flags");
        f.expect_object({"squared_gain_term", "adaptive_gain_enabled", "verbose_trace", "reference_only"});
        s.flags.squared_gain_term = f.boolean("squared_gain_term", false);
        s.flags.adaptive_gain_enabled = f.boolean("adaptive_gain_enabled", true);
        s.flags.verbose_trace = f.boolean("verbose_trace", false);
        s.flags.reference_only = f.boolean("reference_only", false);
    }

    const Reader agents = r.child("agents");
    for (std::size_t i = 0; i < agents.array_size(); ++i) {
        const Reader a = agents.at(i);
        a.expect_object({"psi1", "theta1", "psi2", "theta2", "g1", "g2", "o1", "o2", "phi1", "phi2", "controller",
                         "initial"});
        AgentConfig cfg;
        AgentModel& m = cfg.model;
        m.psi1 = regressors_from_json(a.child("psi1"));
        m.theta1 = numbers_from_json(a.child("theta1"));
        m.psi2 = regressors_from_json(a.child("psi2"));
        m.theta2 = numbers_from_json(a.child("theta2"));
        m.g1 = signal_from_json(a.child("g1"));
        m.g2 = signal_from_json(a.child("g2"));
        m.o1 = a.has("o1") ? signal_from_json(a.child("o1")) : ScalarSignal{};
        m.o2 = a.has("o2") ? signal_from_json(a.child("o2")) : ScalarSignal{};
        if (a.has("phi1")) m.phi1 = bounding_from_json(a.child("phi1"));
        if (a.has("phi2")) m.phi2 = bounding_from_json(a.child("phi2"));
        cfg.controller = controller_from_json(a.child("controller"));

        const Reader ini = a.child("initial");
        ini.expect_object({"x1", "x2", "s", "L", "F1", "F2"});
        cfg.initial = {ini.number("x1"),       ini.number("x2"),       ini.number("s"),
                       ini.number("L", 1.0), ini.number("F1", 0.0), ini.number("F2", 0.0)};
        s.agents.push_back(std::move(cfg));
    }

    const Reader att = r.child("attack");
    att.expect_object({"rho_o", "rho_s", "rho_a", "bounds"});
    s.attack.rho_o = signal_from_json(att.child("rho_o"));
    const Reader rs = att.child("rho_s");
    for (std::size_t i = 0; i < rs.array_size(); ++i) s.attack.rho_s.push_back(signal_from_json(rs.at(i)));
    const Reader ra = att.child("rho_a");
    for (std::size_t i = 0; i < ra.array_size(); ++i) s.attack.rho_a.push_back(signal_from_json(ra.at(i)));
    const Reader b = att.child("bounds");
    b.expect_object({"rho_o", "rho_s", "rho_a", "rate"});
    std::tie(s.attack.bounds.o_lower, s.attack.bounds.o_upper) = interval_from(b.child("rho_o"));
    std::tie(s.attack.bounds.s_lower, s.attack.bounds.s_upper) = interval_from(b.child("rho_s"));
    std::tie(s.attack.bounds.a_lower, s.attack.bounds.a_upper) = interval_from(b.child("rho_a"));
    s.attack.bounds.rate = b.number("rate");
    return s;
}

json parse_text(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
}

}  // namespace

Scenario parse_scenario(std::string_view json_text) {
    const json root = parse_text(json_text);
    try {
        return from_json(root);
    } catch (const json::exception& e) {
        throw ParseError(std::string("scenario document: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("scenario document: ") + e.what());
    }
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Scenario load_scenario(const std::string& path_or_builtin) {
    if (path_or_builtin == "builtin:four-agent") return builtin_four_agent();
    return parse_scenario(read_text_file(path_or_builtin));
}

Scenario parse_and_validate(std::string_view json_text) {
    Scenario s = parse_scenario(json_text);
    validate_scenario(s);
    return s;
}

std::string dump_scenario(const Scenario& s, int indent) { return to_json(s).dump(indent); }

std::string scenario_hash(const Scenario& s) {
    const std::string text = to_json(s).dump();
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream ss;
    ss << std::hex << std::setw(16) << std::setfill('0') << h;
    return ss.str();
}

std::string dump_nussbaum(const NussbaumSpec& spec) { return nussbaum_to_json(spec).dump(); }

NussbaumSpec parse_nussbaum(std::string_view json_text) {
    const json root = parse_text(json_text);
    return nussbaum_from_json(Reader(root, ""));
}

VerifyRequest parse_verify_request(std::string_view json_text) {
    const json root = parse_text(json_text);
    const Reader r(root, "");
    VerifyRequest req;
    if (r.has("max_index")) req.max_index = static_cast<int>(r.child("max_index").count());

    if (r.has("raw")) {
        r.expect_object({"raw", "max_index"});
        const Reader raw = r.child("raw");
        raw.expect_object({"power", "omega", "variant"});
        const double power = raw.number("power");
        RawFunction fn;
        fn.omega = raw.number("omega", 1.0);
        fn.layout = raw.has("variant") ? trig_kind_from(raw.child("variant")) : TrigKind::sine;
        const double omega = fn.omega;
        const TrigKind layout = fn.layout;
        fn.fn = [power, omega, layout](double nu) {
            const double tr = layout == TrigKind::sine ? std::sin(omega * nu) : std::cos(omega * nu);
            return std::pow(std::abs(nu), power) * tr;
        };
        fn.label = "nu^" + json(power).dump() + (layout == TrigKind::sine ? " sin" : " cos");
        req.candidate = fn;
        return req;
    }
    if (r.has("spec")) {
        r.expect_object({"spec", "max_index"});
        req.candidate = nussbaum_from_json(r.child("spec"));
        return req;
    }
    json bare = root;
    bare.erase("max_index");
    req.candidate = nussbaum_from_json(Reader(bare, ""));
    return req;
}

}  // namespace rescon
