// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "fixtures.hpp"
#include "oracles.hpp"
#include "rescon/controller.hpp"
#include "rescon/graph.hpp"
#include "rescon/nussbaum.hpp"
#include "rescon/reference.hpp"
#include "rescon/scenario.hpp"
#include "rescon/simulator.hpp"
#include "rescon/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace rescon;

namespace {

struct Result {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id;
    const char* name;
    double time_limit;  // seconds; 0 means no limit
    std::function<Result()> body;
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

std::string describe(const SimTrace& tr) {
    std::ostringstream ss;
    ss << to_string(tr.outcome) << " at t=" << tr.end_time;
    if (!tr.diagnostic.empty()) ss << " (" << tr.diagnostic << ")";
    return ss.str();
}

Matrix laplacian_oracle(std::size_t n, const std::vector<Edge>& edges) {
    Matrix l(n, n);
    for (const Edge& e : edges) {
        l(e.to, e.from) -= 1.0;
        l(e.to, e.to) += 1.0;
    }
    return l;
}

// 1: lambda2(Q) from the library solver against inertia bisection on every
// strongly connected digraph with 2..4 nodes.
Result spectral_oracle() {
    std::size_t graphs = 0;
    double worst_lambda = 0.0;
    double worst_residual = 0.0;
    for (std::size_t n = 2; n <= 4; ++n) {
        for (const auto& edges : oracle::all_digraphs(n)) {
            if (!oracle::strongly_connected_by_closure(n, edges)) continue;
            ++graphs;
            const SpectralData sp = analyze(Digraph::from_edges(n, edges));
            const Matrix l = laplacian_oracle(n, edges);
            Matrix q(n, n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) q(i, j) = sp.h[i] * l(i, j) + l(j, i) * sp.h[j];
            const double lambda2 = oracle::eigenvalue_by_bisection(q, 1, 1e-13);
            worst_lambda = std::max(worst_lambda, std::abs(lambda2 - sp.lambda2));
            for (std::size_t j = 0; j < n; ++j) {
                double r = 0.0;
                for (std::size_t i = 0; i < n; ++i) r += sp.h[i] * l(i, j);
                worst_residual = std::max(worst_residual, std::abs(r));
            }
        }
    }
    return {graphs > 0 && worst_lambda <= 1e-8 && worst_residual <= 1e-10,
            std::to_string(graphs) + " graphs, max |dlambda2| " + fmt("%.2e", worst_lambda) + ", max |h^T L| " +
                fmt("%.2e", worst_residual)};
}

std::optional<double> consensus_time(const SimTrace& tr) {
    std::vector<Vector> s;
    for (const auto& r : tr.records) {
        Vector v;
        for (const auto& a : r.state) v.push_back(a.s);
        s.push_back(v);
    }
    return detect_consensus_time(tr.times(), s, 1e-6);
}

// 2: finite-time reference consensus.
Result reference_consensus() {
    const double dt = 1e-3;
    const std::vector<Edge> pair{{0, 1}, {1, 0}};
    const SimTrace two = integrate(fixture::reference_only(Digraph::from_edges(2, pair), {1.0, -1.0}, {1.0, 0.5}, dt, 3.0));
    const auto t2 = consensus_time(two);
    const bool analytic = t2 && std::abs(*t2 - std::sqrt(2.0)) <= 2.0 * dt;

    const std::vector<Edge> ring{{0, 1}, {1, 2}, {2, 3}, {3, 0}};
    const Digraph g = Digraph::from_edges(4, ring);
    const SpectralData sp = analyze(g);
    const ReferenceParams p{2.0, 0.8};
    const double q = decay_constant(p, sp, 4);
    const double slope = q * (1.0 - p.alpha) / (1.0 + p.alpha);
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    int bound_ok = 0, decay_ok = 0;
    double worst_margin = INFINITY;
    for (int trial = 0; trial < 20; ++trial) {
        Vector s0(4);
        for (auto& v : s0) v = u(rng);
        const double w0 = lyapunov_w(s0, sp.h, p.alpha, g);
        const double t0 = settling_bound_t0(w0, p, sp, 4);
        const SimTrace tr = integrate(fixture::reference_only(g, s0, p, dt, t0 + 1.0));
        const auto ts = consensus_time(tr);
        if (ts && *ts <= t0) ++bound_ok;
        if (ts) worst_margin = std::min(worst_margin, t0 - *ts);
        const double root0 = std::pow(w0, 1.0 / (1.0 + p.alpha));
        bool decay = true;
        for (const auto& r : tr.records) {
            Vector s;
            for (const auto& a : r.state) s.push_back(a.s);
            const double w = lyapunov_w(s, sp.h, p.alpha, g);
            if (std::pow(w, 1.0 / (1.0 + p.alpha)) > std::max(root0 - slope * r.t, 0.0) + 10.0 * dt) decay = false;
        }
        if (decay) ++decay_ok;
    }
    return {analytic && bound_ok == 20 && decay_ok == 20,
            "pair t*=" + (t2 ? fmt("%.4f", *t2) : std::string("none")) + " (sqrt2=1.4142), ring t*<=T0 " +
                std::to_string(bound_ok) + "/20 (min slack " + fmt("%.3f", worst_margin) + " s), linear decay " +
                std::to_string(decay_ok) + "/20"};
}

// 3: N-Function certification.
Result certification() {
    const RatioReport slow = certify_nfunction(slow_growth_nussbaum(), 12);
    const RatioReport classic = certify_nfunction(classic_nussbaum(), 12);
    RawFunction poly;
    poly.fn = [](double v) { return v * v * std::sin(v); };
    poly.omega = 1.0;
    poly.layout = TrigKind::sine;
    poly.label = "nu^2 sin";
    const RatioReport weak = certify_nfunction(poly, 12);
    const double weak_r1 = weak.rows.empty() ? 0.0 : weak.rows.back().ratio1;
    const auto final_ratio = [](const RatioReport& r) {
        return r.rows.empty() ? INFINITY : std::max(r.rows.back().ratio1, r.rows.back().ratio2);
    };
    const bool pass = slow.verdict == Verdict::pass && classic.verdict == Verdict::pass &&
                      final_ratio(slow) < 0.05 && final_ratio(classic) < 0.05 && slow.domination_holds() &&
                      classic.domination_holds() && weak.verdict == Verdict::fail && weak_r1 > 0.5;
    return {pass, "slow-growth final ratio " + fmt("%.2e", final_ratio(slow)) + ", classic " +
                      fmt("%.2e", final_ratio(classic)) + ", nu^2 sin ratio1 " + fmt("%.3f", weak_r1) +
                      (weak.verdict == Verdict::fail ? " FAIL" : " PASS") + ", domination " +
                      (slow.domination_holds() && classic.domination_holds() ? "holds" : "violated")};
}

// 4: all four partials of v1 against central differences.
Result derivative_oracle() {
    const Scenario sc = builtin_four_agent();
    const ControllerParams& p = sc.agents[0].controller;
    const BoundingFunction& phi1 = sc.agents[0].model.phi1;
    const auto v1 = [&](double x, double s, double L, double F) {
        return virtual_control(beta1(x, s, L, p, phi1), x - s, {L, F, 0.0}, p).v1;
    };
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> xs(-5.0, 5.0), ls(1.0, 3.0), fs(-3.0, 3.0);
    int ok = 0;
    double worst = 0.0;
    for (int k = 0; k < 200; ++k) {
        const double x = xs(rng), s = xs(rng), L = ls(rng), F = fs(rng);
        const VirtualPartials d = v1_partials(x, s, {L, F, 0.0}, p, phi1);
        const double h = 1e-5;
        const double fd[4] = {(v1(x + h, s, L, F) - v1(x - h, s, L, F)) / (2 * h),
                              (v1(x, s + h, L, F) - v1(x, s - h, L, F)) / (2 * h),
                              (v1(x, s, L + h, F) - v1(x, s, L - h, F)) / (2 * h),
                              (v1(x, s, L, F + h) - v1(x, s, L, F - h)) / (2 * h)};
        const double an[4] = {d.d_x1, d.d_s, d.d_L, d.d_F1};
        const double scale = 1.0 + std::abs(v1(x, s, L, F));
        bool all = true;
        for (int c = 0; c < 4; ++c) {
            const double diff = std::abs(an[c] - fd[c]);
            const double rel = diff / std::max(std::abs(fd[c]), 1e-300);
            // Partials that vanish to rounding are compared on the scale of v1.
            if (rel > 1e-5 && diff > 1e-6 * scale) all = false;
            if (std::abs(fd[c]) > 1e-6 * scale) worst = std::max(worst, rel);
        }
        if (all) ++ok;
    }
    return {ok == 200, std::to_string(ok) + "/200 points, worst relative error " + fmt("%.2e", worst)};
}

struct Sec4Runs {
    Scenario printed = builtin_four_agent();
    Scenario squared;
    SimTrace printed_trace;
    SimTrace squared_trace;

    Sec4Runs() {
        squared = printed;
        squared.flags.squared_gain_term = true;
        printed_trace = integrate(printed);
        squared_trace = integrate(squared);
    }
};

const Sec4Runs& sec4() {
    static const Sec4Runs runs;
    return runs;
}

bool gains_ok(const SimTrace& tr, double threshold) {
    const auto& m = tr.monitor;
    return tr.outcome == Outcome::completed && m.min_L_increment >= 0.0 && m.min_F1_increment >= 0.0 &&
           m.min_F2_increment >= 0.0 && std::isfinite(m.peaks.max()) && m.peaks.max() <= threshold;
}

// 5: monotone gains, bounded signals on the built-in scenario.
Result gains_and_boundedness() {
    const Sec4Runs& r = sec4();
    const double thr = r.printed.integration.blow_up_threshold;
    const bool printed = gains_ok(r.printed_trace, thr);
    const bool squared = gains_ok(r.squared_trace, thr);
    return {printed, "printed L term: " + describe(r.printed_trace) + "; L^2 term: " + describe(r.squared_trace) +
                         (squared ? " [ok]" : " [fails]")};
}

// 6: residual-set convergence on the built-in scenario.
Result residual_set() {
    const Sec4Runs& r = sec4();
    const SimTrace& tr = r.printed_trace;
    if (tr.outcome != Outcome::completed) return {false, "run did not complete: " + describe(tr)};
    const Summary s = compute_summary(tr, r.printed);
    const double rho = r.printed.attack.intensity();
    const double eps = r.printed.max_epsilon();
    const double t_end = tr.records.back().t;
    double worst_e = 0.0, worst_track = 0.0, worst_spread = 0.0;
    for (const auto& rec : tr.records) {
        if (rec.t >= 0.8 * t_end)
            for (const auto& sig : rec.signals) worst_e = std::max(worst_e, std::abs(sig.e));
        if (s.settling_time && rec.t >= *s.settling_time) {
            worst_spread = std::max(worst_spread, output_spread(rec));
            const double target = s.s0_empirical / r.printed.attack.rho_o.value(rec.t);
            for (const auto& a : rec.state) worst_track = std::max(worst_track, std::abs(a.x1 - target));
        }
    }
    const bool pass = s.settling_time && *s.settling_time <= 30.0 && worst_spread <= 0.25 * 1.05 &&
                      worst_e < 0.1 && worst_track <= rho * eps * 1.05;
    return {pass, "T_s=" + (s.settling_time ? fmt("%.2f", *s.settling_time) : std::string("none")) +
                      ", spread " + fmt("%.4f", worst_spread) + ", tail |e| " + fmt("%.4f", worst_e) +
                      ", |y-s0/rho_o| " + fmt("%.4f", worst_track)};
}

std::vector<SweepRow> sweep(SweepParameter p, std::vector<SweepValue> values) {
    SweepSpec spec;
    spec.base = builtin_four_agent();
    spec.parameter = p;
    spec.values = std::move(values);
    return run_sweep(spec);
}

double tail_band(const SweepRow& row, std::size_t a, std::size_t b) {
    const auto& recs = row.trace.records;
    const double t_end = recs.back().t;
    double band = 0.0;
    for (const auto& r : recs)
        if (r.t >= (1.0 - kTailFraction) * t_end) band = std::max(band, std::abs(r.state[a].x1 - r.state[b].x1));
    return band;
}

double peak_output(const SweepRow& row, std::size_t a) {
    double peak = 0.0;
    for (const auto& r : row.trace.records) peak = std::max(peak, std::abs(r.state[a].x1));
    return peak;
}

// 7: sweep trends.
Result sweep_trends() {
    const auto eps = sweep(SweepParameter::epsilon, {{0.05, {}, ""}, {0.1, {}, ""}, {0.2, {}, ""}});
    const double expect[3] = {0.125, 0.25, 0.5};
    bool bounds_exact = true, bands_ok = true;
    int completed = 0;
    for (int k = 0; k < 3; ++k) {
        if (std::abs(eps[k].summary.omega_bound - expect[k]) > 1e-15) bounds_exact = false;
        if (eps[k].trace.outcome == Outcome::completed) ++completed;
        else bands_ok = false;
        if (eps[k].trace.outcome == Outcome::completed && eps[k].summary.tail_spread > eps[k].summary.omega_bound)
            bands_ok = false;
    }

    const auto gam = sweep(SweepParameter::gamma, {{0.0, {}, ""}, {1.5, {}, ""}});
    const bool gam_done = gam[0].trace.outcome == Outcome::completed && gam[1].trace.outcome == Outcome::completed;
    const bool gam_ok = gam_done && tail_band(gam[0], 0, 3) > tail_band(gam[1], 0, 3);

    const auto nus = sweep(SweepParameter::nussbaum,
                           {{0.0, slow_growth_nussbaum(), "slow"}, {1.0, classic_nussbaum(), "classic"}});
    const bool nus_done = nus[0].trace.outcome == Outcome::completed && nus[1].trace.outcome == Outcome::completed;
    const bool nus_ok = nus_done && peak_output(nus[0], 0) < peak_output(nus[1], 0);

    std::string detail = std::string("omega bounds ") + (bounds_exact ? "0.125/0.25/0.5 exact" : "mismatch") +
                         ", eps runs completed " + std::to_string(completed) + "/3";
    detail += std::string(", gamma ablation ") + (gam_done ? (gam_ok ? "wider band" : "not wider") : "runs diverged");
    detail += std::string(", Nussbaum peak |y1| ") + (nus_done ? (nus_ok ? "lower" : "not lower") : "runs diverged");
    return {bounds_exact && bands_ok && gam_ok && nus_ok, detail};
}

// 8: determinism and step-halving sanity.
Result determinism() {
    const Sec4Runs& r = sec4();
    const SimTrace again = integrate(r.printed);
    bool identical = again.outcome == r.printed_trace.outcome && again.end_time == r.printed_trace.end_time &&
                     again.records.size() == r.printed_trace.records.size();
    for (std::size_t k = 0; identical && k < again.records.size(); ++k)
        identical = again.records[k].t == r.printed_trace.records[k].t &&
                    again.records[k].state == r.printed_trace.records[k].state;

    Scenario half = r.printed;
    half.integration.dt /= 2.0;
    half.integration.record_every *= 2;
    const SimTrace fine = integrate(half);
    const bool both_done = r.printed_trace.outcome == Outcome::completed && fine.outcome == Outcome::completed;
    double diff = INFINITY;
    if (both_done) {
        const Vector a = pack(r.printed_trace.records.back().state);
        const Vector b = pack(fine.records.back().state);
        diff = 0.0;
        for (std::size_t k = 0; k < a.size(); ++k) diff = std::max(diff, std::abs(a[k] - b[k]));
    }
    return {identical && both_done && diff <= 1e-6,
            std::string("repeat run ") + (identical ? "bit-identical" : "differs") + ", dt/2 " +
                (both_done ? "max-norm change " + fmt("%.2e", diff) : "run did not complete: " + describe(fine))};
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "spectral oracle", 1.0, spectral_oracle},
        {2, "finite-time reference consensus", 10.0, reference_consensus},
        {3, "N-Function certification", 5.0, certification},
        {4, "controller derivative oracle", 1.0, derivative_oracle},
        {5, "gain monotonicity and boundedness", 0.0, gains_and_boundedness},
        {6, "residual-set convergence", 0.0, residual_set},
        {7, "sweep trends", 0.0, sweep_trends},
        {8, "determinism and convergence sanity", 0.0, determinism},
    };
    int passed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Result out;
        try {
            out = c.body();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = c.time_limit <= 0.0 || secs < c.time_limit;
        if (!in_time) out.detail += "; exceeded " + fmt("%.0f", c.time_limit) + " s";
        const bool pass = out.pass && in_time;
        passed += pass;
        std::printf("criterion %d %s: %s (%.2f s) %s\n", c.id, c.name, pass ? "PASS" : "FAIL", secs,
                    out.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", passed, criteria.size());
    return passed == static_cast<int>(criteria.size()) ? 0 : 1;
}
