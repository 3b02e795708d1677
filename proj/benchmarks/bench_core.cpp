#include "fixtures.hpp"
#include "rescon/controller.hpp"
#include "rescon/graph.hpp"
#include "rescon/nussbaum.hpp"
#include "rescon/simulator.hpp"

#include <benchmark/benchmark.h>

#include <vector>

using namespace rescon;

static void BM_NussbaumEval(benchmark::State& state) {
    const NussbaumSpec spec = slow_growth_nussbaum();
    double nu = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(eval(spec, nu));
        nu = nu > 20.0 ? 0.0 : nu + 0.01;
    }
}
BENCHMARK(BM_NussbaumEval);

static void BM_ControllerEvaluate(benchmark::State& state) {
    const Scenario sc = builtin_four_agent();
    const AgentConfig& a = sc.agents[0];
    const LocalMeasurement m{-2.0, -1.0, 1.5};
    const ControllerState st{1.0, 0.0, 0.0};
    for (auto _ : state)
        benchmark::DoNotOptimize(
            evaluate_controller(m, st, a.controller, sc.controller_options(), a.model.phi1, a.model.phi2));
}
BENCHMARK(BM_ControllerEvaluate);

static void BM_ClosedLoopRate(benchmark::State& state) {
    const ClosedLoop loop(builtin_four_agent());
    const Vector x = loop.initial_state();
    Vector r(x.size());
    for (auto _ : state) {
        loop.rate(0.0, x, r);
        benchmark::DoNotOptimize(r.data());
    }
}
BENCHMARK(BM_ClosedLoopRate);

static void BM_IntegratePair(benchmark::State& state) {
    const Scenario sc = fixture::gentle_pair(static_cast<double>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(integrate(sc).records.size());
    state.SetItemsProcessed(state.iterations() * state.range(0) * 1000);
}
BENCHMARK(BM_IntegratePair)->Arg(1)->Arg(10)->Unit(benchmark::kMillisecond);

static void BM_SpectralAnalysis(benchmark::State& state) {
    const std::vector<Edge> edges{{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}, {2, 0}};
    const Digraph g = Digraph::from_edges(4, edges);
    for (auto _ : state) benchmark::DoNotOptimize(analyze(g).lambda2);
}
BENCHMARK(BM_SpectralAnalysis);

static void BM_Certify(benchmark::State& state) {
    const NussbaumSpec spec = slow_growth_nussbaum();
    const int max_index = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(certify_nfunction(spec, max_index).verdict);
}
BENCHMARK(BM_Certify)->Arg(12)->Arg(50)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
