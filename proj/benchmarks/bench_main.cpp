#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "salvo/scenario.hpp"
#include "salvo/settling.hpp"
#include "salvo/sim.hpp"
#include "salvo/sliding_surface.hpp"

namespace {

salvo::CommGraph random_graph(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::vector<salvo::Edge> edges;
    for (int v = 1; v < n; ++v) {
        edges.push_back({static_cast<int>(rng() % v), v, 1.0});
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (rng() % 4 == 0) {
                edges.push_back({i, j, 1.0});
            }
        }
    }
    return salvo::CommGraph(n, edges);
}

void BM_pow_odd(benchmark::State& state) {
    const salvo::OddRatio e(5, 7);
    double x = -123.456;
    for (auto _ : state) {
        benchmark::DoNotOptimize(salvo::pow_odd(x, e));
        x = -x;
    }
}
BENCHMARK(BM_pow_odd);

void BM_algebraic_connectivity(benchmark::State& state) {
    const salvo::CommGraph g = random_graph(static_cast<int>(state.range(0)), 12345);
    for (auto _ : state) {
        benchmark::DoNotOptimize(salvo::algebraic_connectivity(g));
    }
}
BENCHMARK(BM_algebraic_connectivity)->Arg(5)->Arg(8)->Arg(16)->Arg(32);

void BM_resolve_controls(benchmark::State& state) {
    const salvo::Scenario s = salvo::builtin_scenario("paper-sec4");
    const salvo::CommGraph& g = s.schedule.segments().front().graph;
    std::vector<salvo::MissileState> states;
    for (const auto& ic : s.agents) {
        states.push_back(salvo::init_state(ic));
    }
    const std::vector<double> prev(states.size(), 0.0);
    const auto mode = state.range(0) == 0 ? salvo::ControlResolutionMode::delayed
                                          : salvo::ControlResolutionMode::fixed_point;
    for (auto _ : state) {
        benchmark::DoNotOptimize(salvo::resolve_controls(states, g, prev, mode, s.guidance));
    }
}
BENCHMARK(BM_resolve_controls)->Arg(0)->Arg(1);

void BM_closed_loop_step(benchmark::State& state) {
    const salvo::Scenario s = salvo::builtin_scenario("paper-sec4");
    const salvo::SimConfig cfg = s.sim_config();
    std::vector<salvo::MissileState> states;
    for (const auto& ic : s.agents) {
        states.push_back(salvo::init_state(ic));
    }
    const std::vector<double> prev(states.size(), 0.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(salvo::step(states, 0.0, prev, cfg));
    }
}
BENCHMARK(BM_closed_loop_step);

void BM_settling_oracle(benchmark::State& state) {
    salvo::FixedTimeSpec spec;
    spec.a = 0.25;
    spec.b = 2.0;
    spec.m = 11;
    spec.n = 9;
    spec.p = 5;
    spec.q = 7;
    for (auto _ : state) {
        benchmark::DoNotOptimize(salvo::settling_time_numeric(spec, 1e4, 1e-6));
    }
}
BENCHMARK(BM_settling_oracle);

}  // namespace

int main(int argc, char** argv) {
    benchmark::Initialize(&argc, argv);
    benchmark::RunSpecifiedBenchmarks();
    return 0;
}
