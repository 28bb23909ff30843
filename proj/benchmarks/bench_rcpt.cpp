// bench_rcpt.cpp — Micro-benchmarks for the analytic path and the Redfield solver.

#include <benchmark/benchmark.h>

#include "rcpt/mapping.hpp"
#include "rcpt/redfield.hpp"
#include "rcpt/timescales.hpp"

using namespace rcpt;

namespace {

model::ModelParams at(double lambda) {
    model::ModelParams p;
    p.lambda = lambda;
    return p;
}

void BM_DiagonalizeEffective(benchmark::State& st) {
    const auto p = at(5.0);
    for (auto _ : st) benchmark::DoNotOptimize(mapping::diagonalize_effective(p));
}
BENCHMARK(BM_DiagonalizeEffective);

void BM_Analyze(benchmark::State& st) {
    const auto p = at(5.0);
    for (auto _ : st) benchmark::DoNotOptimize(timescales::analyze(p));
}
BENCHMARK(BM_Analyze);

void BM_RedfieldGenerator(benchmark::State& st) {
    redfield::SimulationConfig cfg;
    cfg.method = static_cast<redfield::Method>(st.range(0));
    cfg.rc_levels = static_cast<int>(st.range(1));
    cfg.params = at(3.0);
    const auto sys = redfield::build_system(cfg);
    for (auto _ : st) benchmark::DoNotOptimize(redfield::build_redfield_generator(sys, 1.0));
    st.SetLabel(redfield::to_string(cfg.method) + " dim " + std::to_string(sys.dim()));
}
BENCHMARK(BM_RedfieldGenerator)
    ->Args({static_cast<int>(redfield::Method::EFFH), 0})
    ->Args({static_cast<int>(redfield::Method::RC), 4})
    ->Args({static_cast<int>(redfield::Method::RC), 10})
    ->Unit(benchmark::kMillisecond);

void BM_Simulate(benchmark::State& st) {
    redfield::SimulationConfig cfg;
    cfg.method = static_cast<redfield::Method>(st.range(0));
    cfg.rc_levels = static_cast<int>(st.range(1));
    cfg.params = at(3.0);
    for (auto _ : st) benchmark::DoNotOptimize(redfield::simulate(cfg));
    st.SetLabel(redfield::to_string(cfg.method) + " N=" + std::to_string(cfg.rc_levels));
}
BENCHMARK(BM_Simulate)
    ->Args({static_cast<int>(redfield::Method::EFFH), 0})
    ->Args({static_cast<int>(redfield::Method::UW), 0})
    ->Args({static_cast<int>(redfield::Method::RC), 4})
    ->Args({static_cast<int>(redfield::Method::RC), 6})
    ->Unit(benchmark::kMillisecond);

void BM_SteadyState(benchmark::State& st) {
    const auto p = at(5.0);
    for (auto _ : st) benchmark::DoNotOptimize(redfield::site_steady_state(redfield::Method::EFFH, p));
}
BENCHMARK(BM_SteadyState);

} // namespace

BENCHMARK_MAIN();
