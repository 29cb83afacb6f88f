#include <benchmark/benchmark.h>

#include "fpb/montecarlo.hpp"

namespace {

using namespace fpb;

void BM_JointFromModel(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(joint_from_model(0.2, ProbeKind::Povm));
    }
}
BENCHMARK(BM_JointFromModel);

void BM_RenyiFromJoint(benchmark::State& state) {
    JointDistribution t = table2(0.2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(renyi_from_joint(t));
    }
}
BENCHMARK(BM_RenyiFromJoint);

void BM_BornProb(benchmark::State& state) {
    ProbeParams p(0.2);
    PureState psi = joint_output(Bb84Symbol::H, p);
    Operator effect = tensor(bob_measurement(Basis::HV).effects[0],
                             conclusive_povm(p).effects[1]);
    for (auto _ : state) {
        benchmark::DoNotOptimize(born_prob(psi, effect));
    }
}
BENCHMARK(BM_BornProb);

void BM_SampleTrial(benchmark::State& state) {
    SimConfig cfg;
    cfg.trials = 1;
    cfg.seed = 42;
    cfg.pe = 0.2;
    SessionSampler sampler(cfg);
    std::uint64_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sampler.sample(i++));
    }
}
BENCHMARK(BM_SampleTrial);

void BM_RunSession(benchmark::State& state) {
    SimConfig cfg;
    cfg.trials = static_cast<std::uint64_t>(state.range(0));
    cfg.seed = 42;
    cfg.pe = 0.2;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_session(cfg));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RunSession)->Arg(10000)->Arg(100000);

void BM_RunSessionLossy(benchmark::State& state) {
    SimConfig cfg;
    cfg.trials = static_cast<std::uint64_t>(state.range(0));
    cfg.seed = 42;
    cfg.scenario = Scenario::Lossy;
    cfg.eta = 0.3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_session(cfg));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RunSessionLossy)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();
