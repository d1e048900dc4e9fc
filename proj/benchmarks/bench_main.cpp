#include "qthermo/channels.hpp"
#include "qthermo/kraus.hpp"
#include "qthermo/nonmarkov.hpp"
#include "qthermo/thermo.hpp"

#include <benchmark/benchmark.h>

using namespace qthermo;

namespace {

ChannelModel ohmic(double s) {
    ChannelModel m;
    m.family = Family::OhmicPD;
    m.omega0 = 1.0;
    m.omega_c = 1.0;
    m.s = s;
    return m;
}

void BM_ApplyKraus(benchmark::State& state) {
    const KrausSet ks = kraus_gad(0.7, 0.4);
    const BlochState s0(0.4, 0.3, -0.5);
    for (auto _ : state) benchmark::DoNotOptimize(apply_kraus(ks, s0));
}
BENCHMARK(BM_ApplyKraus);

void BM_OhmicAttenuation(benchmark::State& state) {
    const double t = 0.5 * static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(dephasing_attenuation(t, 3.2, 1.0));
}
BENCHMARK(BM_OhmicAttenuation)->Arg(1)->Arg(10)->Arg(100);

void BM_LedgerAccumulate(benchmark::State& state) {
    ChannelModel m;
    m.family = Family::AD;
    m.gamma = 1.0;
    const Trajectory traj = sample_trajectory(m, BlochState(0.5, 0.0, -0.5), 8.0, 2001);
    for (auto _ : state) benchmark::DoNotOptimize(accumulate_ledger(traj));
}
BENCHMARK(BM_LedgerAccumulate);

void BM_MeasureNC(benchmark::State& state) {
    const ChannelModel m = ohmic(3.2);
    for (auto _ : state) benchmark::DoNotOptimize(measure_NC(m, 20.0));
}
BENCHMARK(BM_MeasureNC)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
