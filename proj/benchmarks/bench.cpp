#include <benchmark/benchmark.h>

#include "kerrecs/ecs.hpp"
#include "kerrecs/elements.hpp"
#include "kerrecs/fock.hpp"
#include "kerrecs/interferometer.hpp"

using namespace kerrecs;

namespace {

void BM_Beamsplitter(benchmark::State& state) {
  const double alpha = static_cast<double>(state.range(0));
  const int n = truncation_rule(alpha);
  const TwoModeState in = TwoModeState::product(coherent_state(alpha, n), ModeState::vacuum(n));
  for (auto _ : state) benchmark::DoNotOptimize(beamsplitter_apply(in));
  state.counters["n_max"] = n;
}
BENCHMARK(BM_Beamsplitter)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_Displacement(benchmark::State& state) {
  const double alpha = static_cast<double>(state.range(0));
  const ModeState in = coherent_state(alpha, truncation_rule(alpha + 1.0));
  for (auto _ : state) benchmark::DoNotOptimize(apply_displacement(Complex{0.5, -0.5}, in));
}
BENCHMARK(BM_Displacement)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMicrosecond);

void BM_Squeeze(benchmark::State& state) {
  const ModeState in = ModeState::vacuum(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(apply_squeeze(Complex{0.6, 0.2}, in));
}
BENCHMARK(BM_Squeeze)->Arg(40)->Arg(80)->Unit(benchmark::kMicrosecond);

void BM_MachZehnderNumeric(benchmark::State& state) {
  InterferometerConfig c;
  c.alpha = static_cast<double>(state.range(0));
  c.chi1 = RationalChi(1, 4);
  c.chi2 = 0.1;
  c.delta = 0.3;
  for (auto _ : state) benchmark::DoNotOptimize(simulate_numeric(c, PipelineKind::mach_zehnder));
}
BENCHMARK(BM_MachZehnderNumeric)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_MachZehnderAnalytic(benchmark::State& state) {
  InterferometerConfig c;
  c.alpha = 2.0;
  c.chi1 = RationalChi(1, static_cast<std::int64_t>(state.range(0)));
  c.chi2 = RationalChi(1, 4);
  for (auto _ : state) {
    const auto sup = simulate_analytic(c, PipelineKind::mach_zehnder);
    benchmark::DoNotOptimize(synthesize_fock(sup, c.effective_n_max(PipelineKind::mach_zehnder)));
  }
}
BENCHMARK(BM_MachZehnderAnalytic)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_Entropy(benchmark::State& state) {
  InterferometerConfig c;
  c.alpha = static_cast<double>(state.range(0));
  c.chi1 = RationalChi(1, 4);
  c.chi2 = RationalChi(0, 1);
  c.delta = 1.5707963267948966;
  const TwoModeState psi = simulate_numeric(c, PipelineKind::mach_zehnder);
  for (auto _ : state) benchmark::DoNotOptimize(entanglement_entropy(psi));
}
BENCHMARK(BM_Entropy)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
