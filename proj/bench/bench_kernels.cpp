// Serial reference loops against the OpenMP kernels. Arg 0 is serial, 1 parallel.

#include "issprobe/audit.hpp"
#include "issprobe/registry.hpp"
#include "issprobe/rewards.hpp"
#include "issprobe/stability.hpp"
#include "issprobe/values.hpp"

#include <benchmark/benchmark.h>

using namespace issprobe;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(0) ? Exec::parallel : Exec::serial; }

void label(benchmark::State& state) { state.SetLabel(state.range(0) ? "parallel" : "serial"); }

void BM_CertifySensitivity(benchmark::State& state) {
  const auto cls = make_signed_power_class(5, 1.0, 0.5);
  const auto pairs = sample_box_pairs(Box::cube(5, -1, 1), 1, 10000, 3);
  SensitivityOptions o;
  o.exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(certify_sensitivity(cls, pairs, o).c_hat);
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(pairs.size()));
  label(state);
}

void BM_HolderOfValue(benchmark::State& state) {
  const SystemEntry e = make_system("piecewise_rotation:c=0.99,theta=1");
  ValueQuery q{e.system, e.policy, make_linear_reward(Vec::Unit(2, 0)), DiscountSchedule::constant(0.95)};
  const auto pairs = sample_state_pairs(e.system, 256, 5);
  HolderOptions o;
  o.exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(holder_of_value(q, pairs, o).C_hat);
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(pairs.size()));
  label(state);
}

void BM_EstimateGains(benchmark::State& state) {
  const SystemEntry e = make_system("projection:d=3");
  GainSamplerSpec spec = gain_sampler_for(e);
  spec.n_state = spec.n_input = 256;
  spec.n_mixed = 128;
  const auto items = sample_gain_items(e.system, spec, 100);
  GainOptions o;
  o.exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(estimate_gains(e.system, e.policy, items, 100, o).envelope.c1);
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(items.size()));
  label(state);
}

void BM_ValueBatch(benchmark::State& state) {
  ValueQuery q{make_scalar_linear(0.9, 4), Policy::zero(4), make_norm_reward(), DiscountSchedule::constant(0.99)};
  std::vector<Vec> xs;
  for (const auto& [x, y] : sample_state_pairs(q.system, 512, 7)) xs.push_back(x);
  for (auto _ : state) benchmark::DoNotOptimize(value_batch(q, xs, exec_of(state)));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(xs.size()));
  label(state);
}

}  // namespace

BENCHMARK(BM_CertifySensitivity)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_HolderOfValue)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_EstimateGains)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ValueBatch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
