#include <benchmark/benchmark.h>
#include <omp.h>

#include <vector>

#include "equivoc/optimizer.hpp"
#include "equivoc/simulator.hpp"

using namespace equivoc;

namespace {

JointSource toy_source() {
  const std::vector<double> pa{0.5, 0.5};
  return JointSource::from_channels(pa, Channel::bsc(0.2), Channel::bsc(0.3));
}

AuxiliarySystem toy_system() {
  return {Channel::bsc(0.2), Channel::bsc(0.1), Channel::bsc(0.2), Reconstruction(2, 2, {0, 0, 1, 1})};
}

CodeConfig toy_config(int n) {
  CodeConfig cfg;
  cfg.n = n;
  cfg.S1 = 0.5;
  cfg.S2 = 0.5;
  cfg.SC = 0.5;
  cfg.R1 = 0.3;
  cfg.R2 = 0.3;
  cfg.RC = 0.4;
  cfg.seed = 21;
  return cfg;
}

const std::vector<RateConstraint> kConstraints = {{0.3, 0.3, 0.2}, {0.5, 0.2, 0.2}, {0.6, 0.6, 0.1}};

BruteForceOptions grid_options() {
  BruteForceOptions bo;
  bo.step = 0.2;
  return bo;
}

// Range(0) is the worker count for parallel kernels.
void set_threads(const benchmark::State& state) { omp_set_num_threads(static_cast<int>(state.range(0))); }

void BM_BruteForceSerial(benchmark::State& state) {
  const auto s = toy_source();
  const auto d = DistortionMeasure::hamming(s.na());
  for (auto _ : state)
    benchmark::DoNotOptimize(brute_force_search_reference(s, d, {2, 2, 2}, kConstraints, grid_options()));
}

void BM_BruteForceParallel(benchmark::State& state) {
  set_threads(state);
  const auto s = toy_source();
  const auto d = DistortionMeasure::hamming(s.na());
  for (auto _ : state)
    benchmark::DoNotOptimize(brute_force_search(s, d, {2, 2, 2}, kConstraints, grid_options()));
}

std::vector<std::uint32_t> toy_encoder(const JointSource& s, int n) {
  return encoder_map(generate_codebooks(s, toy_system(), toy_config(n)), s.na());
}

void BM_EquivocationSerial(benchmark::State& state) {
  const auto s = toy_source();
  const int n = static_cast<int>(state.range(0));
  const auto enc = toy_encoder(s, n);
  for (auto _ : state) benchmark::DoNotOptimize(exact_equivocation_reference(enc, s, n));
}

void BM_EquivocationParallel(benchmark::State& state) {
  set_threads(state);
  const auto s = toy_source();
  const int n = static_cast<int>(state.range(1));
  const auto enc = toy_encoder(s, n);
  for (auto _ : state) benchmark::DoNotOptimize(exact_equivocation(enc, s, n));
}

constexpr long kTrials = 4000;

void BM_ExperimentSerial(benchmark::State& state) {
  const auto s = toy_source();
  for (auto _ : state) {
    const auto inst = generate_codebooks(s, toy_system(), toy_config(8));
    benchmark::DoNotOptimize(run_experiment_reference(s, inst, kTrials));
  }
}

void BM_ExperimentParallel(benchmark::State& state) {
  set_threads(state);
  const auto s = toy_source();
  ExperimentOptions o;
  o.equivocation = false;
  for (auto _ : state) benchmark::DoNotOptimize(run_experiment(s, toy_system(), toy_config(8), kTrials, o));
}

}  // namespace

BENCHMARK(BM_BruteForceSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BruteForceParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EquivocationSerial)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EquivocationParallel)->Args({1, 8})->Args({4, 8})->Args({1, 12})->Args({4, 12})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExperimentSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExperimentParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
