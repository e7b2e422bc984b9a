#include <benchmark/benchmark.h>

#include "widthkit/bench.hpp"
#include "widthkit/constructions.hpp"
#include "widthkit/conversions.hpp"
#include "widthkit/random.hpp"
#include "widthkit/sat.hpp"

using namespace widthkit;

namespace {

LayeredCircuit fixed_circuit(unsigned n, unsigned size, std::uint64_t seed) {
  Rng rng(seed);
  RandomCircuitParams p;
  p.basis = Basis::U2;
  p.n_actual = n;
  p.max_guess = 3;
  p.min_size = size;
  p.max_size = size;
  p.max_width = 3;
  return random_layered_circuit(rng, p);
}

void BM_TruthTable(benchmark::State& state) {
  const Circuit c = build_parity(static_cast<unsigned>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(truth_table(c));
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << state.range(0)));
}
BENCHMARK(BM_TruthTable)->DenseRange(12, 20, 4);

void BM_BuildParity(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(build_parity(static_cast<unsigned>(state.range(0))));
}
BENCHMARK(BM_BuildParity)->RangeMultiplier(4)->Range(16, 4096);

void BM_CircuitToBp(benchmark::State& state) {
  const LayeredCircuit lc = fixed_circuit(6, static_cast<unsigned>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(circuit_to_bp(lc));
}
BENCHMARK(BM_CircuitToBp)->Arg(8)->Arg(16)->Arg(32);

void BM_Determinize(benchmark::State& state) {
  const LayeredCircuit lc = fixed_circuit(6, static_cast<unsigned>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(determinize(lc));
}
BENCHMARK(BM_Determinize)->Arg(8)->Arg(16)->Arg(32);

void BM_BpToWidthCircuit(benchmark::State& state) {
  Rng rng(3);
  const BranchingProgram bp = random_bp(rng, 8, static_cast<unsigned>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(bp_to_width_circuit(bp));
}
BENCHMARK(BM_BpToWidthCircuit)->RangeMultiplier(2)->Range(8, 128);

void BM_NdbwSat(benchmark::State& state) {
  const LayeredCircuit lc = fixed_circuit(static_cast<unsigned>(state.range(0)), 20, 4);
  const BpSatBackend backend = exhaustive_backend();
  for (auto _ : state) benchmark::DoNotOptimize(ndbw_sat(lc, backend));
}
BENCHMARK(BM_NdbwSat)->Arg(8)->Arg(12)->Arg(16);

void BM_BruteForceSat(benchmark::State& state) {
  const LayeredCircuit lc = fixed_circuit(static_cast<unsigned>(state.range(0)), 20, 4);
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_sat(lc.circuit));
}
BENCHMARK(BM_BruteForceSat)->Arg(8)->Arg(12)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
