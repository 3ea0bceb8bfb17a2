// Hot paths: lattice enumeration, the two strong-irreducibility deciders
// (with the mutual cross-check disabled so each path is timed alone), and
// integer-lattice canonicalization.

#include <benchmark/benchmark.h>

#include "smlab/finmod.hpp"
#include "smlab/finring.hpp"
#include "smlab/predicates.hpp"
#include "smlab/zlattice.hpp"

using namespace smlab;

namespace {

ModulePtr plane(int p, int k) {
  RingPtr r = ring_zmod(p);
  std::vector<ModulePtr> parts(static_cast<size_t>(k), mod_regular(r));
  ModulePtr m = parts.front();
  for (size_t i = 1; i < parts.size(); ++i) m = mod_direct_sum(m, parts[i]);
  return m;
}

void bench_enumerate_z12(benchmark::State& state) {
  ModulePtr m = mod_regular(ring_zmod(12));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_submodules(m, 512));
}
BENCHMARK(bench_enumerate_z12);

void bench_enumerate_plane(benchmark::State& state) {
  ModulePtr m = plane(2, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_submodules(m, 512));
  state.SetLabel("(Z/2)^" + std::to_string(state.range(0)));
}
BENCHMARK(bench_enumerate_plane)->Arg(3)->Arg(4)->Arg(5);

void bench_si_exhaustive(benchmark::State& state) {
  set_cross_check(false);
  ModulePtr m = plane(2, static_cast<int>(state.range(0)));
  SubmoduleLattice lat = enumerate_submodules(m, 512);
  for (auto _ : state)
    for (int i = 0; i + 1 < lat.count(); ++i)
      benchmark::DoNotOptimize(is_strongly_irreducible_exhaustive(lat, i));
  set_cross_check(true);
  state.SetLabel("(Z/2)^" + std::to_string(state.range(0)) + " all proper submodules");
}
BENCHMARK(bench_si_exhaustive)->Arg(3)->Arg(4);

void bench_si_cyclic(benchmark::State& state) {
  set_cross_check(false);
  ModulePtr m = plane(2, static_cast<int>(state.range(0)));
  SubmoduleLattice lat = enumerate_submodules(m, 512);
  for (auto _ : state)
    for (int i = 0; i + 1 < lat.count(); ++i)
      benchmark::DoNotOptimize(is_strongly_irreducible_cyclic(lat.at(i)));
  set_cross_check(true);
  state.SetLabel("(Z/2)^" + std::to_string(state.range(0)) + " all proper submodules");
}
BENCHMARK(bench_si_cyclic)->Arg(3)->Arg(4);

void bench_colon_identities(benchmark::State& state) {
  set_cross_check(false);
  ModulePtr m = plane(2, 4);
  SubmoduleLattice lat = enumerate_submodules(m, 512);
  for (auto _ : state) benchmark::DoNotOptimize(colon_identities(lat));
  set_cross_check(true);
}
BENCHMARK(bench_colon_identities);

void bench_z_canonicalize(benchmark::State& state) {
  const int rank = static_cast<int>(state.range(0));
  ZMat cols;
  // deterministic skewed generators, more columns than the rank
  long long v = 37;
  for (int j = 0; j < rank + 2; ++j) {
    ZVec col(static_cast<size_t>(rank));
    for (int i = 0; i < rank; ++i) {
      v = v * 6364136223846793005ll + 1442695040888963407ll;
      col[static_cast<size_t>(i)] = static_cast<long>((v >> 33) % 1000);
    }
    cols.push_back(col);
  }
  for (auto _ : state) benchmark::DoNotOptimize(z_canonicalize(rank, cols));
  state.SetLabel("rank " + std::to_string(rank));
}
BENCHMARK(bench_z_canonicalize)->Arg(2)->Arg(4)->Arg(8);

void bench_z_invariants(benchmark::State& state) {
  const int rank = 6;
  ZMat rel;
  for (int j = 0; j < rank; ++j) {
    ZVec col(static_cast<size_t>(rank), 0);
    col[static_cast<size_t>(j)] = 2 * (j + 1);
    if (j + 1 < rank) col[static_cast<size_t>(j + 1)] = 3;
    rel.push_back(col);
  }
  for (auto _ : state) benchmark::DoNotOptimize(z_module(rank, rel));
}
BENCHMARK(bench_z_invariants);

void bench_z_decide(benchmark::State& state) {
  ZModulePtr m = z_module(1, {});
  ZSubmodule n = z_submodule(m, {{4}});
  for (auto _ : state) benchmark::DoNotOptimize(z_decide_strongly_irreducible(n, 8));
}
BENCHMARK(bench_z_decide);

} // namespace

BENCHMARK_MAIN();
