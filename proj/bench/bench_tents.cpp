// Serial reference vs layered OpenMP execution of one slab.
//   bench_tents --benchmark_filter=Slab

#include <benchmark/benchmark.h>

#include "tentsolve/layers.hpp"
#include "tentsolve/runner.hpp"

using namespace tentsolve;

namespace {

struct Setup {
  SimulationConfig config;
  std::shared_ptr<const DGSpace> space;
  std::vector<Material> materials;
  TentSlab slab;
  FieldVector u0;

  Setup(int n, int degree) : u0(make(n, degree)) {}

  FieldVector make(int n, int degree) {
    config.mesh.nx = config.mesh.ny = n;
    config.degree = degree;
    const auto mesh = build_mesh(config.mesh);
    space = std::make_shared<const DGSpace>(mesh, degree);
    materials = uniform_material(*mesh, 1, 1);
    slab = pitch_slab(mesh, std::vector<double>(mesh->num_elements(), 1.0), 0.5, config.sigma);
    return l2_project(space, exact_solution(config.solution), 0.0);
  }
};

void run_slab(benchmark::State& state, bool serial) {
  const Setup s(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  SimulationConfig config = s.config;
  config.serial_reference = serial;
  config.workers = serial ? 1 : max_workers();
  for (auto _ : state) {
    FieldVector u = s.u0;
    advance_slab(s.slab, *s.space, s.materials, config, u);
    benchmark::DoNotOptimize(u.values().data());
  }
  state.counters["tents"] = static_cast<double>(s.slab.tents.size());
  state.counters["layers"] = s.slab.num_levels();
  state.counters["workers"] = config.workers;
}

void SlabSerial(benchmark::State& state) { run_slab(state, true); }
void SlabLayered(benchmark::State& state) { run_slab(state, false); }

}  // namespace

BENCHMARK(SlabSerial)->Args({16, 2})->Args({32, 2})->Unit(benchmark::kMillisecond);
BENCHMARK(SlabLayered)->Args({16, 2})->Args({32, 2})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
