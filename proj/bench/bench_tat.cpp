#include <benchmark/benchmark.h>

#include <cmath>

#include "tat/kernels.hpp"
#include "tat/recon.hpp"

using namespace tat;

namespace {

struct Fixture {
  SphereGrid sphere;
  ProfileSet d, f;
  ReconGrid grid;

  explicit Fixture(int points_per_axis) : sphere(make_sphere_grid(3, 32)), grid(make_recon_grid(3, 0.95, points_per_axis)) {
    const TimeGrid t = make_time_grid(2.0, 256);
    for (ProfileSet* p : {&d, &f}) {
      p->grid = t;
      p->detectors = static_cast<int>(sphere.size());
      p->lo = 0;
      p->hi = t.samples - 1;
      p->values.resize(sphere.size() * t.samples);
    }
    for (std::size_t j = 0; j < sphere.size(); ++j)
      for (int k = 0; k < t.samples; ++k) {
        const double s = t.at(k);
        d.values[j * t.samples + k] = std::sin(3.0 * s + 0.01 * j);
        f.values[j * t.samples + k] = std::cos(2.0 * s - 0.02 * j);
      }
  }

  BackprojectionJob job() const { return {&sphere, &d, 1.0, &f, -2.0, true, {}}; }
};

void BM_BackprojectSerial(benchmark::State& state) {
  const Fixture fx(static_cast<int>(state.range(0)));
  const auto job = fx.job();
  for (auto _ : state) benchmark::DoNotOptimize(backproject_serial(job, fx.grid.points));
  state.SetItemsProcessed(state.iterations() * fx.grid.size() * fx.sphere.size());
}

void BM_BackprojectParallel(benchmark::State& state) {
  const Fixture fx(static_cast<int>(state.range(0)));
  const auto job = fx.job();
  for (auto _ : state) benchmark::DoNotOptimize(backproject(job, fx.grid.points));
  state.SetItemsProcessed(state.iterations() * fx.grid.size() * fx.sphere.size());
}

void BM_RadonRS(benchmark::State& state) {
  const Phantom f(3, {{ComponentKind::SmoothBump, {0.1, -0.05, 0.05}, 0.5, 1.0}});
  const SphereGrid sphere = make_sphere_grid(3, static_cast<int>(state.range(0)));
  const TimeGrid t = make_time_grid(2.0, 256);
  for (auto _ : state) benchmark::DoNotOptimize(radon_rs(f, sphere, t));
}

void BM_Reconstruct(benchmark::State& state) {
  const Phantom f(3, {{ComponentKind::SmoothBump, {0.1, -0.05, 0.05}, 0.5, 1.0}});
  const DataPanel wave = wave_trace(f, make_sphere_grid(3, 32), make_time_grid(2.0, 256));
  const ReconGrid grid = make_recon_grid(3, 0.95, 17);
  FormulaSpec spec;
  spec.parallel = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(reconstruct(spec, wave, grid));
}

}  // namespace

BENCHMARK(BM_BackprojectSerial)->Arg(9)->Arg(17)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BackprojectParallel)->Arg(9)->Arg(17)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RadonRS)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Reconstruct)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
