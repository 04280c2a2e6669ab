#include <benchmark/benchmark.h>

#include "cutgrid/classify.hpp"
#include "cutgrid/cutter.hpp"
#include "cutgrid/discretisation.hpp"
#include "cutgrid/shapes.hpp"

using namespace cutgrid;

namespace {

void BM_SplitPolytope(benchmark::State& state) {
  Polytope box = make_box({{0, 0, 0}, {1, 1, 1}});
  Plane plane = Plane::from_point_normal({0.37, 0.41, 0.53},
                                         normalized(Vec3{1.0, 0.7, 0.4}));
  for (auto _ : state) {
    auto parts = split_polytope(box, plane, 1e-12, kFaceTagSplit);
    benchmark::DoNotOptimize(parts);
  }
}
BENCHMARK(BM_SplitPolytope);

void BM_CutSerial(benchmark::State& state) {
  SurfaceMesh sphere = icosphere_mesh(int(state.range(0)), 1.0);
  BackgroundMesh mesh =
      build_background_mesh(bounding_box(sphere), {16, 16, 16}, 0.4);
  for (auto _ : state) {
    auto cuts = cut_serial(mesh, sphere);
    benchmark::DoNotOptimize(cuts);
  }
  state.counters["facets"] = double(sphere.facet_count());
}
BENCHMARK(BM_CutSerial)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_Propagate(benchmark::State& state) {
  SurfaceMesh sphere = icosphere_mesh(3, 1.0);
  BackgroundMesh mesh =
      build_background_mesh(bounding_box(sphere), {24, 24, 24}, 0.4);
  auto cuts = cut_serial(mesh, sphere);
  LocationMap seeds = seed_locations(mesh, cuts);
  std::vector<int64_t> scope(size_t(mesh.total_cells()));
  for (int64_t i = 0; i < mesh.total_cells(); ++i) scope[size_t(i)] = i;
  for (auto _ : state) {
    LocationMap map = propagate_location(mesh, seeds, scope);
    benchmark::DoNotOptimize(map);
  }
}
BENCHMARK(BM_Propagate)->Unit(benchmark::kMillisecond);

void BM_SimulatedPipeline(benchmark::State& state) {
  SurfaceMesh sphere = icosphere_mesh(3, 1.0);
  const int n = int(state.range(0));
  const int p = n > 16 ? 2 : 1;
  for (auto _ : state) {
    auto disc = discretise_simulated(sphere, {n, n, n}, {p, p, p}, 0.4);
    benchmark::DoNotOptimize(disc);
  }
}
BENCHMARK(BM_SimulatedPipeline)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
