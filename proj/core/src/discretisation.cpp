#include "cutgrid/discretisation.hpp"

#include <chrono>
#include <cmath>

#include "cutgrid/errors.hpp"

namespace cutgrid {

namespace {

double now_seconds() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

double cell_volume(const BackgroundMesh& mesh) {
  return mesh.spacing.x * mesh.spacing.y * mesh.spacing.z;
}

void finalize(EmbeddedDiscretisation& disc, const SurfaceMesh& surface) {
  const double vc = cell_volume(disc.mesh);
  Measures& m = disc.measures;
  for (int64_t cell = 0; cell < disc.mesh.total_cells(); ++cell) {
    switch (disc.map.cell_location[size_t(cell)]) {
      case Location::kIn:
        disc.interior_cells.push_back(cell);
        m.interior_volume += vc;
        break;
      case Location::kOut:
        disc.exterior_cells.push_back(cell);
        m.exterior_volume += vc;
        break;
      case Location::kCut:
        break;
      default:
        throw GeometryError("undefined cell " + std::to_string(cell) +
                            " after classification");
    }
  }
  for (const auto& [cell, cut] : disc.cuts) {
    m.interior_volume += cut.interior_volume();
    m.exterior_volume += cut.exterior_volume();
    m.boundary_area += cut.boundary_area();
  }
  const AABB domain = disc.mesh.domain();
  const Vec3 ext = domain.extent();
  m.domain_volume = ext.x * ext.y * ext.z;
  m.e_bbox = std::abs(m.interior_volume + m.exterior_volume - m.domain_volume) /
             m.domain_volume;

  auto ref = surface_measures(surface);
  m.interior_reliable = ref.volume_reliable && ref.enclosed_volume > 0.0;
  m.reference_volume = ref.enclosed_volume;
  if (m.interior_reliable)
    m.e_interior = std::abs(m.interior_volume - ref.enclosed_volume) /
                   std::abs(ref.enclosed_volume);
}

}  // namespace

Measures compute_measures(const BackgroundMesh& mesh, const LocationMap& map,
                          const std::map<int64_t, CellCut>& cuts,
                          const SurfaceMesh& surface) {
  EmbeddedDiscretisation tmp;
  tmp.mesh = mesh;
  tmp.map = map;
  tmp.cuts = cuts;
  finalize(tmp, surface);
  return tmp.measures;
}

EmbeddedDiscretisation discretise_serial(const SurfaceMesh& surface,
                                         std::array<int, 3> cells,
                                         double enlargement,
                                         const CutParams& params) {
  BackgroundMesh mesh =
      build_background_mesh(bounding_box(surface), cells, enlargement);
  return discretise_serial(surface, mesh, params);
}

EmbeddedDiscretisation discretise_serial(const SurfaceMesh& surface,
                                         const BackgroundMesh& mesh,
                                         const CutParams& params) {
  EmbeddedDiscretisation disc;
  disc.mesh = mesh;

  double t0 = now_seconds();
  disc.cuts = cut_serial(mesh, surface, params);
  double t1 = now_seconds();
  disc.timings.push_back({"cut", t1 - t0});

  disc.map = classify_serial(mesh, disc.cuts, &surface);
  double t2 = now_seconds();
  disc.timings.push_back({"classify", t2 - t1});

  finalize(disc, surface);
  disc.timings.push_back({"measures", now_seconds() - t2});
  return disc;
}

EmbeddedDiscretisation discretise_simulated(const SurfaceMesh& surface,
                                            std::array<int, 3> cells,
                                            std::array<int, 3> parts,
                                            double enlargement,
                                            const CutParams& params) {
  BackgroundMesh mesh =
      build_background_mesh(bounding_box(surface), cells, enlargement);
  return discretise_simulated(surface, mesh, parts, params);
}

EmbeddedDiscretisation discretise_simulated(const SurfaceMesh& surface,
                                            const BackgroundMesh& mesh,
                                            std::array<int, 3> parts,
                                            const CutParams& params) {
  const AABB domain = mesh.domain();
  const AABB surf_box = bounding_box(surface);
  if (!domain.contains(surf_box.min_corner) || !domain.contains(surf_box.max_corner))
    throw GeometryError("surface escapes the artificial domain");

  EmbeddedDiscretisation disc;
  disc.mesh = mesh;

  double t0 = now_seconds();
  CoarsePartition partition = build_partition(mesh, parts);
  disc.fine_ranks = partition.rank_count();

  DistributedOutcome outcome = run_distributed(mesh, partition, surface, params);
  double t1 = now_seconds();
  disc.timings.push_back({"distributed", t1 - t0});

  MergedDiscretisation merged = merge_ranks(mesh, partition, outcome);
  disc.map = std::move(merged.map);
  disc.cuts = std::move(merged.cuts);
  disc.trace = std::move(outcome.trace);
  disc.overlap_ok = overlap_contract_held(outcome);
  double t2 = now_seconds();
  disc.timings.push_back({"merge", t2 - t1});

  finalize(disc, surface);
  disc.timings.push_back({"measures", now_seconds() - t2});
  return disc;
}

}  // namespace cutgrid
