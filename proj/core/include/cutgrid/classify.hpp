#pragma once

#include <map>
#include <vector>

#include "cutgrid/cutter.hpp"
#include "cutgrid/grid.hpp"
#include "cutgrid/location.hpp"

namespace cutgrid {

// Dense location assignment for every cell and face of the background mesh.
struct LocationMap {
  std::vector<Location> cell_location;
  std::vector<Location> face_location;

  Location cell(int64_t id) const { return cell_location[size_t(id)]; }
  Location face(int64_t id) const { return face_location[size_t(id)]; }
};

LocationMap make_location_map(const BackgroundMesh& mesh);

// Marks cut cells and copies their face seeds. A defined-vs-defined mismatch
// on a shared face is a seeding error naming the face.
LocationMap seed_locations(const BackgroundMesh& mesh,
                           const std::map<int64_t, CellCut>& cuts);
void seed_into(LocationMap& map, const BackgroundMesh& mesh,
               const std::map<int64_t, CellCut>& cuts);

enum class Traversal { kDepthFirst, kBreadthFirst };

// Integer-only flood fill over cell-face adjacency restricted to scope. Cut
// cells block propagation; components without a reachable seed stay
// undefined. Never reads mesh coordinates.
void propagate_in_place(const BackgroundMesh& mesh, LocationMap& map,
                        const std::vector<int64_t>& scope,
                        Traversal order = Traversal::kDepthFirst);

LocationMap propagate_location(const BackgroundMesh& mesh, const LocationMap& seeds,
                               const std::vector<int64_t>& scope,
                               Traversal order = Traversal::kDepthFirst);

// Parity of ray crossings from the point through the surface. Rays hitting a
// facet edge or vertex retry with a jittered direction, up to 8 attempts.
Location ray_parity_location(const SurfaceMesh& surface, const Vec3& point);

// Seed + propagate over the whole mesh. With no cuts, a single ray-parity
// query labels everything (surface required). Undefined leftovers from
// pathological face connectivity resolve by per-component ray parity.
LocationMap classify_serial(const BackgroundMesh& mesh,
                            const std::map<int64_t, CellCut>& cuts,
                            const SurfaceMesh* surface = nullptr);

}  // namespace cutgrid
