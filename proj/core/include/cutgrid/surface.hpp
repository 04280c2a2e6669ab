#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "cutgrid/vec3.hpp"

namespace cutgrid {

// Oriented boundary triangulation: welded vertices, facet index triples,
// outward unit normals recomputed from winding, and per-facet region labels.
struct SurfaceMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> facets;
  std::vector<Vec3> facet_normals;
  std::vector<int> facet_labels;
  int dropped_degenerate = 0;  // warning counter from parsing

  size_t facet_count() const { return facets.size(); }
};

AABB bounding_box(const SurfaceMesh& mesh);

struct WatertightReport {
  bool watertight = false;
  std::vector<std::pair<int, int>> open_edges;          // edges with 1 incident facet
  std::vector<std::pair<int, int>> non_manifold_edges;  // > 2 incident facets
  std::vector<std::pair<int, int>> misoriented_edges;   // 2 facets, same traversal
};

WatertightReport is_watertight(const SurfaceMesh& mesh);

struct SurfaceMeasures {
  double enclosed_volume = 0.0;  // divergence theorem; positive for outward orientation
  double surface_area = 0.0;
  bool volume_reliable = true;   // false when the mesh is not watertight
};

SurfaceMeasures surface_measures(const SurfaceMesh& mesh);

// Flips every facet (winding and normal). Swaps inside and outside.
SurfaceMesh flipped(const SurfaceMesh& mesh);

SurfaceMesh translated(const SurfaceMesh& mesh, const Vec3& t);
SurfaceMesh scaled(const SurfaceMesh& mesh, double s);

// Builds a welded mesh from per-facet vertex triples (STL soup order).
// weld_tol 0 means exact-coordinate welding. Degenerate facets (zero area
// after welding) are dropped and counted; all-degenerate input is an error.
SurfaceMesh build_surface(const std::vector<std::array<Vec3, 3>>& triangles,
                          const std::vector<Vec3>& stored_normals,
                          const std::vector<int>& labels, double weld_tol = 0.0);

}  // namespace cutgrid
