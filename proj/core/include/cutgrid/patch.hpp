#pragma once

#include <array>
#include <utility>
#include <vector>

#include "cutgrid/plane.hpp"
#include "cutgrid/vec3.hpp"

namespace cutgrid {

// A connected bundle of surface facets sharing a vertex pool. Adjacency is
// implied by shared vertex-index pairs with opposite traversal.
struct FacetPatch {
  std::vector<Vec3> points;
  std::vector<std::array<int, 3>> tris;
  std::vector<Vec3> normals;  // outward unit, per triangle
};

struct ReflexEdge {
  std::pair<int, int> key;  // sorted vertex-index pair, global ordering handle
  Vec3 a, b;                // endpoints, b - a is the direction traversed by f1
  Vec3 n1, n2;              // normals of the two incident facets
  int f1 = -1, f2 = -1;     // patch-local facet indices
};

// True when the dihedral angle through the interior exceeds pi: the edge is
// concave as seen from outside. edge_dir is the direction traversed by the
// facet owning n1.
bool is_reflex(const Vec3& n1, const Vec3& n2, const Vec3& edge_dir,
               double tau_reflex);

// Interior edges of the patch whose dihedral is concave, sorted by key.
std::vector<ReflexEdge> reflex_edges(const FacetPatch& patch, double tau_reflex);

// Splitting plane through the edge: the normal bisector of n1 + n2 projected
// orthogonal to the edge, oriented so the facet carrying n1 lies on the
// non-positive side. Near-antipodal normals fall back to n1 x edge.
Plane plane_through_reflex_edge(const Vec3& a, const Vec3& b, const Vec3& n1,
                                const Vec3& n2, double tol);

}  // namespace cutgrid
