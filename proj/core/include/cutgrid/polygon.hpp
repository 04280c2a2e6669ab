#pragma once

#include <vector>

#include "cutgrid/plane.hpp"
#include "cutgrid/vec3.hpp"

namespace cutgrid {

// Planar, convex polygon with an orientation normal. Used for clipped surface
// facets (boundary pieces) carried per cut cell.
struct Polygon {
  std::vector<Vec3> points;   // CCW as seen from the normal side
  Vec3 normal;                // unit, outward with respect to the solid
  int label = 0;              // surface region tag
  int source_facet = -1;      // originating facet index in the surface mesh

  bool empty() const { return points.size() < 3; }
};

double polygon_area(const Polygon& poly);
Vec3 polygon_centroid(const Polygon& poly);

// Keeps the non-positive side of the plane. Vertices within tol of the plane
// are snapped onto it. Degenerate results (fewer than 3 points) come back empty.
Polygon clip_polygon(const Polygon& poly, const Plane& plane, double tol);

// Successive clip against the 6 box planes.
Polygon clip_polygon_to_box(const Polygon& poly, const AABB& box, double tol);

}  // namespace cutgrid
