#pragma once

#include "cutgrid/surface.hpp"

namespace cutgrid {

// Built-in closed test solids, outward-oriented and welded.

// Axis-aligned cube [0,1]^3, 12 facets. Volume 1, area 6.
SurfaceMesh unit_cube_mesh();

// Corner tetrahedron (0,0,0),(1,0,0),(0,1,0),(0,0,1). Volume 1/6.
SurfaceMesh corner_tetra_mesh();

// Icosahedron subdivided `subdivisions` times and projected onto a sphere of
// the given radius. Facet count is 20 * 4^subdivisions (5120 at 4 levels).
SurfaceMesh icosphere_mesh(int subdivisions, double radius = 1.0);

// L-shaped prism: the unit square minus the quadrant [0.5,1]x[0.5,1],
// extruded over z in [0,1]. Volume 3/4. Has one vertical reflex edge.
SurfaceMesh l_prism_mesh();

}  // namespace cutgrid
