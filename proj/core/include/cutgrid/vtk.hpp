#pragma once

#include <string>

#include "cutgrid/discretisation.hpp"

namespace cutgrid {

// Legacy ASCII unstructured grid: full interior cells as hexahedra, cut-cell
// interior polytopes triangulated into tetrahedra by a centroid fan.
// Returns the summed tetra/hexa volume (equals the interior volume measure).
double write_vtk_volume(const EmbeddedDiscretisation& disc,
                        const std::string& path);

// Legacy ASCII polydata of the boundary pieces, fan-triangulated, with the
// source facet label as cell data. Returns the triangle count.
int64_t write_vtk_boundary(const EmbeddedDiscretisation& disc,
                           const std::string& path);

}  // namespace cutgrid
