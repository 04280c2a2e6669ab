#pragma once

#include <string>
#include <vector>

#include "cutgrid/surface.hpp"

namespace cutgrid {

// Auto-detects binary vs ASCII: binary iff the byte length equals
// 84 + 50 * facet_count declared at offset 80.
SurfaceMesh parse_stl(const std::vector<char>& bytes, double weld_tol = 0.0);
SurfaceMesh load_stl(const std::string& path, double weld_tol = 0.0);

std::vector<char> write_stl_ascii(const SurfaceMesh& mesh);
std::vector<char> write_stl_binary(const SurfaceMesh& mesh);
void save_stl(const SurfaceMesh& mesh, const std::string& path, bool binary = true);

}  // namespace cutgrid
