#pragma once

#include "cutgrid/vec3.hpp"

namespace cutgrid {

// Separating-axis triangle vs closed axis-aligned box overlap. Touching
// contact counts as overlap; degenerate triangles are handled.
bool triangle_box_overlap(const AABB& box, const Vec3& a, const Vec3& b,
                          const Vec3& c);

}  // namespace cutgrid
