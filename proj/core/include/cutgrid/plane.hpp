#pragma once

#include "cutgrid/vec3.hpp"

namespace cutgrid {

// Oriented plane {x : normal . x = offset}. The positive side is the normal
// direction; clipping keeps the non-positive side.
struct Plane {
  Vec3 normal;     // unit length
  double offset = 0.0;

  static Plane from_point_normal(const Vec3& p, const Vec3& n) {
    Vec3 u = normalized(n);
    return {u, dot(u, p)};
  }

  double signed_distance(const Vec3& p) const { return dot(normal, p) - offset; }
  Vec3 project(const Vec3& p) const { return p - normal * signed_distance(p); }
  Plane flipped() const { return {-normal, -offset}; }
};

}  // namespace cutgrid
