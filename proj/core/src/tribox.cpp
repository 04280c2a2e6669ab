#include "cutgrid/tribox.hpp"

#include <algorithm>

namespace cutgrid {

namespace {

bool axis_separates(const Vec3& axis, const Vec3& v0, const Vec3& v1,
                    const Vec3& v2, const Vec3& half) {
  double p0 = dot(axis, v0), p1 = dot(axis, v1), p2 = dot(axis, v2);
  double r = half.x * std::abs(axis.x) + half.y * std::abs(axis.y) +
             half.z * std::abs(axis.z);
  double lo = std::min({p0, p1, p2});
  double hi = std::max({p0, p1, p2});
  return lo > r || hi < -r;
}

}  // namespace

bool triangle_box_overlap(const AABB& box, const Vec3& a, const Vec3& b,
                          const Vec3& c) {
  const Vec3 center = box.center();
  const Vec3 half = box.extent() * 0.5;
  const Vec3 v0 = a - center, v1 = b - center, v2 = c - center;

  // Box axes.
  for (int ax = 0; ax < 3; ++ax) {
    double lo = std::min({v0[ax], v1[ax], v2[ax]});
    double hi = std::max({v0[ax], v1[ax], v2[ax]});
    if (lo > half[ax] || hi < -half[ax]) return false;
  }

  // Triangle plane.
  const Vec3 e0 = v1 - v0, e1 = v2 - v1, e2 = v0 - v2;
  const Vec3 n = cross(e0, e1);
  if (axis_separates(n, v0, v1, v2, half)) return false;

  // 9 edge cross products.
  const Vec3 box_axes[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  for (const Vec3& e : {e0, e1, e2}) {
    for (const Vec3& u : box_axes) {
      Vec3 axis = cross(e, u);
      if (norm2(axis) < 1e-32) continue;  // parallel, covered by other axes
      if (axis_separates(axis, v0, v1, v2, half)) return false;
    }
  }
  return true;
}

}  // namespace cutgrid
