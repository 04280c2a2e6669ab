#include "cutgrid/polygon.hpp"

namespace cutgrid {

double polygon_area(const Polygon& poly) {
  if (poly.empty()) return 0.0;
  Vec3 acc{};
  const Vec3& p0 = poly.points[0];
  for (size_t i = 1; i + 1 < poly.points.size(); ++i) {
    acc += cross(poly.points[i] - p0, poly.points[i + 1] - p0);
  }
  return 0.5 * norm(acc);
}

Vec3 polygon_centroid(const Polygon& poly) {
  // Area-weighted centroid over a fan triangulation.
  Vec3 c{};
  double total = 0.0;
  const Vec3& p0 = poly.points[0];
  for (size_t i = 1; i + 1 < poly.points.size(); ++i) {
    double a = 0.5 * norm(cross(poly.points[i] - p0, poly.points[i + 1] - p0));
    c += (p0 + poly.points[i] + poly.points[i + 1]) * (a / 3.0);
    total += a;
  }
  if (total <= 0.0) {
    c = Vec3{};
    for (const Vec3& p : poly.points) c += p;
    return c / double(poly.points.size());
  }
  return c / total;
}

Polygon clip_polygon(const Polygon& poly, const Plane& plane, double tol) {
  Polygon out;
  out.normal = poly.normal;
  out.label = poly.label;
  out.source_facet = poly.source_facet;
  if (poly.empty()) return out;

  const size_t n = poly.points.size();
  std::vector<double> d(n);
  bool any_in = false, any_out = false;
  for (size_t i = 0; i < n; ++i) {
    d[i] = plane.signed_distance(poly.points[i]);
    if (d[i] > tol) any_out = true;
    else if (d[i] < -tol) any_in = true;
  }
  if (!any_out) return poly;
  if (!any_in) return out;  // empty

  for (size_t i = 0; i < n; ++i) {
    size_t j = (i + 1) % n;
    const bool in_i = d[i] <= tol;
    const bool in_j = d[j] <= tol;
    if (in_i) {
      Vec3 p = poly.points[i];
      if (std::abs(d[i]) <= tol) p = plane.project(p);  // snap
      out.points.push_back(p);
    }
    // Crossing only when both endpoints are strictly off-plane on opposite sides.
    if (in_i != in_j && std::abs(d[i]) > tol && std::abs(d[j]) > tol) {
      double t = d[i] / (d[i] - d[j]);
      Vec3 p = poly.points[i] + (poly.points[j] - poly.points[i]) * t;
      out.points.push_back(plane.project(p));
    }
  }
  if (out.points.size() < 3) out.points.clear();
  return out;
}

Polygon clip_polygon_to_box(const Polygon& poly, const AABB& box, double tol) {
  Polygon cur = poly;
  for (int axis = 0; axis < 3 && !cur.empty(); ++axis) {
    Vec3 n{};
    n[axis] = -1.0;
    cur = clip_polygon(cur, Plane{n, -box.min_corner[axis]}, tol);
    if (cur.empty()) break;
    n[axis] = 1.0;
    cur = clip_polygon(cur, Plane{n, box.max_corner[axis]}, tol);
  }
  return cur;
}

}  // namespace cutgrid
