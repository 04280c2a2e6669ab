#pragma once

#include <vector>

#include "cutgrid/plane.hpp"
#include "cutgrid/vec3.hpp"

namespace cutgrid {

// Face provenance tags. Non-negative values 0..5 identify the generating
// background-cell face (x-,x+,y-,y+,z-,z+); negative values mark other origins.
inline constexpr int kFaceTagNone = -1;
inline constexpr int kFaceTagSurface = -2;  // cap cut by a surface facet plane
inline constexpr int kFaceTagSplit = -3;    // cap cut by a convex-decomposition plane

// Convex polytope in boundary representation: explicit vertices plus face
// cycles, counter-clockwise as seen from outside.
struct Polytope {
  std::vector<Vec3> vertices;
  std::vector<std::vector<int>> faces;
  std::vector<int> face_tags;  // parallel to faces

  bool empty() const { return vertices.size() < 4 || faces.size() < 4; }
};

Polytope make_box(const AABB& box);

double polytope_volume(const Polytope& p);
Vec3 polytope_centroid(const Polytope& p);
double polytope_face_area(const Polytope& p, int face);

// Outward face normal by Newell's method.
Vec3 polytope_face_normal(const Polytope& p, int face);

// V - E + F (2 for a topological sphere).
int euler_characteristic(const Polytope& p);

bool is_convex(const Polytope& p, double tol);
bool point_inside(const Polytope& p, const Vec3& q, double tol);

struct SplitResult {
  Polytope below;  // non-positive side of the plane
  Polytope above;  // non-negative side
};

// Splits p by the plane. The two halves share the cap vertices bitwise, so
// volume(below) + volume(above) reproduces volume(p) up to rounding. Vertices
// within tol of the plane are snapped onto it. Cap faces carry cap_tag.
SplitResult split_polytope(const Polytope& p, const Plane& plane, double tol,
                           int cap_tag = kFaceTagNone);

// p intersected with {x : plane.normal . x <= plane.offset}.
Polytope clip_half_space(const Polytope& p, const Plane& plane, double tol,
                         int cap_tag = kFaceTagNone);

}  // namespace cutgrid
