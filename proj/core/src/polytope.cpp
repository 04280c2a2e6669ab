#include "cutgrid/polytope.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

namespace cutgrid {

Polytope make_box(const AABB& box) {
  const Vec3& a = box.min_corner;
  const Vec3& b = box.max_corner;
  Polytope p;
  p.vertices = {
      {a.x, a.y, a.z}, {b.x, a.y, a.z}, {a.x, b.y, a.z}, {b.x, b.y, a.z},
      {a.x, a.y, b.z}, {b.x, a.y, b.z}, {a.x, b.y, b.z}, {b.x, b.y, b.z},
  };
  p.faces = {
      {0, 4, 6, 2},  // x-
      {1, 3, 7, 5},  // x+
      {0, 1, 5, 4},  // y-
      {2, 6, 7, 3},  // y+
      {0, 2, 3, 1},  // z-
      {4, 5, 7, 6},  // z+
  };
  p.face_tags = {0, 1, 2, 3, 4, 5};
  return p;
}

double polytope_volume(const Polytope& p) {
  if (p.empty()) return 0.0;
  const Vec3 r = p.vertices[0];
  double six_v = 0.0;
  for (const auto& face : p.faces) {
    const Vec3 f0 = p.vertices[face[0]] - r;
    for (size_t i = 1; i + 1 < face.size(); ++i) {
      six_v += dot(f0, cross(p.vertices[face[i]] - r, p.vertices[face[i + 1]] - r));
    }
  }
  return six_v / 6.0;
}

Vec3 polytope_centroid(const Polytope& p) {
  // Volume-weighted centroid from a tetrahedron fan around vertices[0].
  const Vec3 r = p.vertices[0];
  Vec3 acc{};
  double six_v = 0.0;
  for (const auto& face : p.faces) {
    const Vec3 f0 = p.vertices[face[0]] - r;
    for (size_t i = 1; i + 1 < face.size(); ++i) {
      const Vec3 e1 = p.vertices[face[i]] - r;
      const Vec3 e2 = p.vertices[face[i + 1]] - r;
      double v = dot(f0, cross(e1, e2));
      acc += (f0 + e1 + e2) * (v * 0.25);
      six_v += v;
    }
  }
  if (std::abs(six_v) < 1e-300) {
    Vec3 c{};
    for (const Vec3& v : p.vertices) c += v;
    return c / double(p.vertices.size());
  }
  return r + acc / six_v;
}

double polytope_face_area(const Polytope& p, int face) {
  const auto& f = p.faces[face];
  Vec3 acc{};
  const Vec3& p0 = p.vertices[f[0]];
  for (size_t i = 1; i + 1 < f.size(); ++i) {
    acc += cross(p.vertices[f[i]] - p0, p.vertices[f[i + 1]] - p0);
  }
  return 0.5 * norm(acc);
}

Vec3 polytope_face_normal(const Polytope& p, int face) {
  const auto& f = p.faces[face];
  Vec3 n{};
  for (size_t i = 0; i < f.size(); ++i) {
    const Vec3& a = p.vertices[f[i]];
    const Vec3& b = p.vertices[f[(i + 1) % f.size()]];
    n.x += (a.y - b.y) * (a.z + b.z);
    n.y += (a.z - b.z) * (a.x + b.x);
    n.z += (a.x - b.x) * (a.y + b.y);
  }
  return normalized(n);
}

int euler_characteristic(const Polytope& p) {
  std::set<std::pair<int, int>> edges;
  for (const auto& f : p.faces) {
    for (size_t i = 0; i < f.size(); ++i) {
      int a = f[i], b = f[(i + 1) % f.size()];
      edges.insert({std::min(a, b), std::max(a, b)});
    }
  }
  return int(p.vertices.size()) - int(edges.size()) + int(p.faces.size());
}

bool is_convex(const Polytope& p, double tol) {
  for (size_t f = 0; f < p.faces.size(); ++f) {
    Plane pl = Plane::from_point_normal(p.vertices[p.faces[f][0]],
                                        polytope_face_normal(p, int(f)));
    for (const Vec3& v : p.vertices) {
      if (pl.signed_distance(v) > tol) return false;
    }
  }
  return true;
}

bool point_inside(const Polytope& p, const Vec3& q, double tol) {
  if (p.empty()) return false;
  for (size_t f = 0; f < p.faces.size(); ++f) {
    Plane pl = Plane::from_point_normal(p.vertices[p.faces[f][0]],
                                        polytope_face_normal(p, int(f)));
    if (pl.signed_distance(q) > tol) return false;
  }
  return true;
}

namespace {

enum class Side : unsigned char { kBelow, kOn, kAbove };

// Removes unused vertices and renumbers face cycles.
void compact(Polytope& p) {
  std::vector<int> remap(p.vertices.size(), -1);
  std::vector<Vec3> verts;
  for (auto& face : p.faces) {
    for (int& v : face) {
      if (remap[v] < 0) {
        remap[v] = int(verts.size());
        verts.push_back(p.vertices[v]);
      }
      v = remap[v];
    }
  }
  p.vertices = std::move(verts);
  if (p.empty()) {
    p.vertices.clear();
    p.faces.clear();
    p.face_tags.clear();
  }
}

}  // namespace

SplitResult split_polytope(const Polytope& p, const Plane& plane, double tol,
                           int cap_tag) {
  SplitResult result;
  if (p.empty()) return result;

  const size_t n = p.vertices.size();
  std::vector<double> d(n);
  std::vector<Side> side(n);
  bool any_below = false, any_above = false;
  for (size_t i = 0; i < n; ++i) {
    d[i] = plane.signed_distance(p.vertices[i]);
    if (d[i] > tol) {
      side[i] = Side::kAbove;
      any_above = true;
    } else if (d[i] < -tol) {
      side[i] = Side::kBelow;
      any_below = true;
    } else {
      side[i] = Side::kOn;
    }
  }
  if (!any_above) {
    result.below = p;
    for (size_t i = 0; i < n; ++i)
      if (side[i] == Side::kOn) result.below.vertices[i] = plane.project(p.vertices[i]);
    return result;
  }
  if (!any_below) {
    result.above = p;
    for (size_t i = 0; i < n; ++i)
      if (side[i] == Side::kOn) result.above.vertices[i] = plane.project(p.vertices[i]);
    return result;
  }

  // Shared vertex pool: originals (snapped when on-plane), then crossing points.
  std::vector<Vec3> pool(p.vertices);
  for (size_t i = 0; i < n; ++i)
    if (side[i] == Side::kOn) pool[i] = plane.project(p.vertices[i]);

  std::map<std::pair<int, int>, int> crossing;  // unordered edge -> pool index
  auto crossing_point = [&](int a, int b) {
    auto key = std::make_pair(std::min(a, b), std::max(a, b));
    auto it = crossing.find(key);
    if (it != crossing.end()) return it->second;
    double t = d[a] / (d[a] - d[b]);
    Vec3 q = plane.project(p.vertices[a] + (p.vertices[b] - p.vertices[a]) * t);
    pool.push_back(q);
    crossing.emplace(key, int(pool.size()) - 1);
    return int(pool.size()) - 1;
  };

  // Note: faces index into the shared pool, which still grows while crossing
  // points are discovered; vertices are attached after both passes.
  auto clip_faces = [&](bool keep_below) {
    Polytope out;
    const Side drop = keep_below ? Side::kAbove : Side::kBelow;
    for (size_t f = 0; f < p.faces.size(); ++f) {
      const auto& face = p.faces[f];
      std::vector<int> cycle;
      for (size_t i = 0; i < face.size(); ++i) {
        int a = face[i], b = face[(i + 1) % face.size()];
        if (side[a] != drop) cycle.push_back(a);
        if ((side[a] == Side::kBelow && side[b] == Side::kAbove) ||
            (side[a] == Side::kAbove && side[b] == Side::kBelow)) {
          cycle.push_back(crossing_point(a, b));
        }
      }
      if (cycle.size() >= 3) {
        out.faces.push_back(std::move(cycle));
        out.face_tags.push_back(p.face_tags.empty() ? kFaceTagNone : p.face_tags[f]);
      }
    }
    return out;
  };

  Polytope below = clip_faces(true);
  Polytope above = clip_faces(false);
  below.vertices = pool;
  above.vertices = pool;

  // Cap face: all on-plane pool vertices, angularly ordered. Convexity of p
  // makes the cap convex, so ordering around the centroid is well defined.
  std::vector<int> cap;
  for (size_t i = 0; i < n; ++i)
    if (side[i] == Side::kOn) cap.push_back(int(i));
  for (const auto& [key, idx] : crossing) cap.push_back(idx);

  if (cap.size() >= 3) {
    Vec3 c{};
    for (int v : cap) c += pool[v];
    c = c / double(cap.size());
    Vec3 u = pool[cap[0]] - c;
    u = normalized(u - plane.normal * dot(u, plane.normal));
    if (norm2(u) < 0.5) {
      // Degenerate pick; fall back to an arbitrary in-plane axis.
      Vec3 t = std::abs(plane.normal.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
      u = normalized(cross(plane.normal, t));
    }
    Vec3 v = cross(plane.normal, u);
    std::vector<std::pair<double, int>> order;
    order.reserve(cap.size());
    for (int idx : cap) {
      Vec3 r = pool[idx] - c;
      order.emplace_back(std::atan2(dot(r, v), dot(r, u)), idx);
    }
    std::sort(order.begin(), order.end());

    std::vector<int> ccw;  // CCW seen from +normal
    ccw.reserve(order.size());
    for (auto& [ang, idx] : order) ccw.push_back(idx);

    if (!below.faces.empty()) {
      below.faces.push_back(ccw);  // outward = +normal
      below.face_tags.push_back(cap_tag);
    }
    if (!above.faces.empty()) {
      std::vector<int> cw(ccw.rbegin(), ccw.rend());  // outward = -normal
      above.faces.push_back(std::move(cw));
      above.face_tags.push_back(cap_tag);
    }
  }

  compact(below);
  compact(above);
  result.below = std::move(below);
  result.above = std::move(above);
  return result;
}

Polytope clip_half_space(const Polytope& p, const Plane& plane, double tol,
                         int cap_tag) {
  return split_polytope(p, plane, tol, cap_tag).below;
}

}  // namespace cutgrid
