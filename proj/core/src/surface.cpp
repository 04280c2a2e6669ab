#include "cutgrid/surface.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "cutgrid/errors.hpp"

namespace cutgrid {

AABB bounding_box(const SurfaceMesh& mesh) {
  if (mesh.vertices.empty()) throw InputError("bounding_box: empty mesh");
  AABB box{mesh.vertices[0], mesh.vertices[0]};
  for (const Vec3& v : mesh.vertices) box.expand(v);
  return box;
}

WatertightReport is_watertight(const SurfaceMesh& mesh) {
  struct Count {
    int forward = 0, backward = 0;
  };
  std::map<std::pair<int, int>, Count> edges;
  for (const auto& tri : mesh.facets) {
    for (int e = 0; e < 3; ++e) {
      int a = tri[e], b = tri[(e + 1) % 3];
      auto& c = edges[{std::min(a, b), std::max(a, b)}];
      (a < b ? c.forward : c.backward)++;
    }
  }
  WatertightReport rep;
  rep.watertight = true;
  for (const auto& [key, c] : edges) {
    int total = c.forward + c.backward;
    if (total == 1) {
      rep.open_edges.push_back(key);
    } else if (total > 2) {
      rep.non_manifold_edges.push_back(key);
    } else if (c.forward != 1 || c.backward != 1) {
      rep.misoriented_edges.push_back(key);
    } else {
      continue;
    }
    rep.watertight = false;
  }
  return rep;
}

SurfaceMeasures surface_measures(const SurfaceMesh& mesh) {
  SurfaceMeasures m;
  double six_v = 0.0;
  for (const auto& tri : mesh.facets) {
    const Vec3& a = mesh.vertices[tri[0]];
    const Vec3& b = mesh.vertices[tri[1]];
    const Vec3& c = mesh.vertices[tri[2]];
    m.surface_area += 0.5 * norm(cross(b - a, c - a));
    six_v += dot(cross(a, b), c);
  }
  m.enclosed_volume = six_v / 6.0;
  m.volume_reliable = is_watertight(mesh).watertight;
  return m;
}

SurfaceMesh flipped(const SurfaceMesh& mesh) {
  SurfaceMesh out = mesh;
  for (auto& tri : out.facets) std::swap(tri[1], tri[2]);
  for (auto& n : out.facet_normals) n = -n;
  return out;
}

SurfaceMesh translated(const SurfaceMesh& mesh, const Vec3& t) {
  SurfaceMesh out = mesh;
  for (auto& v : out.vertices) v += t;
  return out;
}

SurfaceMesh scaled(const SurfaceMesh& mesh, double s) {
  SurfaceMesh out = mesh;
  for (auto& v : out.vertices) v *= s;
  return out;
}

namespace {

struct VecLess {
  bool operator()(const Vec3& a, const Vec3& b) const {
    if (a.x != b.x) return a.x < b.x;
    if (a.y != b.y) return a.y < b.y;
    return a.z < b.z;
  }
};

}  // namespace

SurfaceMesh build_surface(const std::vector<std::array<Vec3, 3>>& triangles,
                          const std::vector<Vec3>& stored_normals,
                          const std::vector<int>& labels, double weld_tol) {
  if (triangles.empty()) throw InputError("no facets");

  SurfaceMesh mesh;
  std::map<Vec3, int, VecLess> lookup;
  auto weld = [&](Vec3 p) {
    if (weld_tol > 0.0) {
      // Tolerance weld by snapping onto a grid of pitch weld_tol.
      p.x = std::round(p.x / weld_tol) * weld_tol;
      p.y = std::round(p.y / weld_tol) * weld_tol;
      p.z = std::round(p.z / weld_tol) * weld_tol;
    }
    auto [it, inserted] = lookup.emplace(p, int(mesh.vertices.size()));
    if (inserted) mesh.vertices.push_back(p);
    return it->second;
  };

  for (size_t t = 0; t < triangles.size(); ++t) {
    std::array<int, 3> tri = {weld(triangles[t][0]), weld(triangles[t][1]),
                              weld(triangles[t][2])};
    const Vec3& a = mesh.vertices[tri[0]];
    const Vec3& b = mesh.vertices[tri[1]];
    const Vec3& c = mesh.vertices[tri[2]];
    Vec3 n = cross(b - a, c - a);
    if (norm(n) == 0.0 || tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2]) {
      mesh.dropped_degenerate++;
      continue;
    }
    n = normalized(n);
    // Trust winding over the stored normal; the stored field is junk in many
    // exporters. Keep the recomputed normal unconditionally.
    mesh.facets.push_back(tri);
    mesh.facet_normals.push_back(n);
    mesh.facet_labels.push_back(t < labels.size() ? labels[t] : 0);
    (void)stored_normals;
  }
  if (mesh.facets.empty()) throw InputError("all facets degenerate");
  return mesh;
}

}  // namespace cutgrid
