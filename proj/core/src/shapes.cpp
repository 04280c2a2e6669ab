#include "cutgrid/shapes.hpp"

#include <map>

namespace cutgrid {

namespace {

using Soup = std::vector<std::array<Vec3, 3>>;

void add_quad(Soup& soup, const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  soup.push_back({a, b, c});
  soup.push_back({a, c, d});
}

SurfaceMesh from_soup(const Soup& soup) {
  std::vector<Vec3> normals(soup.size());
  std::vector<int> labels(soup.size(), 0);
  return build_surface(soup, normals, labels);
}

}  // namespace

SurfaceMesh unit_cube_mesh() {
  Vec3 c[8];
  for (int i = 0; i < 8; ++i)
    c[i] = {double(i & 1), double((i >> 1) & 1), double((i >> 2) & 1)};
  Soup soup;
  add_quad(soup, c[0], c[4], c[6], c[2]);  // x-
  add_quad(soup, c[1], c[3], c[7], c[5]);  // x+
  add_quad(soup, c[0], c[1], c[5], c[4]);  // y-
  add_quad(soup, c[2], c[6], c[7], c[3]);  // y+
  add_quad(soup, c[0], c[2], c[3], c[1]);  // z-
  add_quad(soup, c[4], c[5], c[7], c[6]);  // z+
  return from_soup(soup);
}

SurfaceMesh corner_tetra_mesh() {
  Vec3 o{0, 0, 0}, x{1, 0, 0}, y{0, 1, 0}, z{0, 0, 1};
  Soup soup = {
      {o, y, x},  // bottom (z = 0), outward -z
      {o, x, z},  // y = 0, outward -y
      {o, z, y},  // x = 0, outward -x
      {x, y, z},  // slanted face, outward (1,1,1)
  };
  return from_soup(soup);
}

SurfaceMesh icosphere_mesh(int subdivisions, double radius) {
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vec3> verts = {
      {-1, t, 0}, {1, t, 0},   {-1, -t, 0}, {1, -t, 0},
      {0, -1, t}, {0, 1, t},   {0, -1, -t}, {0, 1, -t},
      {t, 0, -1}, {t, 0, 1},   {-t, 0, -1}, {-t, 0, 1},
  };
  for (auto& v : verts) v = normalized(v) * radius;
  std::vector<std::array<int, 3>> faces = {
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
      {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
      {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
      {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1},
  };

  std::map<std::pair<int, int>, int> midpoint;
  auto mid = [&](int a, int b) {
    auto key = std::make_pair(std::min(a, b), std::max(a, b));
    auto it = midpoint.find(key);
    if (it != midpoint.end()) return it->second;
    verts.push_back(normalized(verts[a] + verts[b]) * radius);
    midpoint.emplace(key, int(verts.size()) - 1);
    return int(verts.size()) - 1;
  };

  for (int level = 0; level < subdivisions; ++level) {
    std::vector<std::array<int, 3>> next;
    next.reserve(faces.size() * 4);
    for (const auto& f : faces) {
      int ab = mid(f[0], f[1]), bc = mid(f[1], f[2]), ca = mid(f[2], f[0]);
      next.push_back({f[0], ab, ca});
      next.push_back({f[1], bc, ab});
      next.push_back({f[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    faces = std::move(next);
  }

  Soup soup;
  soup.reserve(faces.size());
  for (const auto& f : faces)
    soup.push_back({verts[f[0]], verts[f[1]], verts[f[2]]});
  return from_soup(soup);
}

SurfaceMesh l_prism_mesh() {
  // CCW cross-section seen from +z; the notch corner (0.5, 0.5) is reflex.
  // Ring split at the half-points so wall and cap edges match exactly.
  const std::vector<std::pair<double, double>> ring = {
      {0, 0}, {0.5, 0}, {1, 0},   {1, 0.5},
      {0.5, 0.5}, {0.5, 1}, {0, 1}, {0, 0.5}};
  auto at = [](std::pair<double, double> p, double z) {
    return Vec3{p.first, p.second, z};
  };

  Soup soup;
  // Caps as three half-unit squares (the fourth quadrant is the notch).
  const std::pair<double, double> r1[4] = {{0, 0}, {0.5, 0}, {0.5, 0.5}, {0, 0.5}};
  const std::pair<double, double> r2[4] = {{0.5, 0}, {1, 0}, {1, 0.5}, {0.5, 0.5}};
  const std::pair<double, double> r3[4] = {{0, 0.5}, {0.5, 0.5}, {0.5, 1}, {0, 1}};
  for (const auto* r : {r1, r2, r3}) {
    add_quad(soup, at(r[0], 1), at(r[1], 1), at(r[2], 1), at(r[3], 1));  // top +z
    add_quad(soup, at(r[3], 0), at(r[2], 0), at(r[1], 0), at(r[0], 0));  // bottom -z
  }
  for (size_t i = 0; i < ring.size(); ++i) {
    auto a = ring[i], b = ring[(i + 1) % ring.size()];
    add_quad(soup, at(a, 0), at(b, 0), at(b, 1), at(a, 1));  // outward side
  }
  return from_soup(soup);
}

}  // namespace cutgrid
