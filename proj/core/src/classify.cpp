#include "cutgrid/classify.hpp"

#include <deque>
#include <unordered_set>

#include "cutgrid/errors.hpp"

namespace cutgrid {

LocationMap make_location_map(const BackgroundMesh& mesh) {
  LocationMap map;
  map.cell_location.assign(size_t(mesh.total_cells()), Location::kUndefined);
  map.face_location.assign(size_t(mesh.face_count()), Location::kUndefined);
  return map;
}

void seed_into(LocationMap& map, const BackgroundMesh& mesh,
               const std::map<int64_t, CellCut>& cuts) {
  for (const auto& [cell, cut] : cuts) {
    if (!cut.is_cut()) continue;
    map.cell_location[size_t(cell)] = Location::kCut;
    for (int lf = 0; lf < 6; ++lf) {
      int64_t fid = mesh.face_id(cell, lf);
      Location seed = cut.face_seeds[lf];
      Location& slot = map.face_location[size_t(fid)];
      if (slot == Location::kUndefined) {
        slot = seed;
      } else if (slot != seed) {
        // Two cut cells may disagree when the face carries boundary exactly:
        // the owning side seeds "cut" while the other side sees full coverage.
        // Blocking wins; a genuine in-vs-out clash is broken geometry.
        if (slot == Location::kCut || seed == Location::kCut)
          slot = Location::kCut;
        else
          throw GeometryError("conflicting face seeds at face " +
                              std::to_string(fid) + " (" + to_string(slot) +
                              " vs " + to_string(seed) + ")");
      }
    }
  }
}

LocationMap seed_locations(const BackgroundMesh& mesh,
                           const std::map<int64_t, CellCut>& cuts) {
  LocationMap map = make_location_map(mesh);
  seed_into(map, mesh, cuts);
  return map;
}

void propagate_in_place(const BackgroundMesh& mesh, LocationMap& map,
                        const std::vector<int64_t>& scope, Traversal order) {
  std::unordered_set<int64_t> in_scope(scope.begin(), scope.end());
  std::deque<std::pair<int64_t, Location>> frontier;

  auto push = [&](int64_t cell, Location loc) {
    frontier.emplace_back(cell, loc);
  };
  for (int64_t cell : scope) {
    if (map.cell_location[size_t(cell)] != Location::kUndefined) continue;
    for (int lf = 0; lf < 6; ++lf) {
      Location floc = map.face_location[size_t(mesh.face_id(cell, lf))];
      if (floc == Location::kIn || floc == Location::kOut) push(cell, floc);
    }
  }

  while (!frontier.empty()) {
    auto [cell, loc] = order == Traversal::kDepthFirst ? frontier.back()
                                                       : frontier.front();
    if (order == Traversal::kDepthFirst)
      frontier.pop_back();
    else
      frontier.pop_front();

    Location& slot = map.cell_location[size_t(cell)];
    if (slot == Location::kCut) continue;
    if (slot != Location::kUndefined) {
      if (slot != loc)
        throw GeometryError("inconsistent geometry orientation at cell " +
                            std::to_string(cell));
      continue;
    }
    slot = loc;
    for (int lf = 0; lf < 6; ++lf) {
      Location& floc = map.face_location[size_t(mesh.face_id(cell, lf))];
      if (floc == Location::kUndefined) {
        floc = loc;
      } else if (floc == Location::kCut) {
        continue;  // cut faces block propagation
      } else if (floc != loc) {
        throw GeometryError("inconsistent geometry orientation at face " +
                            std::to_string(mesh.face_id(cell, lf)));
      }
      int64_t nbr = mesh.neighbor(cell, lf);
      if (nbr < 0 || !in_scope.count(nbr)) continue;
      if (map.cell_location[size_t(nbr)] == Location::kUndefined) push(nbr, loc);
    }
  }
}

LocationMap propagate_location(const BackgroundMesh& mesh, const LocationMap& seeds,
                               const std::vector<int64_t>& scope, Traversal order) {
  LocationMap map = seeds;
  propagate_in_place(mesh, map, scope, order);
  return map;
}

namespace {

// Watertight ray crossing count; returns -1 when the ray grazes an edge,
// vertex, or runs parallel through a facet plane.
int count_crossings(const SurfaceMesh& surface, const Vec3& origin, const Vec3& dir) {
  int crossings = 0;
  constexpr double kEps = 1e-12;
  for (size_t f = 0; f < surface.facets.size(); ++f) {
    const Vec3& a = surface.vertices[surface.facets[f][0]];
    const Vec3& b = surface.vertices[surface.facets[f][1]];
    const Vec3& c = surface.vertices[surface.facets[f][2]];
    Vec3 e1 = b - a, e2 = c - a;
    Vec3 p = cross(dir, e2);
    double det = dot(e1, p);
    if (std::abs(det) < kEps * norm(e1) * norm(e2)) continue;  // parallel
    double inv = 1.0 / det;
    Vec3 t = origin - a;
    double u = dot(t, p) * inv;
    if (u < -kEps || u > 1 + kEps) continue;
    Vec3 q = cross(t, e1);
    double v = dot(dir, q) * inv;
    if (v < -kEps || v > 1 + kEps) continue;
    double w = 1.0 - u - v;
    double dist = dot(e2, q) * inv;
    if (dist < -kEps) continue;
    // Grazing contact: hit too close to an edge, vertex, or the origin.
    if (u < kEps || v < kEps || w < kEps || dist < kEps) return -1;
    crossings++;
  }
  return crossings;
}

}  // namespace

Location ray_parity_location(const SurfaceMesh& surface, const Vec3& point) {
  Vec3 dir{1.0, 0.0, 0.0};
  for (int attempt = 0; attempt < 8; ++attempt) {
    int crossings = count_crossings(surface, point, normalized(dir));
    if (crossings >= 0)
      return (crossings % 2 == 1) ? Location::kIn : Location::kOut;
    // Deterministic jitter.
    dir = normalized(Vec3{1.0, 0.1 * (attempt + 1), 0.07 * (attempt + 1) + 0.01});
  }
  throw GeometryError("ray parity query failed after 8 jittered attempts");
}

LocationMap classify_serial(const BackgroundMesh& mesh,
                            const std::map<int64_t, CellCut>& cuts,
                            const SurfaceMesh* surface) {
  LocationMap map = seed_locations(mesh, cuts);

  bool any_cut = false;
  for (const auto& [cell, cut] : cuts)
    if (cut.is_cut()) any_cut = true;

  if (!any_cut) {
    if (!surface)
      throw GeometryError("classify_serial: no cuts and no surface for ray parity");
    Location loc = ray_parity_location(*surface, mesh.cell_center(0));
    std::fill(map.cell_location.begin(), map.cell_location.end(), loc);
    std::fill(map.face_location.begin(), map.face_location.end(), loc);
    return map;
  }

  std::vector<int64_t> scope(size_t(mesh.total_cells()));
  for (int64_t i = 0; i < mesh.total_cells(); ++i) scope[size_t(i)] = i;
  propagate_in_place(mesh, map, scope);

  // Pathological components connected only through cell corners can survive
  // face propagation; resolve each with one ray-parity query.
  for (int64_t cell = 0; cell < mesh.total_cells(); ++cell) {
    if (map.cell_location[size_t(cell)] != Location::kUndefined) continue;
    if (!surface)
      throw GeometryError("undefined component and no surface for ray parity");
    Location loc = ray_parity_location(*surface, mesh.cell_center(cell));
    std::deque<int64_t> stack{cell};
    while (!stack.empty()) {
      int64_t cur = stack.back();
      stack.pop_back();
      Location& slot = map.cell_location[size_t(cur)];
      if (slot != Location::kUndefined) continue;
      slot = loc;
      for (int lf = 0; lf < 6; ++lf) {
        Location& floc = map.face_location[size_t(mesh.face_id(cur, lf))];
        if (floc == Location::kUndefined) floc = loc;
        int64_t nbr = mesh.neighbor(cur, lf);
        if (nbr >= 0 && map.cell_location[size_t(nbr)] == Location::kUndefined)
          stack.push_back(nbr);
      }
    }
  }
  return map;
}

}  // namespace cutgrid
