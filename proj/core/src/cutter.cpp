#include "cutgrid/cutter.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <set>
#include <thread>

#include "cutgrid/errors.hpp"
#include "cutgrid/patch.hpp"

namespace cutgrid {

double CellCut::interior_volume() const {
  double v = 0.0;
  for (const auto& p : interior_polytopes) v += polytope_volume(p);
  return v;
}

double CellCut::exterior_volume() const {
  double v = 0.0;
  for (const auto& p : exterior_polytopes) v += polytope_volume(p);
  return v;
}

double CellCut::boundary_area() const {
  double a = 0.0;
  for (const auto& poly : boundary_pieces) a += polygon_area(poly);
  return a;
}

namespace {

Vec3 closest_point_on_polygon(const Polygon& poly, const Vec3& p) {
  const Vec3& n = poly.normal;
  Vec3 q = p - n * dot(n, p - poly.points[0]);
  bool inside = true;
  for (size_t i = 0; i < poly.points.size(); ++i) {
    const Vec3& a = poly.points[i];
    const Vec3& b = poly.points[(i + 1) % poly.points.size()];
    if (dot(cross(b - a, q - a), n) < 0.0) {
      inside = false;
      break;
    }
  }
  if (inside) return q;

  double best = std::numeric_limits<double>::max();
  Vec3 best_pt = poly.points[0];
  for (size_t i = 0; i < poly.points.size(); ++i) {
    const Vec3& a = poly.points[i];
    const Vec3& b = poly.points[(i + 1) % poly.points.size()];
    Vec3 ab = b - a;
    double t = norm2(ab) > 0.0 ? std::clamp(dot(p - a, ab) / norm2(ab), 0.0, 1.0) : 0.0;
    Vec3 c = a + ab * t;
    double d2 = norm2(p - c);
    if (d2 < best) {
      best = d2;
      best_pt = c;
    }
  }
  return best_pt;
}

}  // namespace

double side_of_surface(const Vec3& point, const std::vector<Polygon>& pieces) {
  double best_d2 = std::numeric_limits<double>::max();
  double best_align = 0.0;
  for (const Polygon& poly : pieces) {
    if (poly.empty()) continue;
    Vec3 q = closest_point_on_polygon(poly, point);
    double d2 = norm2(point - q);
    double align = dot(point - q, poly.normal);
    // Ties at shared edges/vertices: prefer the facet most aligned with the
    // offset vector (pseudo-normal disambiguation).
    if (d2 < best_d2 * (1.0 - 1e-12) ||
        (d2 <= best_d2 * (1.0 + 1e-12) && std::abs(align) > std::abs(best_align))) {
      best_d2 = d2;
      best_align = align;
    }
  }
  if (best_d2 == std::numeric_limits<double>::max()) return std::numeric_limits<double>::max();
  double dist = std::sqrt(best_d2);
  return best_align >= 0.0 ? dist : -dist;
}

namespace {

using EdgeKey = std::pair<int, int>;  // global vertex indices

void decompose_rec(Polytope piece, std::vector<Polygon> patch,
                   const SurfaceMesh& surface, std::set<EdgeKey> used,
                   int depth, double tol, double area_eps, double tau_reflex,
                   int max_depth, std::vector<DecomposedPiece>& out) {
  if (piece.empty()) return;
  if (patch.empty()) {
    out.push_back({std::move(piece), {}});
    return;
  }
  if (depth > max_depth)
    throw GeometryError("convex decomposition stall (depth limit exceeded)");

  // Patch topology comes from the original surface facets; clipping does not
  // change dihedral angles or edge ownership.
  std::vector<int> facet_ids;
  for (const Polygon& poly : patch) facet_ids.push_back(poly.source_facet);
  std::sort(facet_ids.begin(), facet_ids.end());
  facet_ids.erase(std::unique(facet_ids.begin(), facet_ids.end()), facet_ids.end());

  FacetPatch fp;
  std::vector<int> local_to_global;
  {
    std::map<int, int> global_to_local;
    for (int f : facet_ids) {
      std::array<int, 3> tri;
      for (int k = 0; k < 3; ++k) {
        int g = surface.facets[f][k];
        auto [it, inserted] = global_to_local.emplace(g, int(fp.points.size()));
        if (inserted) {
          fp.points.push_back(surface.vertices[g]);
          local_to_global.push_back(g);
        }
        tri[k] = it->second;
      }
      fp.tris.push_back(tri);
      fp.normals.push_back(surface.facet_normals[f]);
    }
  }

  // Deterministic pick: lowest global edge key not yet used for a split.
  const ReflexEdge* chosen = nullptr;
  EdgeKey chosen_key{};
  auto reflex = reflex_edges(fp, tau_reflex);
  for (const ReflexEdge& re : reflex) {
    EdgeKey gkey{local_to_global[re.key.first], local_to_global[re.key.second]};
    if (gkey.first > gkey.second) std::swap(gkey.first, gkey.second);
    if (used.count(gkey)) continue;
    if (!chosen || gkey < chosen_key) {
      chosen = &re;
      chosen_key = gkey;
    }
  }
  if (!chosen) {
    out.push_back({std::move(piece), std::move(patch)});
    return;
  }

  Plane split = plane_through_reflex_edge(chosen->a, chosen->b, chosen->n1,
                                          chosen->n2, tol);
  used.insert(chosen_key);

  SplitResult halves = split_polytope(piece, split, tol, kFaceTagSplit);
  std::vector<Polygon> patch_below, patch_above;
  for (const Polygon& poly : patch) {
    Polygon below = clip_polygon(poly, split, tol);
    Polygon above = clip_polygon(poly, split.flipped(), tol);
    if (!below.empty() && polygon_area(below) > area_eps)
      patch_below.push_back(std::move(below));
    if (!above.empty() && polygon_area(above) > area_eps)
      patch_above.push_back(std::move(above));
  }
  decompose_rec(std::move(halves.below), std::move(patch_below), surface, used,
                depth + 1, tol, area_eps, tau_reflex, max_depth, out);
  decompose_rec(std::move(halves.above), std::move(patch_above), surface, used,
                depth + 1, tol, area_eps, tau_reflex, max_depth, out);
}

}  // namespace

std::vector<DecomposedPiece> convex_decompose(const Polytope& cell,
                                              const std::vector<Polygon>& patch,
                                              const SurfaceMesh& surface,
                                              double tol, double tau_reflex,
                                              int max_depth) {
  std::vector<DecomposedPiece> out;
  AABB box{cell.vertices[0], cell.vertices[0]};
  for (const Vec3& v : cell.vertices) box.expand(v);
  double area_eps = tol * norm(box.extent());
  decompose_rec(cell, patch, surface, {}, 0, tol, area_eps, tau_reflex,
                max_depth, out);
  return out;
}

ClipPieceResult clip_piece(const Polytope& cell_piece,
                           const std::vector<Polygon>& convex_patch, double tol) {
  ClipPieceResult result;
  result.interior = cell_piece;
  std::set<int> seen;
  for (const Polygon& poly : convex_patch) {
    if (!seen.insert(poly.source_facet).second) continue;  // one plane per facet
    if (result.interior.empty()) break;
    Plane plane = Plane::from_point_normal(poly.points[0], poly.normal);
    SplitResult halves = split_polytope(result.interior, plane, tol, kFaceTagSurface);
    result.interior = std::move(halves.below);
    if (!halves.above.empty())
      result.exterior_parts.push_back(std::move(halves.above));
  }
  return result;
}

CellCut intersect_cell(int64_t cell_index, const BackgroundMesh& mesh,
                       const SurfaceMesh& surface,
                       const std::vector<int>& touching_facets,
                       const CutParams& params) {
  CellCut cut;
  cut.cell_index = cell_index;
  const AABB box = mesh.cell_box(cell_index);
  const double diag = mesh.cell_diagonal();
  const double tol = params.tol_geom_rel * diag;
  const double area_eps = tol * diag;

  double a_bnd[6] = {};  // boundary area lying exactly on each cell face
  for (int f : touching_facets) {
    Polygon tri;
    tri.points = {surface.vertices[surface.facets[f][0]],
                  surface.vertices[surface.facets[f][1]],
                  surface.vertices[surface.facets[f][2]]};
    tri.normal = surface.facet_normals[f];
    tri.label = surface.facet_labels[f];
    tri.source_facet = f;
    Polygon clipped = clip_polygon_to_box(tri, box, tol);
    if (clipped.empty() || polygon_area(clipped) <= area_eps) continue;
    // A piece lying exactly on a box face is shared with the neighbour cell.
    // Exactly one of the two cells keeps it: the one on the solid side, i.e.
    // the cell the facet normal points out of. The covered face is recorded
    // so its seed can be forced to "cut" below (the solid boundary must block
    // propagation across that face).
    int coplanar_face = -1;
    for (int lf = 0; lf < 6 && coplanar_face < 0; ++lf) {
      int axis = lf / 2;
      double plane_x = (lf % 2) ? box.max_corner[axis] : box.min_corner[axis];
      bool all_on = true;
      for (const Vec3& p : clipped.points)
        if (std::abs(p[axis] - plane_x) > tol) {
          all_on = false;
          break;
        }
      if (all_on) coplanar_face = lf;
    }
    if (coplanar_face >= 0) {
      int axis = coplanar_face / 2;
      double outward = (coplanar_face % 2) ? 1.0 : -1.0;
      if (clipped.normal[axis] * outward <= 0.0) continue;  // neighbour owns it
      a_bnd[coplanar_face] += polygon_area(clipped);
    }
    cut.boundary_pieces.push_back(std::move(clipped));
  }
  if (cut.boundary_pieces.empty()) return cut;  // not cut

  const Polytope cell_poly = make_box(box);
  std::vector<DecomposedPiece> pieces;
  try {
    pieces = convex_decompose(cell_poly, cut.boundary_pieces, surface, tol,
                              params.tau_reflex, params.max_decompose_depth);
  } catch (const GeometryError& e) {
    throw GeometryError("cell " + std::to_string(cell_index) + ": " + e.what());
  }

  for (DecomposedPiece& dp : pieces) {
    if (dp.patch.empty()) {
      // Piece untouched by the surface: classify its centroid against the
      // cell's boundary pieces.
      double side = side_of_surface(polytope_centroid(dp.cell_piece),
                                    cut.boundary_pieces);
      if (side < 0.0)
        cut.interior_polytopes.push_back(std::move(dp.cell_piece));
      else
        cut.exterior_polytopes.push_back(std::move(dp.cell_piece));
      continue;
    }
    ClipPieceResult clipped = clip_piece(dp.cell_piece, dp.patch, tol);
    if (!clipped.interior.empty())
      cut.interior_polytopes.push_back(std::move(clipped.interior));
    for (Polytope& ext : clipped.exterior_parts)
      cut.exterior_polytopes.push_back(std::move(ext));
  }

  // Face seeds from provenance-tagged coverage of the 6 cell faces.
  double a_in[6] = {}, a_ex[6] = {};
  auto accumulate = [&](const std::vector<Polytope>& polys, double* acc) {
    for (const Polytope& p : polys)
      for (size_t f = 0; f < p.faces.size(); ++f) {
        int tag = p.face_tags[f];
        if (tag >= 0 && tag < 6) acc[tag] += polytope_face_area(p, int(f));
      }
  };
  accumulate(cut.interior_polytopes, a_in);
  accumulate(cut.exterior_polytopes, a_ex);
  constexpr double kCoverEps = 1e-8;
  for (int lf = 0; lf < 6; ++lf) {
    int axis = lf / 2;
    double face_area = mesh.spacing[(axis + 1) % 3] * mesh.spacing[(axis + 2) % 3];
    double fi = a_in[lf] / face_area;
    double fe = a_ex[lf] / face_area;
    if (a_bnd[lf] > kCoverEps * face_area)
      cut.face_seeds[lf] = Location::kCut;  // face carries solid boundary
    else if (fi > 1.0 - kCoverEps && fe < kCoverEps)
      cut.face_seeds[lf] = Location::kIn;
    else if (fe > 1.0 - kCoverEps && fi < kCoverEps)
      cut.face_seeds[lf] = Location::kOut;
    else
      cut.face_seeds[lf] = Location::kCut;
  }

  // Node seeds by signed distance to the local surface fragments.
  for (int node = 0; node < 8; ++node) {
    Vec3 corner{(node & 1) ? box.max_corner.x : box.min_corner.x,
                (node & 2) ? box.max_corner.y : box.min_corner.y,
                (node & 4) ? box.max_corner.z : box.min_corner.z};
    double side = side_of_surface(corner, cut.boundary_pieces);
    if (std::abs(side) <= tol)
      cut.node_seeds[node] = Location::kCut;
    else
      cut.node_seeds[node] = side < 0.0 ? Location::kIn : Location::kOut;
  }
  return cut;
}

FacetBins bin_facets(const BackgroundMesh& mesh, const SurfaceMesh& surface) {
  std::vector<int> all(surface.facet_count());
  for (size_t i = 0; i < all.size(); ++i) all[i] = int(i);
  return bin_facets(mesh, surface, all);
}

FacetBins bin_facets(const BackgroundMesh& mesh, const SurfaceMesh& surface,
                     const std::vector<int>& facet_subset) {
  FacetBins bins;
  for (int f : facet_subset) {
    const auto& tri = surface.facets[f];
    for (int64_t cell : candidate_cells(mesh, surface.vertices[tri[0]],
                                        surface.vertices[tri[1]],
                                        surface.vertices[tri[2]])) {
      bins[cell].push_back(f);
    }
  }
  return bins;
}

std::map<int64_t, CellCut> cut_cells(const BackgroundMesh& mesh,
                                     const SurfaceMesh& surface,
                                     const std::vector<int64_t>& cells,
                                     const FacetBins& bins,
                                     const CutParams& params,
                                     int64_t* clip_calls) {
  std::vector<int64_t> work;
  for (int64_t cell : cells)
    if (bins.count(cell)) work.push_back(cell);

  std::vector<CellCut> results(work.size());
  unsigned hw = params.threads > 0 ? unsigned(params.threads)
                                   : std::max(1u, std::thread::hardware_concurrency());
  unsigned n_threads = std::min<unsigned>(hw, std::max<size_t>(work.size(), 1));

  std::atomic<size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&]() {
    for (;;) {
      size_t idx = next.fetch_add(1);
      if (idx >= work.size()) return;
      try {
        results[idx] = intersect_cell(work[idx], mesh, surface,
                                      bins.at(work[idx]), params);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);

  if (clip_calls) *clip_calls += int64_t(work.size());
  std::map<int64_t, CellCut> out;
  for (CellCut& cut : results)
    if (cut.is_cut()) out.emplace(cut.cell_index, std::move(cut));
  return out;
}

std::map<int64_t, CellCut> cut_serial(const BackgroundMesh& mesh,
                                      const SurfaceMesh& surface,
                                      const CutParams& params) {
  AABB sbox = bounding_box(surface);
  AABB dom = mesh.domain();
  if (!dom.contains(sbox.min_corner) || !dom.contains(sbox.max_corner))
    throw GeometryError("surface escapes the artificial domain");

  FacetBins bins = bin_facets(mesh, surface);
  std::vector<int64_t> cells;
  cells.reserve(bins.size());
  for (const auto& [cell, facets] : bins) cells.push_back(cell);
  std::sort(cells.begin(), cells.end());
  return cut_cells(mesh, surface, cells, bins, params);
}

}  // namespace cutgrid
