#pragma once

#include <map>
#include <unordered_map>
#include <vector>

#include "cutgrid/grid.hpp"
#include "cutgrid/location.hpp"
#include "cutgrid/polygon.hpp"
#include "cutgrid/polytope.hpp"
#include "cutgrid/surface.hpp"

namespace cutgrid {

struct CutParams {
  double tol_geom_rel = 1e-9;  // geometric tolerance relative to the cell diagonal
  double tau_reflex = 1e-6;    // reflex-edge angular tolerance [rad]
  int max_decompose_depth = 32;
  int threads = 0;             // 0 = hardware concurrency
};

// Per-cut-cell result: the interior/exterior convex pieces partitioning the
// cell, the surface restricted to the cell, and face/node location seeds.
struct CellCut {
  int64_t cell_index = -1;
  std::vector<Polytope> interior_polytopes;
  std::vector<Polytope> exterior_polytopes;
  std::vector<Polygon> boundary_pieces;
  std::array<Location, 6> face_seeds{};
  std::array<Location, 8> node_seeds{};

  bool is_cut() const { return !boundary_pieces.empty(); }
  double interior_volume() const;
  double exterior_volume() const;
  double boundary_area() const;
};

// Signed side of the surface fragments nearest to a point: negative inside,
// positive outside (outward normals). Magnitude is the unsigned distance.
double side_of_surface(const Vec3& point, const std::vector<Polygon>& pieces);

// One leaf of the convex decomposition: a convex cell piece together with the
// surface fragments it contains (a patch with no reflex edges).
struct DecomposedPiece {
  Polytope cell_piece;
  std::vector<Polygon> patch;
};

// Recursively splits the cell and its surface patch by planes through reflex
// edges until every leaf patch is convex. Depth beyond max_depth raises a
// GeometryError ("decomposition stall").
std::vector<DecomposedPiece> convex_decompose(const Polytope& cell,
                                              const std::vector<Polygon>& patch,
                                              const SurfaceMesh& surface,
                                              double tol, double tau_reflex,
                                              int max_depth);

// Clips the piece with the planes of a convex patch: interior plus the removed
// complements, so the volumes partition the piece.
struct ClipPieceResult {
  Polytope interior;  // may be empty
  std::vector<Polytope> exterior_parts;
};
ClipPieceResult clip_piece(const Polytope& cell_piece,
                           const std::vector<Polygon>& convex_patch, double tol);

// Full per-cell intersection. Cells whose candidate facets all miss the open
// cell report as not cut (empty boundary_pieces).
CellCut intersect_cell(int64_t cell_index, const BackgroundMesh& mesh,
                       const SurfaceMesh& surface,
                       const std::vector<int>& touching_facets,
                       const CutParams& params = {});

// Inverse of candidate_cells: cell -> facets whose AABB-filtered overlap
// includes the cell. Optionally restricted to a facet subset.
using FacetBins = std::unordered_map<int64_t, std::vector<int>>;
FacetBins bin_facets(const BackgroundMesh& mesh, const SurfaceMesh& surface);
FacetBins bin_facets(const BackgroundMesh& mesh, const SurfaceMesh& surface,
                     const std::vector<int>& facet_subset);

// Runs intersect_cell for a cell subset, data-parallel with deterministic
// output. Returns cut cells only; clip_calls counts intersect_cell runs.
std::map<int64_t, CellCut> cut_cells(const BackgroundMesh& mesh,
                                     const SurfaceMesh& surface,
                                     const std::vector<int64_t>& cells,
                                     const FacetBins& bins,
                                     const CutParams& params,
                                     int64_t* clip_calls = nullptr);

// Whole-mesh cut (the single-rank pipeline). Errors if the surface escapes
// the artificial domain.
std::map<int64_t, CellCut> cut_serial(const BackgroundMesh& mesh,
                                      const SurfaceMesh& surface,
                                      const CutParams& params = {});

}  // namespace cutgrid
