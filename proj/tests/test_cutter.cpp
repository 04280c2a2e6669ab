#include <doctest.h>

#include <cmath>

#include "cutgrid/cutter.hpp"
#include "cutgrid/errors.hpp"
#include "cutgrid/shapes.hpp"

using namespace cutgrid;

namespace {

double total_interior(const std::map<int64_t, CellCut>& cuts) {
  double v = 0.0;
  for (const auto& [cell, cut] : cuts) v += cut.interior_volume();
  return v;
}

double total_boundary(const std::map<int64_t, CellCut>& cuts) {
  double a = 0.0;
  for (const auto& [cell, cut] : cuts) a += cut.boundary_area();
  return a;
}

}  // namespace

TEST_CASE("cutting the unit cube on a 4^3 mesh") {
  SurfaceMesh cube = unit_cube_mesh();
  BackgroundMesh mesh = build_background_mesh(bounding_box(cube), {4, 4, 4}, 0.4);
  auto cuts = cut_serial(mesh, cube);
  CHECK(cuts.size() == 56);  // exactly the mesh shell around the inner 2^3
  const double cell_vol = mesh.spacing.x * mesh.spacing.y * mesh.spacing.z;
  // 8 interior cells are not cut; the cut cells carry the rest of the volume
  CHECK(total_interior(cuts) == doctest::Approx(1.0 - 8 * cell_vol).epsilon(1e-12));
  CHECK(total_boundary(cuts) == doctest::Approx(6.0).epsilon(1e-12));
  for (const auto& [cell, cut] : cuts) {
    CHECK(cut.is_cut());
    CHECK(cut.interior_volume() + cut.exterior_volume() ==
          doctest::Approx(cell_vol).epsilon(1e-12));
  }
}

TEST_CASE("cell-local volume partition for the tetra") {
  SurfaceMesh tet = corner_tetra_mesh();
  BackgroundMesh mesh = build_background_mesh(bounding_box(tet), {8, 8, 8}, 0.4);
  auto cuts = cut_serial(mesh, tet);
  CHECK(!cuts.empty());
  const double cell_vol = mesh.spacing.x * mesh.spacing.y * mesh.spacing.z;
  for (const auto& [cell, cut] : cuts) {
    CHECK(std::abs(cut.interior_volume() + cut.exterior_volume() - cell_vol) <
          1e-12 * cell_vol);
  }
}

TEST_CASE("side_of_surface signs") {
  SurfaceMesh cube = unit_cube_mesh();
  std::vector<Polygon> pieces;
  for (size_t f = 0; f < cube.facet_count(); ++f) {
    Polygon p;
    for (int i : cube.facets[f]) p.points.push_back(cube.vertices[size_t(i)]);
    p.normal = cube.facet_normals[f];
    pieces.push_back(p);
  }
  CHECK(side_of_surface({0.5, 0.5, 0.5}, pieces) < 0.0);
  CHECK(side_of_surface({1.5, 0.5, 0.5}, pieces) > 0.0);
  CHECK(side_of_surface({0.5, 0.5, -2.0}, pieces) == doctest::Approx(2.0));
}

TEST_CASE("convex decomposition splits cells containing the reflex edge") {
  SurfaceMesh l = l_prism_mesh();
  // One cell straddling the reflex edge at (0.5, 0.5, z).
  BackgroundMesh mesh{{0.3, 0.3, 0.3}, {0.4, 0.4, 0.4}, {1, 1, 1}};
  auto bins = bin_facets(mesh, l);
  REQUIRE(bins.count(0));
  CellCut cut = intersect_cell(0, mesh, l, bins.at(0));
  CHECK(cut.is_cut());
  // The notch region needs at least two convex interior pieces.
  CHECK(cut.interior_polytopes.size() >= 2);
  CHECK(cut.interior_volume() + cut.exterior_volume() ==
        doctest::Approx(0.4 * 0.4 * 0.4).epsilon(1e-12));
  // Notch volume: cell minus the [0.5,1]^2 quadrant part
  double expected_interior = 0.4 * 0.4 * 0.4 - 0.2 * 0.2 * 0.4;
  CHECK(cut.interior_volume() == doctest::Approx(expected_interior).epsilon(1e-12));
}

TEST_CASE("l-prism volume on the full mesh") {
  SurfaceMesh l = l_prism_mesh();
  BackgroundMesh mesh = build_background_mesh(bounding_box(l), {8, 8, 8}, 0.4);
  auto cuts = cut_serial(mesh, l);
  double uncut_interior = 0.0;  // cells fully inside: count via node seeds below
  // full accounting happens in the discretisation tests; here the cut cells
  // must partition their own volume exactly
  const double cell_vol = mesh.spacing.x * mesh.spacing.y * mesh.spacing.z;
  for (const auto& [cell, cut] : cuts) {
    CHECK(std::abs(cut.interior_volume() + cut.exterior_volume() - cell_vol) <
          1e-12 * cell_vol);
  }
  CHECK(total_boundary(cuts) == doctest::Approx(5.5).epsilon(1e-12));
  (void)uncut_interior;
}

TEST_CASE("face seeds of a cleanly sliced cell") {
  // Single cell cut by the cube face x = 1: left half inside.
  SurfaceMesh cube = unit_cube_mesh();
  BackgroundMesh mesh{{0.8, 0.4, 0.4}, {0.4, 0.2, 0.2}, {1, 1, 1}};
  auto bins = bin_facets(mesh, cube);
  REQUIRE(bins.count(0));
  CellCut cut = intersect_cell(0, mesh, cube, bins.at(0));
  REQUIRE(cut.is_cut());
  CHECK(cut.face_seeds[0] == Location::kIn);   // x- face at x=0.8
  CHECK(cut.face_seeds[1] == Location::kOut);  // x+ face at x=1.2
  for (int lf = 2; lf < 6; ++lf) CHECK(cut.face_seeds[lf] == Location::kCut);
  CHECK(cut.interior_volume() == doctest::Approx(0.2 * 0.2 * 0.2).epsilon(1e-12));
}

TEST_CASE("flip symmetry at the cut level") {
  SurfaceMesh tet = corner_tetra_mesh();
  BackgroundMesh mesh = build_background_mesh(bounding_box(tet), {4, 4, 4}, 0.4);
  auto cuts = cut_serial(mesh, tet);
  auto cuts_flipped = cut_serial(mesh, flipped(tet));
  REQUIRE(cuts.size() == cuts_flipped.size());
  for (const auto& [cell, cut] : cuts) {
    const CellCut& other = cuts_flipped.at(cell);
    CHECK(cut.interior_volume() == doctest::Approx(other.exterior_volume()).epsilon(1e-12));
    CHECK(cut.exterior_volume() == doctest::Approx(other.interior_volume()).epsilon(1e-12));
    CHECK(cut.boundary_area() == doctest::Approx(other.boundary_area()).epsilon(1e-12));
  }
}

TEST_CASE("surface escaping the domain is a geometric failure") {
  SurfaceMesh cube = unit_cube_mesh();
  BackgroundMesh tiny{{0.25, 0.25, 0.25}, {0.1, 0.1, 0.1}, {2, 2, 2}};
  CHECK_THROWS_AS(cut_serial(tiny, cube), GeometryError);
}

TEST_CASE("threaded and serial cutting agree") {
  SurfaceMesh sphere = icosphere_mesh(2, 1.0);
  BackgroundMesh mesh = build_background_mesh(bounding_box(sphere), {8, 8, 8}, 0.4);
  auto bins = bin_facets(mesh, sphere);
  std::vector<int64_t> cells;
  for (int64_t i = 0; i < mesh.total_cells(); ++i) cells.push_back(i);

  CutParams one_thread;
  one_thread.threads = 1;
  CutParams many;
  many.threads = 4;
  auto a = cut_cells(mesh, sphere, cells, bins, one_thread);
  auto b = cut_cells(mesh, sphere, cells, bins, many);
  REQUIRE(a.size() == b.size());
  for (const auto& [cell, cut] : a) {
    CHECK(b.at(cell).interior_volume() ==
          doctest::Approx(cut.interior_volume()).epsilon(1e-15));
    CHECK(b.at(cell).boundary_pieces.size() == cut.boundary_pieces.size());
  }
}

TEST_CASE("clip counter counts intersection attempts") {
  SurfaceMesh cube = unit_cube_mesh();
  BackgroundMesh mesh = build_background_mesh(bounding_box(cube), {4, 4, 4}, 0.4);
  auto bins = bin_facets(mesh, cube);
  std::vector<int64_t> cells;
  for (int64_t i = 0; i < mesh.total_cells(); ++i) cells.push_back(i);
  int64_t clip_calls = 0;
  cut_cells(mesh, cube, cells, bins, {}, &clip_calls);
  CHECK(clip_calls == int64_t(bins.size()));
  CHECK(clip_calls >= 56);
}
