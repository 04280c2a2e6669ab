#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "cutgrid/errors.hpp"
#include "cutgrid/shapes.hpp"
#include "cutgrid/stl_io.hpp"
#include "cutgrid/surface.hpp"

using namespace cutgrid;

TEST_CASE("unit cube mesh oracle") {
  SurfaceMesh cube = unit_cube_mesh();
  CHECK(cube.vertices.size() == 8);  // soup welded to the 8 corners
  CHECK(cube.facet_count() == 12);
  CHECK(is_watertight(cube).watertight);
  auto m = surface_measures(cube);
  CHECK(m.enclosed_volume == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(m.surface_area == doctest::Approx(6.0).epsilon(1e-14));
}

TEST_CASE("corner tetra volume is s^3/6") {
  SurfaceMesh tet = corner_tetra_mesh();
  CHECK(tet.facet_count() == 4);
  CHECK(is_watertight(tet).watertight);
  auto m = surface_measures(tet);
  CHECK(m.enclosed_volume == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
  // scaled copy: volume scales cubically
  auto half = surface_measures(scaled(tet, 0.5));
  CHECK(half.enclosed_volume == doctest::Approx(1.0 / 48.0).epsilon(1e-14));
}

TEST_CASE("icosphere refinement approaches the analytic sphere") {
  SurfaceMesh sphere = icosphere_mesh(4, 1.0);
  CHECK(sphere.facet_count() == 5120);
  CHECK(is_watertight(sphere).watertight);
  auto m = surface_measures(sphere);
  const double exact = 4.0 * M_PI / 3.0;
  CHECK(std::abs(m.enclosed_volume - exact) / exact < 0.0025);
  // coarser tessellations are strictly worse
  auto coarse = surface_measures(icosphere_mesh(2, 1.0));
  CHECK(std::abs(coarse.enclosed_volume - exact) >
        std::abs(m.enclosed_volume - exact));
}

TEST_CASE("l-prism oracle") {
  SurfaceMesh l = l_prism_mesh();
  CHECK(is_watertight(l).watertight);
  auto m = surface_measures(l);
  CHECK(m.enclosed_volume == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(m.surface_area == doctest::Approx(5.5).epsilon(1e-14));
}

TEST_CASE("flipping reverses the enclosed volume") {
  SurfaceMesh cube = unit_cube_mesh();
  SurfaceMesh inside_out = flipped(cube);
  CHECK(is_watertight(inside_out).watertight);
  CHECK(surface_measures(inside_out).enclosed_volume ==
        doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("open surface is reported with its open edges") {
  SurfaceMesh cube = unit_cube_mesh();
  std::vector<std::array<Vec3, 3>> tris;
  for (size_t f = 0; f + 1 < cube.facet_count(); ++f) {  // drop the last facet
    tris.push_back({cube.vertices[cube.facets[f][0]],
                    cube.vertices[cube.facets[f][1]],
                    cube.vertices[cube.facets[f][2]]});
  }
  SurfaceMesh open_cube = build_surface(tris, {}, {});
  auto report = is_watertight(open_cube);
  CHECK(!report.watertight);
  CHECK(report.open_edges.size() == 3);
  CHECK(!surface_measures(open_cube).volume_reliable);
}

TEST_CASE("degenerate facets are dropped and counted") {
  Vec3 a{0, 0, 0}, b{1, 0, 0}, c{0, 1, 0};
  std::vector<std::array<Vec3, 3>> tris{{a, b, c}, {a, a, b}};
  SurfaceMesh m = build_surface(tris, {}, {});
  CHECK(m.facet_count() == 1);
  CHECK(m.dropped_degenerate == 1);
  CHECK_THROWS_AS(build_surface({{a, a, b}}, {}, {}), InputError);
  CHECK_THROWS_AS(build_surface({}, {}, {}), InputError);
}

TEST_CASE("stored normals are ignored, winding wins") {
  Vec3 a{0, 0, 0}, b{1, 0, 0}, c{0, 1, 0};
  SurfaceMesh m = build_surface({{a, b, c}}, {{Vec3{0, 0, -1}}}, {});
  CHECK(m.facet_normals[0].z == doctest::Approx(1.0));
}

TEST_CASE("stl roundtrip, both encodings") {
  SurfaceMesh l = l_prism_mesh();
  for (bool binary : {true, false}) {
    auto bytes = binary ? write_stl_binary(l) : write_stl_ascii(l);
    SurfaceMesh back = parse_stl(bytes);
    CHECK(back.facet_count() == l.facet_count());
    CHECK(back.vertices.size() == l.vertices.size());
    auto m = surface_measures(back);
    CHECK(m.enclosed_volume == doctest::Approx(0.75).epsilon(1e-12));
  }
}

TEST_CASE("stl files on disk") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "cutgrid_stl_test";
  fs::create_directories(dir);
  SurfaceMesh cube = unit_cube_mesh();
  save_stl(cube, (dir / "cube_bin.stl").string(), true);
  save_stl(cube, (dir / "cube_asc.stl").string(), false);
  CHECK(surface_measures(load_stl((dir / "cube_bin.stl").string())).enclosed_volume ==
        doctest::Approx(1.0));
  CHECK(surface_measures(load_stl((dir / "cube_asc.stl").string())).enclosed_volume ==
        doctest::Approx(1.0));
  CHECK_THROWS_AS(load_stl((dir / "missing.stl").string()), InputError);
  fs::remove_all(dir);
}

TEST_CASE("multi-solid ascii gets distinct region labels") {
  SurfaceMesh cube = unit_cube_mesh();
  auto one = write_stl_ascii(cube);
  std::vector<char> two = one;
  two.insert(two.end(), one.begin(), one.end());
  SurfaceMesh m = parse_stl(two);
  CHECK(m.facet_count() == 24);
  int lo = m.facet_labels.front(), hi = m.facet_labels.back();
  CHECK(lo != hi);
}

TEST_CASE("garbage input is an input error") {
  std::vector<char> junk{'n', 'o', 't', ' ', 's', 't', 'l'};
  CHECK_THROWS_AS(parse_stl(junk), InputError);
}

TEST_CASE("tolerance welding snaps nearby vertices") {
  Vec3 a{0, 0, 0}, b{1, 0, 0}, c{0, 1, 0};
  Vec3 a2{1e-7, 0, 0};  // same corner, jittered
  std::vector<std::array<Vec3, 3>> tris{{a, b, c}, {b, a2, Vec3{0, 0, 1}}};
  SurfaceMesh exact = build_surface(tris, {}, {}, 0.0);
  SurfaceMesh welded = build_surface(tris, {}, {}, 1e-6);
  CHECK(exact.vertices.size() == 5);
  CHECK(welded.vertices.size() == 4);
}
