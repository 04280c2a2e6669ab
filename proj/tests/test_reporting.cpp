#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "cutgrid/discretisation.hpp"
#include "cutgrid/report.hpp"
#include "cutgrid/shapes.hpp"
#include "cutgrid/stl_io.hpp"
#include "cutgrid/vtk.hpp"

using namespace cutgrid;
namespace fs = std::filesystem;

TEST_CASE("serial discretisation of the unit cube") {
  EmbeddedDiscretisation disc = discretise_serial(unit_cube_mesh(), {4, 4, 4}, 0.4);
  CHECK(disc.measures.e_bbox < 1e-12);
  CHECK(disc.measures.e_interior < 1e-12);
  CHECK(disc.measures.interior_volume == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(disc.measures.boundary_area == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(disc.cuts.size() == 56);
  CHECK(disc.interior_cells.size() == 8);
}

TEST_CASE("report arithmetic is self-consistent") {
  EmbeddedDiscretisation disc = discretise_serial(l_prism_mesh(), {8, 8, 8}, 0.4);
  auto j = nlohmann::json::parse(make_report(disc));
  double vi = j["measures"]["interior_volume"];
  double ve = j["measures"]["exterior_volume"];
  double va = j["measures"]["domain_volume"];
  double vref = j["measures"]["reference_volume"];
  CHECK(double(j["errors"]["e_bbox"]) ==
        doctest::Approx(std::abs(vi + ve - va) / va).epsilon(1e-15));
  CHECK(double(j["errors"]["e_interior"]) ==
        doctest::Approx(std::abs(vi - vref) / std::abs(vref)).epsilon(1e-15));
  CHECK(int(j["counts"]["interior"]) + int(j["counts"]["exterior"]) +
            int(j["counts"]["cut"]) ==
        int(j["counts"]["total"]));
}

TEST_CASE("serial and simulated reports agree on all measure fields") {
  SurfaceMesh l = l_prism_mesh();
  EmbeddedDiscretisation serial = discretise_serial(l, {8, 8, 8}, 0.4);
  EmbeddedDiscretisation sim = discretise_simulated(l, {8, 8, 8}, {1, 1, 4}, 0.4);
  auto a = nlohmann::json::parse(make_report(serial));
  auto b = nlohmann::json::parse(make_report(sim));
  CHECK(a["counts"] == b["counts"]);
  for (auto& [key, value] : a["measures"].items()) {
    if (value.is_number()) {
      CHECK(double(b["measures"][key]) ==
            doctest::Approx(double(value)).epsilon(1e-12));
    }
  }
  CHECK(a["mesh"] == b["mesh"]);
  CHECK(!b.contains("messages") == false);  // sim mode reports its trace totals
  CHECK(b["messages"]["gather"] == 4);
  CHECK(b["messages"]["overlap_ok"] == true);
  CHECK(!a.contains("messages"));  // serial differs only in timing/messages
}

TEST_CASE("vtk volume re-summation equals the interior measure") {
  fs::path dir = fs::temp_directory_path() / "cutgrid_vtk_test";
  fs::create_directories(dir);
  EmbeddedDiscretisation disc = discretise_serial(l_prism_mesh(), {6, 6, 6}, 0.4);
  double vtk_volume = write_vtk_volume(disc, (dir / "vol.vtk").string());
  CHECK(std::abs(vtk_volume - disc.measures.interior_volume) < 1e-12);

  std::ifstream in(dir / "vol.vtk");
  std::string first;
  std::getline(in, first);
  CHECK(first == "# vtk DataFile Version 3.0");

  int64_t tris = write_vtk_boundary(disc, (dir / "bnd.vtk").string());
  int64_t expected = 0;
  for (const auto& [cell, cut] : disc.cuts)
    for (const auto& piece : cut.boundary_pieces)
      expected += int64_t(piece.points.size()) - 2;
  CHECK(tris == expected);
  fs::remove_all(dir);
}

TEST_CASE("vtk with an empty interior is still valid") {
  fs::path dir = fs::temp_directory_path() / "cutgrid_vtk_empty";
  fs::create_directories(dir);
  // Tiny solid in a coarse mesh: every non-exterior cell is cut.
  EmbeddedDiscretisation disc =
      discretise_serial(scaled(unit_cube_mesh(), 0.1), {2, 2, 2}, 3.0);
  CHECK(disc.interior_cells.empty());
  double vtk_volume = write_vtk_volume(disc, (dir / "vol.vtk").string());
  CHECK(std::abs(vtk_volume - disc.measures.interior_volume) < 1e-12);
  fs::remove_all(dir);
}

#ifdef CUTGRID_CLI_PATH
namespace {

int run_cli(const std::string& args) {
  std::string cmd = std::string(CUTGRID_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("cli exit codes") {
  fs::path dir = fs::temp_directory_path() / "cutgrid_cli_test";
  fs::create_directories(dir);
  fs::path stl = dir / "cube.stl";
  save_stl(unit_cube_mesh(), stl.string(), false);

  CHECK(run_cli("info " + stl.string()) == 0);
  CHECK(run_cli("cut " + stl.string() + " --cells 4,4,4") == 0);
  CHECK(run_cli("cut " + stl.string() + " --cells 8,8,8 --parts 1,1,2 --mode sim") == 0);
  CHECK(run_cli("classify " + stl.string() + " --cells 4,4,4 --w-cut 3 --out " +
                (dir / "cls").string()) == 0);
  CHECK(fs::exists(dir / "cls" / "weights.txt"));
  CHECK(run_cli("export " + stl.string() + " --cells 4,4,4 --out " +
                (dir / "exp").string()) == 0);
  CHECK(fs::exists(dir / "exp" / "report.json"));
  CHECK(fs::exists(dir / "exp" / "volume.vtk"));
  CHECK(fs::exists(dir / "exp" / "boundary.vtk"));

  CHECK(run_cli("") == 1);                          // usage
  CHECK(run_cli("cut --cells 4,4,4") == 1);         // missing positional
  CHECK(run_cli("cut /definitely/missing.stl") == 2);
  CHECK(run_cli("info " + stl.string() + "x") == 2);
  fs::remove_all(dir);
}

TEST_CASE("cli sim run exports a trace") {
  fs::path dir = fs::temp_directory_path() / "cutgrid_cli_trace";
  fs::create_directories(dir);
  fs::path stl = dir / "cube.stl";
  save_stl(unit_cube_mesh(), stl.string(), true);
  CHECK(run_cli("cut " + stl.string() +
                " --cells 8,8,8 --parts 1,1,2 --mode sim --out " +
                (dir / "out").string()) == 0);
  std::ifstream trace(dir / "out" / "trace.txt");
  REQUIRE(trace.good());
  std::string line;
  int gather_lines = 0;
  while (std::getline(trace, line))
    if (line.find(" gather ") != std::string::npos) gather_lines++;
  CHECK(gather_lines == 2);
  fs::remove_all(dir);
}
#endif
