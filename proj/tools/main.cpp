#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cutgrid/discretisation.hpp"
#include "cutgrid/errors.hpp"
#include "cutgrid/report.hpp"
#include "cutgrid/shapes.hpp"
#include "cutgrid/stl_io.hpp"
#include "cutgrid/vtk.hpp"

namespace fs = std::filesystem;
using namespace cutgrid;

namespace {

struct RunConfig {
  std::string stl_path;
  std::vector<int> cells{16, 16, 16};
  std::vector<int> parts{1, 1, 1};
  double enlargement = 0.4;
  double tol_geom = 1e-9;
  double w_cut = 1.0;
  std::string mode = "serial";
  std::string out_dir;
  bool vtk = false;
};

std::array<int, 3> to_array3(const std::vector<int>& v, const char* what) {
  if (v.size() != 3)
    throw CLI::ValidationError(std::string(what) + " needs exactly 3 values");
  for (int x : v)
    if (x < 1) throw CLI::ValidationError(std::string(what) + " values must be >= 1");
  return {v[0], v[1], v[2]};
}

SurfaceMesh load_input(const std::string& path) {
  if (!fs::exists(path)) throw InputError("no such file: " + path);
  return load_stl(path);
}

EmbeddedDiscretisation run_pipeline(const RunConfig& cfg, const SurfaceMesh& surface) {
  CutParams params;
  params.tol_geom_rel = cfg.tol_geom;
  auto cells = to_array3(cfg.cells, "--cells");
  auto parts = to_array3(cfg.parts, "--parts");
  if (cfg.mode == "serial") {
    if (parts != std::array<int, 3>{1, 1, 1})
      throw InputError("serial mode requires --parts 1,1,1");
    return discretise_serial(surface, cells, cfg.enlargement, params);
  }
  if (cfg.mode == "sim")
    return discretise_simulated(surface, cells, parts, cfg.enlargement, params);
  throw InputError("unknown mode: " + cfg.mode + " (expected serial|sim)");
}

std::string trace_lines(const EmbeddedDiscretisation& disc) {
  std::ostringstream out;
  for (const TraceRecord& r : disc.trace)
    out << r.phase << " " << to_string(r.kind) << " " << r.src << " " << r.dst
        << " " << r.bytes << "\n";
  return out.str();
}

void write_outputs(const RunConfig& cfg, const EmbeddedDiscretisation& disc) {
  if (cfg.out_dir.empty()) {
    std::cout << make_report(disc);
    return;
  }
  fs::create_directories(cfg.out_dir);
  fs::path dir(cfg.out_dir);
  write_report(disc, (dir / "report.json").string());
  if (cfg.vtk) {
    write_vtk_volume(disc, (dir / "volume.vtk").string());
    write_vtk_boundary(disc, (dir / "boundary.vtk").string());
  }
  if (!disc.trace.empty()) {
    std::ofstream out(dir / "trace.txt");
    out << trace_lines(disc);
  }
  std::cout << "wrote " << (dir / "report.json").string() << "\n";
}

void add_run_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("stl", cfg.stl_path, "input STL file")->required();
  cmd->add_option("--cells", cfg.cells, "background cells per axis a,b,c")
      ->delimiter(',')
      ->expected(3);
  cmd->add_option("--parts", cfg.parts, "subdomain parts per axis a,b,c")
      ->delimiter(',')
      ->expected(3);
  cmd->add_option("--enlargement", cfg.enlargement,
                  "relative bounding-box enlargement");
  cmd->add_option("--tol-geom", cfg.tol_geom,
                  "geometric tolerance relative to the cell diagonal");
  cmd->add_option("--w-cut", cfg.w_cut, "redistribution weight of cut cells");
  cmd->add_option("--mode", cfg.mode, "serial|sim");
  cmd->add_option("--out", cfg.out_dir, "output directory");
  cmd->add_flag("--vtk", cfg.vtk, "write VTK volume/boundary files");
}

int cmd_info(const std::string& path) {
  SurfaceMesh surface = load_input(path);
  auto report = is_watertight(surface);
  auto measures = surface_measures(surface);
  AABB box = bounding_box(surface);

  std::cout << "file: " << path << "\n";
  std::cout << "facets: " << surface.facet_count()
            << ", vertices: " << surface.vertices.size();
  if (surface.dropped_degenerate)
    std::cout << " (dropped " << surface.dropped_degenerate << " degenerate)";
  std::cout << "\n";
  if (report.watertight) {
    std::cout << "watertight: yes\n";
  } else {
    std::cout << "watertight: no (" << report.open_edges.size() << " open edges, "
              << report.non_manifold_edges.size() << " non-manifold, "
              << report.misoriented_edges.size() << " misoriented)\n";
  }
  std::cout << "bbox: [" << box.min_corner.x << ", " << box.min_corner.y << ", "
            << box.min_corner.z << "] - [" << box.max_corner.x << ", "
            << box.max_corner.y << ", " << box.max_corner.z << "]\n";
  std::cout << "area: " << measures.surface_area << "\n";
  if (measures.volume_reliable)
    std::cout << "volume: " << measures.enclosed_volume << "\n";
  else
    std::cout << "volume: unreliable (not watertight)\n";
  return 0;
}

int cmd_cut(const RunConfig& cfg) {
  SurfaceMesh surface = load_input(cfg.stl_path);
  EmbeddedDiscretisation disc = run_pipeline(cfg, surface);
  write_outputs(cfg, disc);
  return 0;
}

int cmd_classify(const RunConfig& cfg) {
  SurfaceMesh surface = load_input(cfg.stl_path);
  EmbeddedDiscretisation disc = run_pipeline(cfg, surface);

  std::vector<int64_t> all(size_t(disc.mesh.total_cells()));
  for (int64_t i = 0; i < disc.mesh.total_cells(); ++i) all[size_t(i)] = i;
  auto weights = compute_redistribute_weights(disc.map, all, cfg.w_cut);

  std::cout << "interior " << disc.interior_cells.size() << "\n";
  std::cout << "exterior " << disc.exterior_cells.size() << "\n";
  std::cout << "cut " << disc.cuts.size() << "\n";
  if (cfg.out_dir.empty()) {
    std::cout << weights_report(weights);
  } else {
    fs::create_directories(cfg.out_dir);
    std::ofstream out(fs::path(cfg.out_dir) / "weights.txt");
    out << weights_report(weights);
    std::cout << "wrote " << (fs::path(cfg.out_dir) / "weights.txt").string() << "\n";
  }
  return 0;
}

int cmd_export(const RunConfig& cfg) {
  RunConfig c = cfg;
  c.vtk = true;
  if (c.out_dir.empty()) c.out_dir = ".";
  SurfaceMesh surface = load_input(c.stl_path);
  EmbeddedDiscretisation disc = run_pipeline(c, surface);
  write_outputs(c, disc);
  return 0;
}

struct BenchRow {
  std::array<int, 3> cells;
  std::array<int, 3> parts;
};

// Grid syntax: "16,16,16:1,1,1;32,32,32:2,2,2".
std::vector<BenchRow> parse_grid(const std::string& grid) {
  std::vector<BenchRow> rows;
  std::stringstream entries(grid);
  std::string entry;
  while (std::getline(entries, entry, ';')) {
    auto colon = entry.find(':');
    if (colon == std::string::npos)
      throw InputError("bad --grid entry (expected cells:parts): " + entry);
    auto ints = [](const std::string& s) {
      std::vector<int> v;
      std::stringstream ss(s);
      std::string tok;
      while (std::getline(ss, tok, ',')) v.push_back(std::stoi(tok));
      return v;
    };
    rows.push_back({to_array3(ints(entry.substr(0, colon)), "--grid cells"),
                    to_array3(ints(entry.substr(colon + 1)), "--grid parts")});
  }
  if (rows.empty()) throw InputError("empty --grid");
  return rows;
}

int cmd_bench(const std::string& path, const std::string& grid, double enlargement) {
  SurfaceMesh surface =
      path.empty() ? icosphere_mesh(3, 1.0) : load_input(path);
  std::vector<BenchRow> rows = parse_grid(grid);

  std::cout << "N,S,cells,parts,cut_cells,gather,scatter,sendrecv,"
               "t_distributed,t_merge,t_measures\n";
  for (const BenchRow& row : rows) {
    EmbeddedDiscretisation disc =
        discretise_simulated(surface, row.cells, row.parts, enlargement);
    int64_t gathers = 0, scatters = 0, sendrecvs = 0;
    for (const TraceRecord& r : disc.trace) {
      if (r.kind == MsgKind::kGather) gathers++;
      else if (r.kind == MsgKind::kScatter) scatters++;
      else sendrecvs++;
    }
    auto timing = [&](const std::string& name) {
      for (const PhaseTiming& t : disc.timings)
        if (t.name == name) return t.seconds;
      return 0.0;
    };
    std::cout << disc.mesh.total_cells() << "," << disc.fine_ranks << ","
              << row.cells[0] << "x" << row.cells[1] << "x" << row.cells[2] << ","
              << row.parts[0] << "x" << row.parts[1] << "x" << row.parts[2] << ","
              << disc.cuts.size() << "," << gathers << "," << scatters << ","
              << sendrecvs << "," << timing("distributed") << ","
              << timing("merge") << "," << timing("measures") << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cut-cell geometric discretisation of STL surfaces on Cartesian "
               "background meshes"};
  app.require_subcommand(1);

  std::string info_path;
  CLI::App* info = app.add_subcommand("info", "summarize an STL surface");
  info->add_option("stl", info_path, "input STL file")->required();

  RunConfig cut_cfg, classify_cfg, export_cfg;
  add_run_options(app.add_subcommand("cut", "cut and classify; write a report"),
                  cut_cfg);
  add_run_options(
      app.add_subcommand("classify", "classify and emit redistribution weights"),
      classify_cfg);
  add_run_options(app.add_subcommand("export", "cut and write VTK output"),
                  export_cfg);

  std::string bench_stl, bench_grid = "16,16,16:1,1,1;32,32,32:2,2,2";
  double bench_enlargement = 0.4;
  CLI::App* bench = app.add_subcommand("bench", "simulated weak-scaling rows (CSV)");
  bench->add_option("--stl", bench_stl, "input STL (default: built-in icosphere)");
  bench->add_option("--grid", bench_grid, "semicolon list of cells:parts");
  bench->add_option("--enlargement", bench_enlargement, "bounding-box enlargement");

  try {
    app.parse(argc, argv);
    if (info->parsed()) return cmd_info(info_path);
    if (app.got_subcommand("cut")) return cmd_cut(cut_cfg);
    if (app.got_subcommand("classify")) return cmd_classify(classify_cfg);
    if (app.got_subcommand("export")) return cmd_export(export_cfg);
    if (bench->parsed()) return cmd_bench(bench_stl, bench_grid, bench_enlargement);
    return 1;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const GeometryError& e) {
    std::cerr << "geometric failure: " << e.what() << "\n";
    return 3;
  } catch (const ProtocolError& e) {
    std::cerr << "protocol failure: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
