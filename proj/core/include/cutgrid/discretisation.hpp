#pragma once

#include <map>
#include <string>
#include <vector>

#include "cutgrid/classify.hpp"
#include "cutgrid/cutter.hpp"
#include "cutgrid/grid.hpp"
#include "cutgrid/protocol.hpp"

namespace cutgrid {

struct Measures {
  double interior_volume = 0.0;
  double exterior_volume = 0.0;
  double domain_volume = 0.0;
  double boundary_area = 0.0;
  double e_bbox = 0.0;      // |V_in + V_out - V_domain| / V_domain
  double e_interior = 0.0;  // vs. the surface's enclosed volume
  double reference_volume = 0.0;
  bool interior_reliable = false;  // reference requires a watertight surface
};

struct PhaseTiming {
  std::string name;
  double seconds = 0.0;
};

// Completed geometric discretisation: classification, clipped polytopes,
// boundary pieces, and the integrated measures.
struct EmbeddedDiscretisation {
  BackgroundMesh mesh;
  LocationMap map;
  std::map<int64_t, CellCut> cuts;
  std::vector<int64_t> interior_cells;  // full cells, location in
  std::vector<int64_t> exterior_cells;  // full cells, location out
  Measures measures;
  std::vector<PhaseTiming> timings;

  // Simulated-distributed runs only.
  int fine_ranks = 1;
  std::vector<TraceRecord> trace;
  bool overlap_ok = true;
};

Measures compute_measures(const BackgroundMesh& mesh, const LocationMap& map,
                          const std::map<int64_t, CellCut>& cuts,
                          const SurfaceMesh& surface);

// Single-rank pipeline: cut -> classify -> measures.
EmbeddedDiscretisation discretise_serial(const SurfaceMesh& surface,
                                         std::array<int, 3> cells,
                                         double enlargement,
                                         const CutParams& params = {});

// Same, over a prebuilt mesh.
EmbeddedDiscretisation discretise_serial(const SurfaceMesh& surface,
                                         const BackgroundMesh& mesh,
                                         const CutParams& params = {});

// Simulated-distributed pipeline on S = parts[0]*parts[1]*parts[2] fine ranks
// plus the coarse rank, merged back to a global discretisation.
EmbeddedDiscretisation discretise_simulated(const SurfaceMesh& surface,
                                            std::array<int, 3> cells,
                                            std::array<int, 3> parts,
                                            double enlargement,
                                            const CutParams& params = {});

EmbeddedDiscretisation discretise_simulated(const SurfaceMesh& surface,
                                            const BackgroundMesh& mesh,
                                            std::array<int, 3> parts,
                                            const CutParams& params = {});

}  // namespace cutgrid
