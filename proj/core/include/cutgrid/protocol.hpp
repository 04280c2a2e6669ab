#pragma once

#include <map>
#include <vector>

#include "cutgrid/classify.hpp"
#include "cutgrid/cutter.hpp"
#include "cutgrid/grid.hpp"
#include "cutgrid/transport.hpp"

namespace cutgrid {

// Protocol phase tags; numeric prefixes give the canonical trace order.
inline constexpr const char* kPhaseReconcile = "3:reconcile";
inline constexpr const char* kPhaseGather = "4:gather";
inline constexpr const char* kPhaseScatter = "6:scatter";

struct RankResult {
  int rank = -1;
  std::map<int64_t, CellCut> cuts;  // owned cut cells
  LocationMap map;                  // defined on owned cells/faces
  Location coarse_location = Location::kUndefined;
  int64_t clip_calls_shell = 0;
  int64_t clip_calls_bulk = 0;
};

// One fine rank's run of the two-level intersection protocol:
// shell cut -> shell propagation -> neighbor reconcile -> gather to coarse ->
// bulk cut + local propagation (overlapping coarse propagation) -> scatter ->
// untouched-subdomain fill.
RankResult distributed_intersection(int rank, const BackgroundMesh& mesh,
                                    const CoarsePartition& partition,
                                    const SurfaceMesh& surface,
                                    const CutParams& params, Transport& transport);

// The coarse rank's side: collects coarse locations, classifies the coarse
// mesh (per-component ray-parity fallback for disconnected undefined
// subdomains), scatters results.
void coarse_rank_program(const BackgroundMesh& mesh,
                         const CoarsePartition& partition,
                         const SurfaceMesh& surface, Transport& transport);

struct DistributedOutcome {
  std::vector<RankResult> ranks;  // indexed by fine rank
  std::vector<TraceRecord> trace;
  std::vector<std::vector<std::string>> events;
};

// Runs all S fine ranks plus the coarse rank on the simulated transport.
DistributedOutcome run_distributed(const BackgroundMesh& mesh,
                                   const CoarsePartition& partition,
                                   const SurfaceMesh& surface,
                                   const CutParams& params = {});

// Owned cells of every rank merged into one global map, with cuts.
struct MergedDiscretisation {
  LocationMap map;
  std::map<int64_t, CellCut> cuts;
};
MergedDiscretisation merge_ranks(const BackgroundMesh& mesh,
                                 const CoarsePartition& partition,
                                 const DistributedOutcome& outcome);

// Checks each fine rank finished bulk cutting before receiving the scatter.
bool overlap_contract_held(const DistributedOutcome& outcome);

// Weight 0 for out cells, 1 for in cells, w_cut for cut cells. Undefined
// cells mean an incomplete classification and are an error.
std::map<int64_t, double> compute_redistribute_weights(
    const LocationMap& map, const std::vector<int64_t>& cells, double w_cut = 1.0);

std::string weights_report(const std::map<int64_t, double>& weights);

}  // namespace cutgrid
