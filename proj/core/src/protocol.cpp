#include "cutgrid/protocol.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_set>

#include "cutgrid/errors.hpp"

namespace cutgrid {

namespace {

AABB rank_box(const BackgroundMesh& mesh, const CoarsePartition& partition,
              int rank) {
  auto block = partition.rank_block(rank);
  Vec3 lo, hi;
  for (int a = 0; a < 3; ++a) {
    lo[a] = mesh.origin[a] + block[a][0] * mesh.spacing[a];
    hi[a] = mesh.origin[a] + block[a][1] * mesh.spacing[a];
  }
  return {lo, hi};
}

std::vector<int> facets_overlapping(const SurfaceMesh& surface, const AABB& box) {
  std::vector<int> out;
  for (size_t f = 0; f < surface.facets.size(); ++f) {
    AABB fb{surface.vertices[surface.facets[f][0]],
            surface.vertices[surface.facets[f][0]]};
    fb.expand(surface.vertices[surface.facets[f][1]]);
    fb.expand(surface.vertices[surface.facets[f][2]]);
    if (fb.overlaps(box)) out.push_back(int(f));
  }
  return out;
}

// Global face ids on the interface between two neighboring blocks, in an
// ordering both sides reproduce independently.
std::vector<int64_t> interface_faces(const BackgroundMesh& mesh,
                                     const CoarsePartition& partition, int rank,
                                     int neighbor) {
  auto pc = partition.rank_coords(rank);
  auto qc = partition.rank_coords(neighbor);
  int axis = -1, dir = 0;
  for (int a = 0; a < 3; ++a) {
    if (pc[a] != qc[a]) {
      axis = a;
      dir = qc[a] - pc[a];
    }
  }
  auto block = partition.rank_block(rank);
  const int fixed = dir > 0 ? block[axis][1] - 1 : block[axis][0];
  const int local_face = 2 * axis + (dir > 0 ? 1 : 0);
  const int a1 = (axis + 1) % 3, a2 = (axis + 2) % 3;

  std::vector<int64_t> out;
  for (int v = block[a2][0]; v < block[a2][1]; ++v)
    for (int u = block[a1][0]; u < block[a1][1]; ++u) {
      std::array<int, 3> c{};
      c[axis] = fixed;
      c[a1] = u;
      c[a2] = v;
      out.push_back(mesh.face_id(mesh.cell_id(c[0], c[1], c[2]), local_face));
    }
  return out;
}

void merge_face_label(Location& slot, Location incoming, const char* phase) {
  if (incoming == Location::kUndefined) return;
  if (slot == Location::kUndefined || slot == incoming) {
    slot = incoming;
    return;
  }
  if (slot == Location::kCut || incoming == Location::kCut) {
    slot = Location::kCut;
    return;
  }
  throw ProtocolError(std::string(phase) + ": in/out conflict at interface face "
                      "(inconsistent geometry orientation)");
}

// Label of a block side's coarse face from the fine faces covering it.
Location aggregate_coarse_face(const LocationMap& map,
                               const std::vector<int64_t>& faces) {
  bool any_cut = false, any_in = false, any_out = false, any_undef = false;
  for (int64_t f : faces) {
    switch (map.face_location[size_t(f)]) {
      case Location::kCut: any_cut = true; break;
      case Location::kIn: any_in = true; break;
      case Location::kOut: any_out = true; break;
      default: any_undef = true; break;
    }
  }
  if (any_cut) return Location::kCut;
  if (any_undef) return Location::kUndefined;
  if (any_in && any_out) return Location::kCut;  // separated by grazing contact
  if (any_in) return Location::kIn;
  if (any_out) return Location::kOut;
  return Location::kUndefined;
}

// Fine faces on one side of the rank's block, whether or not a neighbor
// exists there (domain-boundary sides included).
std::vector<int64_t> block_side_faces(const BackgroundMesh& mesh,
                                      const CoarsePartition& partition, int rank,
                                      int local_face) {
  auto block = partition.rank_block(rank);
  int axis = local_face / 2;
  const int fixed = (local_face % 2) ? block[axis][1] - 1 : block[axis][0];
  const int a1 = (axis + 1) % 3, a2 = (axis + 2) % 3;
  std::vector<int64_t> out;
  for (int v = block[a2][0]; v < block[a2][1]; ++v)
    for (int u = block[a1][0]; u < block[a1][1]; ++u) {
      std::array<int, 3> c{};
      c[axis] = fixed;
      c[a1] = u;
      c[a2] = v;
      out.push_back(mesh.face_id(mesh.cell_id(c[0], c[1], c[2]), local_face));
    }
  return out;
}

void resolve_undefined_components(const BackgroundMesh& mesh, LocationMap& map,
                                  const std::vector<int64_t>& scope,
                                  const SurfaceMesh& surface,
                                  std::function<Vec3(int64_t)> center_of) {
  std::unordered_set<int64_t> in_scope(scope.begin(), scope.end());
  for (int64_t cell : scope) {
    if (map.cell_location[size_t(cell)] != Location::kUndefined) continue;
    Location loc = ray_parity_location(surface, center_of(cell));
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
        if (nbr >= 0 && in_scope.count(nbr) &&
            map.cell_location[size_t(nbr)] == Location::kUndefined)
          stack.push_back(nbr);
      }
    }
  }
}

}  // namespace

RankResult distributed_intersection(int rank, const BackgroundMesh& mesh,
                                    const CoarsePartition& partition,
                                    const SurfaceMesh& surface,
                                    const CutParams& params, Transport& transport) {
  RankResult res;
  res.rank = rank;

  // Every rank filters the shared surface against its subdomain box locally;
  // no geometric data ever crosses rank boundaries.
  const AABB box = rank_box(mesh, partition, rank);
  FacetBins bins = bin_facets(mesh, surface, facets_overlapping(surface, box));

  const std::vector<int64_t> owned = partition.owned_cells(mesh, rank);
  const std::vector<int64_t> shell = subdomain_boundary_cells(mesh, partition, rank);

  // Phases 1-2: cut the subdomain boundary shell and propagate within it.
  auto cuts_shell = cut_cells(mesh, surface, shell, bins, params,
                              &res.clip_calls_shell);
  res.map = make_location_map(mesh);
  seed_into(res.map, mesh, cuts_shell);
  propagate_in_place(mesh, res.map, shell);
  transport.log_event("shell_done");

  // Phase 3: reconcile interface faces with every face neighbor.
  for (int nbr : partition.face_neighbor_ranks(rank)) {
    auto faces = interface_faces(mesh, partition, rank, nbr);
    Bytes payload(faces.size());
    for (size_t i = 0; i < faces.size(); ++i)
      payload[i] = uint8_t(res.map.face_location[size_t(faces[i])]);
    Bytes other = transport.sendrecv(kPhaseReconcile, nbr, payload);
    if (other.size() != faces.size())
      throw ProtocolError("3:reconcile: interface payload size mismatch");
    for (size_t i = 0; i < faces.size(); ++i)
      merge_face_label(res.map.face_location[size_t(faces[i])],
                       Location(other[i]), "3:reconcile");
  }

  // Phase 4: coarse cell + coarse face locations, gathered to the coarse rank.
  Bytes coarse_payload(7, uint8_t(Location::kUndefined));
  coarse_payload[0] =
      uint8_t(cuts_shell.empty() ? Location::kUndefined : Location::kCut);
  for (int lf = 0; lf < 6; ++lf)
    coarse_payload[size_t(1 + lf)] = uint8_t(aggregate_coarse_face(
        res.map, block_side_faces(mesh, partition, rank, lf)));
  transport.gather(kPhaseGather, coarse_payload);
  transport.log_event("gather_sent");

  // Phase 5 (overlapping the coarse classification): cut the bulk and
  // propagate over the whole subdomain.
  std::vector<int64_t> bulk;
  {
    std::unordered_set<int64_t> shell_set(shell.begin(), shell.end());
    for (int64_t cell : owned)
      if (!shell_set.count(cell)) bulk.push_back(cell);
  }
  auto cuts_bulk = cut_cells(mesh, surface, bulk, bins, params,
                             &res.clip_calls_bulk);
  seed_into(res.map, mesh, cuts_bulk);
  propagate_in_place(mesh, res.map, owned);
  transport.log_event("bulk_done");

  res.cuts = std::move(cuts_shell);
  for (auto& [cell, cut] : cuts_bulk) res.cuts.emplace(cell, std::move(cut));

  // Phase 6: coarse locations come back.
  Bytes coarse_loc = transport.scatter(kPhaseScatter, {});
  transport.log_event("scatter_received");
  res.coarse_location = Location(coarse_loc.at(0));

  // Phase 7: untouched subdomains take the coarse location wholesale.
  if (res.cuts.empty()) {
    Location loc = res.coarse_location;
    if (loc != Location::kIn && loc != Location::kOut)
      throw ProtocolError("7:fill: untouched subdomain received location '" +
                          std::string(to_string(loc)) + "'");
    for (int64_t cell : owned) {
      res.map.cell_location[size_t(cell)] = loc;
      for (int lf = 0; lf < 6; ++lf) {
        Location& floc = res.map.face_location[size_t(mesh.face_id(cell, lf))];
        if (floc == Location::kUndefined) floc = loc;
      }
    }
  } else {
    // Components reachable from no local seed (corner-only connectivity).
    resolve_undefined_components(mesh, res.map, owned, surface,
                                 [&](int64_t c) { return mesh.cell_center(c); });
  }
  return res;
}

void coarse_rank_program(const BackgroundMesh& mesh,
                         const CoarsePartition& partition,
                         const SurfaceMesh& surface, Transport& transport) {
  const int S = partition.rank_count();
  auto gathered = transport.gather(kPhaseGather, {});
  if (int(gathered.size()) != S)
    throw ProtocolError("4:gather: expected one payload per fine rank");

  // One coarse cell per subdomain; coarse topology reuses the Cartesian mesh.
  BackgroundMesh coarse_topo{Vec3{}, Vec3{1, 1, 1}, partition.parts};
  LocationMap cmap = make_location_map(coarse_topo);
  for (int s = 0; s < S; ++s) {
    const Bytes& payload = gathered[size_t(s)];
    if (payload.size() != 7)
      throw ProtocolError("4:gather: malformed coarse payload");
    if (Location(payload[0]) == Location::kCut)
      cmap.cell_location[size_t(s)] = Location::kCut;
    for (int lf = 0; lf < 6; ++lf)
      merge_face_label(cmap.face_location[size_t(coarse_topo.face_id(s, lf))],
                       Location(payload[size_t(1 + lf)]), "4:gather");
  }

  std::vector<int64_t> scope(size_t(S), 0);
  for (int s = 0; s < S; ++s) scope[size_t(s)] = s;
  propagate_in_place(coarse_topo, cmap, scope);
  transport.log_event("coarse_propagate_done");

  // Disconnected untouched components: one ray-parity query per component at
  // the physical center of the subdomain block.
  resolve_undefined_components(coarse_topo, cmap, scope, surface, [&](int64_t c) {
    return rank_box(mesh, partition, int(c)).center();
  });

  std::vector<Bytes> payloads(size_t(S), Bytes{});
  for (int s = 0; s < S; ++s)
    payloads[size_t(s)] = {uint8_t(cmap.cell_location[size_t(s)])};
  transport.scatter(kPhaseScatter, payloads);
}

DistributedOutcome run_distributed(const BackgroundMesh& mesh,
                                   const CoarsePartition& partition,
                                   const SurfaceMesh& surface,
                                   const CutParams& params) {
  const int S = partition.rank_count();
  DistributedOutcome outcome;
  outcome.ranks.resize(size_t(S));

  SimWorld world(S);
  world.run([&](int rank, Transport& transport) {
    if (rank == S) {
      coarse_rank_program(mesh, partition, surface, transport);
    } else {
      outcome.ranks[size_t(rank)] =
          distributed_intersection(rank, mesh, partition, surface, params, transport);
    }
  });
  outcome.trace = world.trace();
  outcome.events = world.event_logs();
  return outcome;
}

MergedDiscretisation merge_ranks(const BackgroundMesh& mesh,
                                 const CoarsePartition& partition,
                                 const DistributedOutcome& outcome) {
  MergedDiscretisation merged;
  merged.map = make_location_map(mesh);
  for (const RankResult& res : outcome.ranks) {
    for (int64_t cell : partition.owned_cells(mesh, res.rank)) {
      merged.map.cell_location[size_t(cell)] = res.map.cell_location[size_t(cell)];
      for (int lf = 0; lf < 6; ++lf) {
        int64_t fid = mesh.face_id(cell, lf);
        Location loc = res.map.face_location[size_t(fid)];
        if (loc != Location::kUndefined)
          merged.map.face_location[size_t(fid)] = loc;
      }
    }
    for (const auto& [cell, cut] : res.cuts) merged.cuts.emplace(cell, cut);
  }
  return merged;
}

bool overlap_contract_held(const DistributedOutcome& outcome) {
  for (const RankResult& res : outcome.ranks) {
    const auto& log = outcome.events[size_t(res.rank)];
    auto bulk = std::find(log.begin(), log.end(), "bulk_done");
    auto scatter = std::find(log.begin(), log.end(), "scatter_received");
    if (bulk == log.end() || scatter == log.end() || bulk > scatter) return false;
  }
  return true;
}

std::map<int64_t, double> compute_redistribute_weights(
    const LocationMap& map, const std::vector<int64_t>& cells, double w_cut) {
  std::map<int64_t, double> weights;
  for (int64_t cell : cells) {
    switch (map.cell_location[size_t(cell)]) {
      case Location::kOut: weights[cell] = 0.0; break;
      case Location::kIn: weights[cell] = 1.0; break;
      case Location::kCut: weights[cell] = w_cut; break;
      default:
        throw ProtocolError("redistribute weights: undefined cell " +
                            std::to_string(cell) + " (classification incomplete)");
    }
  }
  return weights;
}

std::string weights_report(const std::map<int64_t, double>& weights) {
  std::ostringstream out;
  out << "cell weight\n";
  for (const auto& [cell, w] : weights) out << cell << " " << w << "\n";
  return out.str();
}

}  // namespace cutgrid
