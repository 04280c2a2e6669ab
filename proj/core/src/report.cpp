#include "cutgrid/report.hpp"

#include <fstream>

#include <json.hpp>

#include "cutgrid/errors.hpp"

namespace cutgrid {

std::string make_report(const EmbeddedDiscretisation& disc, int indent) {
  nlohmann::json j;
  j["mesh"] = {{"cells", disc.mesh.cells},
               {"origin", {disc.mesh.origin.x, disc.mesh.origin.y, disc.mesh.origin.z}},
               {"spacing", {disc.mesh.spacing.x, disc.mesh.spacing.y, disc.mesh.spacing.z}}};
  j["counts"] = {{"interior", disc.interior_cells.size()},
                 {"exterior", disc.exterior_cells.size()},
                 {"cut", disc.cuts.size()},
                 {"total", disc.mesh.total_cells()}};

  const Measures& m = disc.measures;
  j["measures"] = {{"interior_volume", m.interior_volume},
                   {"exterior_volume", m.exterior_volume},
                   {"domain_volume", m.domain_volume},
                   {"boundary_area", m.boundary_area},
                   {"reference_volume", m.reference_volume},
                   {"interior_reliable", m.interior_reliable}};
  j["errors"] = {{"e_bbox", m.e_bbox}, {"e_interior", m.e_interior}};

  nlohmann::json timings = nlohmann::json::object();
  for (const PhaseTiming& t : disc.timings) timings[t.name] = t.seconds;
  j["timings"] = timings;

  if (!disc.trace.empty()) {
    int64_t gathers = 0, scatters = 0, sendrecvs = 0, bytes = 0;
    for (const TraceRecord& r : disc.trace) {
      bytes += int64_t(r.bytes);
      switch (r.kind) {
        case MsgKind::kGather: gathers++; break;
        case MsgKind::kScatter: scatters++; break;
        default: sendrecvs++; break;
      }
    }
    j["messages"] = {{"fine_ranks", disc.fine_ranks},
                     {"gather", gathers},
                     {"scatter", scatters},
                     {"sendrecv", sendrecvs},
                     {"bytes", bytes},
                     {"overlap_ok", disc.overlap_ok}};
  }
  return j.dump(indent) + "\n";
}

void write_report(const EmbeddedDiscretisation& disc, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write report: " + path);
  out << make_report(disc);
}

}  // namespace cutgrid
