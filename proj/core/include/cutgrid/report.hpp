#pragma once

#include <string>

#include "cutgrid/discretisation.hpp"

namespace cutgrid {

// JSON run report: cell counts per class, measures, errors, per-phase wall
// time, and (for simulated runs) the message totals from the trace.
std::string make_report(const EmbeddedDiscretisation& disc, int indent = 2);

void write_report(const EmbeddedDiscretisation& disc, const std::string& path);

}  // namespace cutgrid
