#pragma once

#include <string>

#include "ecotour/mip.hpp"

namespace ecotour {

// Render the model in LP file format (CPLEX dialect): objective, rows,
// bounds, binaries. Output is deterministic for a given model.
std::string to_lp_format(const MipModel& model);

void write_lp_file(const MipModel& model, const std::string& path);

} // namespace ecotour
