#pragma once

#include <string>
#include <vector>

#include "sirmeta/config.hpp"

namespace sirmeta {

// Executes one experiment described by the config and writes its CSV
// output(s); returns the paths written.  Throws on any validation or numeric
// error; the CLI maps that to a non-zero exit code.
std::vector<std::string> run(const ExperimentConfig& cfg);

} // namespace sirmeta
