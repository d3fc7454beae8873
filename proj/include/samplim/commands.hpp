#pragma once

#include "samplim/config.hpp"

namespace samplim {

// Executes the configured command, writing <command>.txt and <command>.csv
// under the out directory and echoing one of them to stdout per `format`.
// Returns 0 on pass, 1 on verified failure, 2 on usage error.
int run(const RunConfig& cfg);

}  // namespace samplim
