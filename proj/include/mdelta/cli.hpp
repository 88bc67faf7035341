#pragma once

// Batch CLI: compute, scenario, oracle, dump-tournament. Payload goes to
// `out`, diagnostics to `err`; exit 0 ok, 1 data/validation, 2 usage.

#include <iosfwd>
#include <string>
#include <vector>

namespace mdelta {

inline constexpr const char* kVersion = "0.1.0";

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace mdelta
