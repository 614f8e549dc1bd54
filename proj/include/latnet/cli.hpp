#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace latnet::cli {

/// Exit codes of `run`.
enum Exit : int {
  success = 0,
  property_fails = 1,
  parse_error = 2,
  data_error = 3,
};

/// Largest matrix a command may build: structure-matrix columns k^{n+m},
/// reachability-matrix entries N², pair-system columns N²·K. Read from
/// LATNET_MAX_COLUMNS, default 10^6.
std::size_t max_columns();

/// Runs one subcommand. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace latnet::cli
