#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "stablefit/simulation.hpp"

namespace stablefit {

/// A simulation run as described by a key-value run file:
///
///   # comment
///   alphas  = 1.9, 1.5, 1.3
///   ns      = 100
///   reps    = 2000
///   methods = kogon-williams, infinite-ls
///   x0 = 0.1
///   d  = 1.9
///   K  = 500
///   seed = 7
///   target = alpha
///   output = results/table4.csv
///
/// Optional keys: sigma, threads, markdown (true/false), k_values (turns the
/// run into a K sweep), koutrouvelis_default and koutrouvelis_points given as
/// "alpha:n=points" pairs, e.g. "1.5:100=11, 1.9:100=9".
struct RunFile {
    SimConfig config;
    std::vector<int> k_values;
    std::string output;
    bool markdown = false;
};

/// Names accepted by parse_run_file, in documentation order.
[[nodiscard]] const std::vector<std::string>& run_file_keys();

/// Throws ConfigError naming the line on unknown keys or malformed values.
/// Keys not present keep the SimConfig defaults; lists default to empty.
[[nodiscard]] RunFile parse_run_file(std::string_view text);

/// Applies a single key = value assignment, as parse_run_file would.
void apply_run_setting(RunFile& run, std::string_view key, std::string_view value);

}  // namespace stablefit
