#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "polyproj/iterate.hpp"
#include "polyproj/tolerances.hpp"

namespace polyproj::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitBadInput = 1;
inline constexpr int kExitEmpty = 2;

struct ExperimentConfig {
  std::uint64_t seed = 0;
  int dim = 2;
  int trials = 0;
  std::optional<BehaviorTag> case_filter;
  int k_max = 50;
  Tolerances tolerances;
};

/// Throws InvalidArgument on schema violations.
ExperimentConfig parse_experiment_config(const std::string& json_text,
                                         const Tolerances& base);

/// Writes a JSON result for one point of an instance to `out`.
int cmd_project(const std::string& instance_path, int point_index,
                const std::string& method, const std::string& trace_path,
                const Tolerances& tol, std::ostream& out, std::ostream& err);

/// Writes rates.csv, exactness.csv, dykstra.csv and summary.json into
/// out_dir and echoes the summary to `out`.
int cmd_experiment(const std::string& config_path, const std::string& out_dir,
                   const Tolerances& tol, std::ostream& out, std::ostream& err);

/// Writes the instance to out_file, or to `out` when out_file is empty.
int cmd_generate(std::uint64_t seed, int dim, const std::string& kind,
                 const std::string& out_file, std::ostream& out,
                 std::ostream& err);

/// Full command-line entry point.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace polyproj::cli
