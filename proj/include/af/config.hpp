#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "af/problems.hpp"

namespace af {

/// A run as described by a `key = value` config file. Unset options keep
/// the problem's defaults.
struct RunConfig {
  std::string problem;
  std::optional<int> n1, n2;
  std::optional<double> cfl, kappa, t_end, gamma, eps;
  std::optional<bool> limit_average, limit_point, sensor, force_low_order, bp_dt;
  std::optional<MpMode> mp_mode;
  std::optional<SplittingKind> splitting;
  std::string output_dir = "out";
  std::vector<double> output_times;
  bool dump_theta = false;
  int log_every = 0;
  std::string source;  // the parsed text, echoed into output metadata
};

/// Throws ConfigError naming the offending line.
RunConfig parse_config(const std::string& text);
/// Throws IoError if the file can't be read.
RunConfig load_config(const std::filesystem::path& path);

/// The problem with every config override applied, validated.
ProblemSpec resolve_problem(const RunConfig& cfg);

}  // namespace af
