#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "af/config.hpp"
#include "af/timeloop.hpp"

namespace af {

/// Calls f(model) with the model instance matching spec.model.
template <typename F>
decltype(auto) with_model(const ProblemSpec& spec, F&& f) {
  switch (spec.model) {
    case ModelKind::Advection: return f(Advection{});
    case ModelKind::Burgers: return f(Burgers{});
    case ModelKind::Euler: break;
  }
  return f(make_euler(spec));
}

/// Runs a configured problem, writing solution dumps at the requested
/// output times and at t_end, the residual history and `report.json`
/// into cfg.output_dir (skipped when it is empty).
RunReport run_config(const RunConfig& cfg, std::ostream& log);

/// Runs a fully specified problem without writing anything.
RunReport run_problem(const ProblemSpec& spec, bool bp_dt = true);

struct ConvergenceRow {
  int n = 0;
  std::vector<double> error;  // l1 per component
  std::vector<std::optional<double>> order;  // vs the previous row; empty on the first
};

/// l1 errors on n x n meshes (scaled to the problem's aspect ratio) and the
/// observed orders between consecutive meshes.
std::vector<ConvergenceRow> convergence_suite(const ProblemSpec& base, const std::vector<int>& meshes);

std::string format_report_json(const RunReport& r);
std::string format_convergence_table(const std::vector<ConvergenceRow>& rows, ModelKind model);

}  // namespace af
