#include "af/driver.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "af/io.hpp"

namespace af {

namespace {

Metadata run_metadata(const ProblemSpec& spec, const Grid& g, double t, const std::string& echo) {
  Metadata m{{"problem", spec.name},
             {"model", to_string(spec.model)},
             {"mesh", std::to_string(g.n1) + "x" + std::to_string(g.n2)},
             {"domain", format_number(g.x0) + "," + format_number(g.x1) + "," + format_number(g.y0) + "," +
                            format_number(g.y1)},
             {"time", format_number(t)},
             {"splitting", to_string(spec.splitting)}};
  if (spec.model == ModelKind::Euler) m.emplace_back("gamma", format_number(spec.gamma));
  if (!echo.empty()) m.emplace_back("config", echo);
  return m;
}

std::string time_tag(int index) {
  std::ostringstream os;
  os << "out" << std::setw(3) << std::setfill('0') << index;
  return os.str();
}

}  // namespace

RunReport run_problem(const ProblemSpec& spec, bool bp_dt) {
  return with_model(spec, [&](const auto& model) {
    Solver<std::decay_t<decltype(model)>> solver(spec, model);
    solver.control().bp_dt_enforced = bp_dt;
    return solver.run();
  });
}

RunReport run_config(const RunConfig& cfg, std::ostream& log) {
  const ProblemSpec spec = resolve_problem(cfg);
  return with_model(spec, [&](const auto& model) {
    using Model = std::decay_t<decltype(model)>;
    Solver<Model> solver(spec, model);
    if (cfg.bp_dt) solver.control().bp_dt_enforced = *cfg.bp_dt;
    const bool write = !cfg.output_dir.empty();
    const std::filesystem::path dir = cfg.output_dir;

    int dumps = 0;
    auto dump = [&](const std::string& tag) {
      const Metadata meta = run_metadata(spec, solver.grid(), solver.time(), cfg.source);
      write_solution(dir, tag, solver.state(), solver.grid(), meta);
      if (cfg.dump_theta) write_theta(dir, tag, solver, meta);
    };

    RunOptions opt;
    opt.log_every = cfg.log_every;
    opt.log = &log;
    opt.output_times = cfg.output_times;
    if (write) opt.on_output = [&](double) { dump(time_tag(dumps++)); };
    RunReport rep = solver.run(opt);
    if (write) {
      dump("final");
      write_residuals(dir / "residual.csv", run_metadata(spec, solver.grid(), solver.time(), ""),
                      rep.residual_history);
      std::ofstream js(dir / "report.json");
      if (!js) throw IoError("cannot write " + (dir / "report.json").string());
      js << format_report_json(rep) << '\n';
    }
    return rep;
  });
}

std::vector<ConvergenceRow> convergence_suite(const ProblemSpec& base, const std::vector<int>& meshes) {
  if (!base.exact) throw ConfigError("problem '" + base.name + "' has no exact solution to converge against");
  std::vector<ConvergenceRow> rows;
  const double aspect = double(base.n2) / double(base.n1);
  for (int n : meshes) {
    ProblemSpec s = base;
    s.n1 = n;
    s.n2 = std::max(1, int(std::lround(n * aspect)));
    ConvergenceRow row;
    row.n = n;
    row.error = run_problem(s).l1_error;
    if (!rows.empty()) {
      const auto& prev = rows.back();
      for (std::size_t c = 0; c < row.error.size(); ++c) {
        const double ratio = prev.error[c] / row.error[c];
        const double h = double(prev.n) / double(n);
        if (prev.n == n || !(ratio > 0) || !std::isfinite(ratio) || row.error[c] == prev.error[c]) {
          row.order.push_back(std::nullopt);
        } else {
          row.order.push_back(std::log(ratio) / std::log(1.0 / h));
        }
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string format_report_json(const RunReport& r) {
  nlohmann::json j;
  j["problem"] = r.problem;
  j["model"] = to_string(r.model);
  j["mesh"] = {r.n1, r.n2};
  j["t_final"] = r.t_final;
  j["steps"] = r.steps;
  j["wall_seconds"] = r.wall_seconds;
  j["average_min"] = r.avg_min;
  j["average_max"] = r.avg_max;
  j["point_min"] = r.point_min;
  j["point_max"] = r.point_max;
  if (!r.l1_error.empty()) j["l1_error"] = r.l1_error;
  if (r.model == ModelKind::Euler) {
    j["min_density"] = r.min_density;
    j["min_pressure"] = r.min_pressure;
  }
  return j.dump(2);
}

std::string format_convergence_table(const std::vector<ConvergenceRow>& rows, ModelKind model) {
  const auto vars = variable_names(model);
  std::ostringstream os;
  os << std::setw(6) << "N";
  for (const auto& v : vars) os << std::setw(14) << ("l1(" + v + ")") << std::setw(8) << "order";
  os << '\n';
  for (const auto& r : rows) {
    os << std::setw(6) << r.n;
    for (std::size_t c = 0; c < r.error.size(); ++c) {
      os << std::setw(14) << std::scientific << std::setprecision(4) << r.error[c];
      if (c < r.order.size() && r.order[c]) {
        os << std::setw(8) << std::fixed << std::setprecision(2) << *r.order[c];
      } else {
        os << std::setw(8) << "-";
      }
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace af
