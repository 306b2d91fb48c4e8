// Command-line front end: run a configured benchmark, tabulate convergence,
// or list the built-in problems.
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "af/driver.hpp"
#include "af/errors.hpp"

namespace {

std::vector<int> parse_meshes(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      std::size_t used = 0;
      const int n = std::stoi(item, &used);
      if (used != item.size() || n <= 0) throw std::invalid_argument(item);
      out.push_back(n);
    } catch (const std::exception&) {
      throw af::ConfigError("--meshes expects positive integers separated by commas, got '" + item + "'");
    }
  }
  if (out.empty()) throw af::ConfigError("--meshes is empty");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"third-order Active Flux solver for 2D conservation laws"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  auto* run = app.add_subcommand("run", "run the problem described by a config file");
  run->add_option("--config", config_path, "config file (key = value lines)")->required();
  run->add_option("--out", out_dir, "output directory, overrides output_dir");

  std::string problem, meshes = "32,64,128", splitting;
  double t_end = -1;
  auto* conv = app.add_subcommand("converge", "l1 errors and observed orders over a mesh sequence");
  conv->add_option("--problem", problem, "problem name")->required();
  conv->add_option("--meshes", meshes, "comma-separated cells per side");
  conv->add_option("--splitting", splitting, "llf, sw or vh");
  conv->add_option("--t-end", t_end, "final time override");

  auto* list = app.add_subcommand("list-problems", "print the built-in benchmarks");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      af::RunConfig cfg = af::load_config(config_path);
      if (!out_dir.empty()) cfg.output_dir = out_dir;
      const af::RunReport rep = af::run_config(cfg, std::cerr);
      std::cout << af::format_report_json(rep) << '\n';
    } else if (conv->parsed()) {
      af::ProblemOverrides o;
      if (t_end >= 0) o.t_end = t_end;
      af::ProblemSpec spec = af::make_problem(problem, o);
      if (!splitting.empty()) spec.splitting = af::parse_splitting(splitting);
      af::validate_problem(spec);
      const auto rows = af::convergence_suite(spec, parse_meshes(meshes));
      std::cout << af::format_convergence_table(rows, spec.model);
    } else if (list->parsed()) {
      for (const auto& name : af::problem_names()) {
        const auto spec = af::make_problem(name);
        std::cout << name << "  " << spec.description << '\n';
      }
    }
  } catch (const af::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const af::NumericsError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const af::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return 4;
  }
  return 0;
}
