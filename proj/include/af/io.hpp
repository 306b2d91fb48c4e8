#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "af/errors.hpp"
#include "af/mesh.hpp"
#include "af/timeloop.hpp"

namespace af {

/// Key/value lines written as `# key: value` above every CSV table.
using Metadata = std::vector<std::pair<std::string, std::string>>;

struct CsvTable {
  std::map<std::string, std::string> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  int column(const std::string& name) const;  // -1 if absent
};

/// Text that reads back to the same double.
std::string format_number(double x);
std::vector<std::string> variable_names(ModelKind m);

/// Throws IoError naming the path.
CsvTable read_csv(const std::filesystem::path& path);
void write_csv(const std::filesystem::path& path, const Metadata& meta, const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows);

/// Half-mesh point (k,l), k in [0, 2*n1], l in [0, 2*n2]: even/even is a
/// node, odd/even a y-face, even/odd an x-face and odd/odd a cell average.
struct InterleavedIndex {
  DofFamily family;
  int i, j;
};
inline InterleavedIndex interleaved_source(int k, int l) {
  const bool ok = k % 2 == 1, ol = l % 2 == 1;
  if (!ok && !ol) return {DofFamily::Node, k / 2, l / 2};
  if (ok && !ol) return {DofFamily::FaceY, k / 2, l / 2};
  if (!ok && ol) return {DofFamily::FaceX, k / 2, l / 2};
  return {DofFamily::Average, k / 2, l / 2};
}

namespace detail {

template <typename Model>
const typename Model::State& family_value(const DofField<Model>& d, DofFamily fam, int i, int j) {
  switch (fam) {
    case DofFamily::Node: return d.node(i, j);
    case DofFamily::FaceX: return d.facex(i, j);
    case DofFamily::FaceY: return d.facey(i, j);
    case DofFamily::Average: break;
  }
  return d.avg(i, j);
}

template <typename State>
std::vector<std::vector<double>> family_rows(const Grid& g, DofFamily fam, const Field<State>& f) {
  std::vector<std::vector<double>> rows;
  rows.reserve(std::size_t(f.nx()) * f.ny());
  for (int j = 0; j < f.ny(); ++j)
    for (int i = 0; i < f.nx(); ++i) {
      const Eigen::Vector2d p = dof_location(g, fam, i, j);
      std::vector<double> r{double(i), double(j), p.x(), p.y()};
      for (int k = 0; k < f(i, j).size(); ++k) r.push_back(double(f(i, j)[k]));
      rows.push_back(std::move(r));
    }
  return rows;
}

}  // namespace detail

/// Writes `<tag>_interleaved.csv` and the four `<tag>_<family>.csv` dumps
/// into `dir`, creating it if needed.
template <typename Model>
void write_solution(const std::filesystem::path& dir, const std::string& tag, const DofField<Model>& d,
                    const Grid& g, const Metadata& meta) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());

  const auto vars = variable_names(Model::kind);
  std::vector<std::string> cols{"k", "l", "x", "y"};
  cols.insert(cols.end(), vars.begin(), vars.end());
  std::vector<std::vector<double>> rows;
  rows.reserve(std::size_t(2 * g.n1 + 1) * (2 * g.n2 + 1));
  for (int l = 0; l <= 2 * g.n2; ++l)
    for (int k = 0; k <= 2 * g.n1; ++k) {
      const auto src = interleaved_source(k, l);
      const auto& s = detail::family_value(d, src.family, src.i, src.j);
      std::vector<double> r{double(k), double(l), g.x0 + 0.5 * k * g.dx, g.y0 + 0.5 * l * g.dy};
      for (int c = 0; c < s.size(); ++c) r.push_back(double(s[c]));
      rows.push_back(std::move(r));
    }
  Metadata m = meta;
  m.emplace_back("layout", "interleaved " + std::to_string(2 * g.n1 + 1) + "x" + std::to_string(2 * g.n2 + 1));
  write_csv(dir / (tag + "_interleaved.csv"), m, cols, rows);

  cols = {"i", "j", "x", "y"};
  cols.insert(cols.end(), vars.begin(), vars.end());
  const std::pair<DofFamily, const char*> fams[] = {
      {DofFamily::Average, "avg"}, {DofFamily::FaceX, "facex"}, {DofFamily::FaceY, "facey"}, {DofFamily::Node, "node"}};
  for (const auto& [fam, name] : fams) {
    const Field<typename Model::State>& f = fam == DofFamily::Average ? d.avg
                                            : fam == DofFamily::FaceX ? d.facex
                                            : fam == DofFamily::FaceY ? d.facey
                                                                      : d.node;
    Metadata fm = meta;
    fm.emplace_back("family", name);
    write_csv(dir / (tag + "_" + name + ".csv"), fm, cols, detail::family_rows(g, fam, f));
  }
}

/// Per-face average-limiter factors θ, sensor factors θs, and the point
/// limiter's θσ of the last stage.
template <typename Model>
void write_theta(const std::filesystem::path& dir, const std::string& tag, const Solver<Model>& solver,
                 const Metadata& meta) {
  const Grid& g = solver.grid();
  const auto& lim = solver.average_limiter();
  auto faces = [&](const Field<double>& th, const Field<double>& ts, DofFamily fam) {
    std::vector<std::vector<double>> rows;
    for (int j = 0; j < th.ny(); ++j)
      for (int i = 0; i < th.nx(); ++i) {
        const Eigen::Vector2d p = dof_location(g, fam, i, j);
        rows.push_back({double(i), double(j), p.x(), p.y(), th(i, j), ts(i, j)});
      }
    return rows;
  };
  const std::vector<std::string> cols{"i", "j", "x", "y", "theta", "theta_s"};
  write_csv(dir / (tag + "_theta_x.csv"), meta, cols, faces(lim.theta_x(), lim.sensor_x(), DofFamily::FaceX));
  write_csv(dir / (tag + "_theta_y.csv"), meta, cols, faces(lim.theta_y(), lim.sensor_y(), DofFamily::FaceY));

  std::vector<std::vector<double>> rows;
  const auto& th = solver.point_theta();
  const std::pair<DofFamily, const Field<typename Model::State>*> fams[] = {
      {DofFamily::FaceX, &th.facex}, {DofFamily::FaceY, &th.facey}, {DofFamily::Node, &th.node}};
  for (const auto& [fam, f] : fams)
    for (int j = 0; j < f->ny(); ++j)
      for (int i = 0; i < f->nx(); ++i) {
        const Eigen::Vector2d p = dof_location(g, fam, i, j);
        rows.push_back({double(int(fam)), double(i), double(j), p.x(), p.y(), double((*f)(i, j)[0])});
      }
  Metadata m = meta;
  m.emplace_back("family_codes", "1=facex 2=facey 3=node");
  write_csv(dir / (tag + "_theta_point.csv"), m, {"family", "i", "j", "x", "y", "theta_sigma"}, rows);
}

void write_residuals(const std::filesystem::path& path, const Metadata& meta,
                     const std::vector<ResidualSample>& history);

}  // namespace af
