#include "af/io.hpp"

#include <cstdio>
#include <sstream>

namespace af {

int CsvTable::column(const std::string& name) const {
  for (std::size_t c = 0; c < columns.size(); ++c)
    if (columns[c] == name) return int(c);
  return -1;
}

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<std::string> variable_names(ModelKind m) {
  if (m == ModelKind::Euler) return {"rho", "m1", "m2", "E"};
  return {"u"};
}

void write_csv(const std::filesystem::path& path, const Metadata& meta, const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  for (const auto& [k, v] : meta) {
    // keep multi-line values (the config echo) inside comment lines
    std::istringstream lines(v);
    std::string line;
    bool first = true;
    while (std::getline(lines, line) || first) {
      out << "# " << k << ": " << line << '\n';
      first = false;
    }
  }
  for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << columns[c];
  out << '\n';
  std::string buf;
  for (const auto& r : rows) {
    buf.clear();
    for (std::size_t c = 0; c < r.size(); ++c) {
      if (c) buf += ',';
      buf += format_number(r[c]);
    }
    buf += '\n';
    out << buf;
  }
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  CsvTable t;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto colon = line.find(':');
      if (colon != std::string::npos) {
        const std::string key = line.substr(2, colon - 2);
        const std::string val = colon + 2 <= line.size() ? line.substr(colon + 2) : "";
        auto [it, fresh] = t.meta.emplace(key, val);
        if (!fresh) it->second += "\n" + val;
      }
      continue;
    }
    std::stringstream ss(line);
    std::string cell;
    if (t.columns.empty()) {
      while (std::getline(ss, cell, ',')) t.columns.push_back(cell);
      continue;
    }
    std::vector<double> row;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
        if (used != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw IoError(path.string() + ":" + std::to_string(line_no) + ": bad number '" + cell + "'");
      }
    }
    if (row.size() != t.columns.size()) {
      throw IoError(path.string() + ":" + std::to_string(line_no) + ": expected " +
                    std::to_string(t.columns.size()) + " fields");
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

void write_residuals(const std::filesystem::path& path, const Metadata& meta,
                     const std::vector<ResidualSample>& history) {
  std::vector<std::vector<double>> rows;
  rows.reserve(history.size());
  for (const auto& s : history) rows.push_back({double(s.step), s.t, s.residual});
  write_csv(path, meta, {"step", "t", "residual"}, rows);
}

}  // namespace af
