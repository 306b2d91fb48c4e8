#include "af/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "af/errors.hpp"

namespace af {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(int line, const std::string& msg) {
  throw ConfigError("config line " + std::to_string(line) + ": " + msg);
}

double to_double(int line, const std::string& key, const std::string& v) {
  double x = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || p != v.data() + v.size()) fail(line, key + " expects a number, got '" + v + "'");
  return x;
}

int to_int(int line, const std::string& key, const std::string& v) {
  int x = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || p != v.data() + v.size()) fail(line, key + " expects an integer, got '" + v + "'");
  return x;
}

bool to_bool(int line, const std::string& key, std::string v) {
  std::transform(v.begin(), v.end(), v.begin(), ::tolower);
  if (v == "true" || v == "on" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "off" || v == "no" || v == "0") return false;
  fail(line, key + " expects true/false, got '" + v + "'");
}

std::vector<std::string> split_list(const std::string& v, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  for (std::string item; std::getline(ss, item, sep);) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  cfg.source = text;
  std::map<std::string, int> seen;
  std::istringstream in(text);
  int line_no = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(line_no, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (val.empty()) fail(line_no, "missing value for " + key);
    if (!seen.emplace(key, line_no).second) fail(line_no, "duplicate key " + key);

    auto positive = [&](double x) {
      if (!(x > 0)) fail(line_no, key + " must be positive");
      return x;
    };
    if (key == "problem") {
      cfg.problem = val;
    } else if (key == "n1") {
      cfg.n1 = int(positive(to_int(line_no, key, val)));
    } else if (key == "n2") {
      cfg.n2 = int(positive(to_int(line_no, key, val)));
    } else if (key == "mesh") {
      const auto parts = split_list(val, 'x');
      if (parts.size() != 2) fail(line_no, "mesh expects N1xN2, got '" + val + "'");
      cfg.n1 = int(positive(to_int(line_no, key, parts[0])));
      cfg.n2 = int(positive(to_int(line_no, key, parts[1])));
    } else if (key == "cfl") {
      const double c = to_double(line_no, key, val);
      if (!(c > 0 && c <= 1)) fail(line_no, "cfl must lie in (0, 1]");
      cfg.cfl = c;
    } else if (key == "kappa") {
      const double k = to_double(line_no, key, val);
      if (!(k >= 0)) fail(line_no, "kappa must be non-negative");
      cfg.kappa = k;
    } else if (key == "t_end") {
      const double t = to_double(line_no, key, val);
      if (!(t >= 0)) fail(line_no, "t_end must be non-negative");
      cfg.t_end = t;
    } else if (key == "gamma") {
      const double g = to_double(line_no, key, val);
      if (!(g > 1)) fail(line_no, "gamma must exceed 1");
      cfg.gamma = g;
    } else if (key == "eps") {
      cfg.eps = positive(to_double(line_no, key, val));
    } else if (key == "limit_average") {
      cfg.limit_average = to_bool(line_no, key, val);
    } else if (key == "limit_point") {
      cfg.limit_point = to_bool(line_no, key, val);
    } else if (key == "sensor") {
      cfg.sensor = to_bool(line_no, key, val);
    } else if (key == "force_low_order") {
      cfg.force_low_order = to_bool(line_no, key, val);
    } else if (key == "bp_dt") {
      cfg.bp_dt = to_bool(line_no, key, val);
    } else if (key == "mp_mode") {
      if (val == "global") cfg.mp_mode = MpMode::Global;
      else if (val == "local") cfg.mp_mode = MpMode::Local;
      else fail(line_no, "mp_mode must be global or local");
    } else if (key == "splitting") {
      try {
        cfg.splitting = parse_splitting(val);
      } catch (const ConfigError& e) {
        fail(line_no, e.what());
      }
    } else if (key == "output_dir") {
      cfg.output_dir = val;
    } else if (key == "output_times") {
      for (const auto& t : split_list(val, ',')) {
        const double x = to_double(line_no, key, t);
        if (!(x >= 0)) fail(line_no, "output times must be non-negative");
        cfg.output_times.push_back(x);
      }
    } else if (key == "dump_theta") {
      cfg.dump_theta = to_bool(line_no, key, val);
    } else if (key == "log_every") {
      const int k = to_int(line_no, key, val);
      if (k < 0) fail(line_no, "log_every must be non-negative");
      cfg.log_every = k;
    } else {
      fail(line_no, "unknown key '" + key + "'");
    }
  }

  if (cfg.problem.empty()) throw ConfigError("config: missing required key 'problem'");
  ProblemSpec base;
  try {
    base = make_problem(cfg.problem);
  } catch (const ConfigError& e) {
    fail(seen["problem"], e.what());
  }
  if (cfg.splitting == SplittingKind::VH && base.model != ModelKind::Euler) {
    fail(seen["splitting"], "splitting vh needs the Euler equations, problem '" + cfg.problem + "' is scalar");
  }
  if (cfg.gamma && base.model != ModelKind::Euler) fail(seen["gamma"], "gamma only applies to Euler problems");
  // anything left is reported by the problem validation
  (void)resolve_problem(cfg);
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

ProblemSpec resolve_problem(const RunConfig& cfg) {
  ProblemOverrides o;
  o.n1 = cfg.n1;
  o.n2 = cfg.n2;
  o.gamma = cfg.gamma;
  o.t_end = cfg.t_end;
  o.kappa = cfg.kappa;
  o.cfl = cfg.cfl;
  ProblemSpec s = make_problem(cfg.problem, o);
  if (cfg.splitting) s.splitting = *cfg.splitting;
  if (cfg.eps) s.limiter.eps = *cfg.eps;
  if (cfg.limit_average) s.limiter.average = *cfg.limit_average;
  if (cfg.limit_point) s.limiter.point = *cfg.limit_point;
  if (cfg.sensor) s.limiter.sensor = *cfg.sensor;
  if (cfg.force_low_order) s.limiter.force_low_order = *cfg.force_low_order;
  if (cfg.mp_mode) s.limiter.mp_mode = *cfg.mp_mode;
  validate_problem(s);
  return s;
}

}  // namespace af
