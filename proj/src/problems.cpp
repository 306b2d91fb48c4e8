#include "af/problems.hpp"

#include <cmath>
#include <numbers>

namespace af {

namespace {

using Vec = Eigen::VectorXd;

Vec scalar(double u) { return Vec::Constant(1, u); }

Vec euler_state(double gamma, double rho, double v1, double v2, double p) {
  Vec u(4);
  u << rho, rho * v1, rho * v2, p / (gamma - 1) + 0.5 * rho * (v1 * v1 + v2 * v2);
  return u;
}

BoundaryCondition periodic() { return {BcKind::Periodic, {}, std::nullopt}; }
BoundaryCondition outflow() { return {BcKind::Outflow, {}, std::nullopt}; }
BoundaryCondition reflective() { return {BcKind::Reflective, {}, std::nullopt}; }
BoundaryCondition dirichlet(StateFunction f) { return {BcKind::Dirichlet, std::move(f), std::nullopt}; }

void all_sides(ProblemSpec& s, const BoundaryCondition& bc) { s.bc = {bc, bc, bc, bc}; }

// wrap x into [lo, lo + len)
double wrap(double x, double lo, double len) {
  double r = std::fmod(x - lo, len);
  if (r < 0) r += len;
  return lo + r;
}

double cone_square(double x, double y) {
  const double r = std::hypot(x - 0.25, y - 0.25);
  if (r < 0.2) return 1.0 - std::abs(5.0 * r);
  if (std::max(std::abs(x - 0.75), std::abs(y - 0.75)) < 0.2) return 1.0;
  return 0.0;
}

Vec vortex_state(double gamma, double x, double y) {
  constexpr double strength = 5.0;
  const double r2 = x * x + y * y;
  const double k0 = strength / (2 * std::numbers::pi) * std::exp(0.5 * (1 - r2));
  const double t0 = 1 - (gamma - 1) / (2 * gamma) * k0 * k0;
  // rho = T0^(1/(gamma-1)) keeps the vortex in radial equilibrium
  const double rho = std::pow(t0, 1.0 / (gamma - 1));
  return euler_state(gamma, rho, 1 + k0 * y, 1 - k0 * x, t0 * rho);
}

ProblemSpec advection() {
  ProblemSpec s;
  s.name = "advection";
  s.description = "cone and square advected along (1,1), periodic unit square";
  s.model = ModelKind::Advection;
  s.n1 = s.n2 = 100;
  s.t_end = 2.0;
  all_sides(s, periodic());
  s.initial = [](double x, double y) { return scalar(cone_square(x, y)); };
  s.exact = [](double x, double y, double t) { return scalar(cone_square(wrap(x - t, 0, 1), wrap(y - t, 0, 1))); };
  return s;
}

ProblemSpec advection_smooth() {
  ProblemSpec s;
  s.name = "advection_smooth";
  s.description = "sine wave advected along (1,1), periodic unit square";
  s.model = ModelKind::Advection;
  s.n1 = s.n2 = 64;
  s.t_end = 1.0;
  s.limiter.average = false;
  s.limiter.point = false;
  all_sides(s, periodic());
  auto u0 = [](double x, double y) { return std::sin(2 * std::numbers::pi * (x + y)); };
  s.initial = [u0](double x, double y) { return scalar(u0(x, y)); };
  s.exact = [u0](double x, double y, double t) { return scalar(u0(x - t, y - t)); };
  return s;
}

ProblemSpec burgers() {
  ProblemSpec s;
  s.name = "burgers";
  s.description = "Burgers sine wave steepening into shocks";
  s.model = ModelKind::Burgers;
  s.n1 = s.n2 = 100;
  s.t_end = 0.3;
  s.limiter.mp_mode = MpMode::Local;
  all_sides(s, periodic());
  s.initial = [](double x, double y) { return scalar(0.5 + std::sin(2 * std::numbers::pi * (x + y))); };
  return s;
}

ProblemSpec vortex(double gamma) {
  ProblemSpec s;
  s.name = "vortex";
  s.description = "isentropic vortex moving along (1,1) for one period";
  s.model = ModelKind::Euler;
  s.gamma = gamma;
  s.x0 = s.y0 = -5;
  s.x1 = s.y1 = 5;
  s.n1 = s.n2 = 64;
  s.t_end = 10.0;
  s.limiter.average = false;
  s.limiter.point = false;
  all_sides(s, periodic());
  s.initial = [gamma](double x, double y) { return vortex_state(gamma, x, y); };
  s.exact = [gamma](double x, double y, double t) {
    return vortex_state(gamma, wrap(x - t, -5, 10), wrap(y - t, -5, 10));
  };
  return s;
}

ProblemSpec sod2d(double gamma) {
  ProblemSpec s;
  s.name = "sod2d";
  s.description = "Sod shock tube along x on a 100x2 mesh";
  s.gamma = gamma;
  s.n1 = 100;
  s.n2 = 2;
  s.t_end = 0.2;
  s.limiter.kappa = 1.0;
  s.bc = {outflow(), outflow(), periodic(), periodic()};
  s.initial = [gamma](double x, double) {
    return x < 0.5 ? euler_state(gamma, 1, 0, 0, 1) : euler_state(gamma, 0.125, 0, 0, 0.1);
  };
  return s;
}

ProblemSpec shock_reflection(double gamma) {
  ProblemSpec s;
  s.name = "shock_reflection";
  s.description = "oblique shock reflecting off a wall, run to steady state";
  s.gamma = gamma;
  s.x1 = 4;
  s.n1 = 120;
  s.n2 = 30;
  s.t_end = 6.0;
  s.limiter.kappa = 0.5;
  const Vec left = euler_state(gamma, 1.0, 2.9, 0.0, 1.0 / 1.4);
  const Vec top = euler_state(gamma, 1.69997, 2.61934, -0.50632, 1.52819);
  s.bc = {dirichlet([left](double, double, double) { return left; }), outflow(), reflective(),
          dirichlet([top](double, double, double) { return top; })};
  s.initial = [left](double, double) { return left; };
  return s;
}

ProblemSpec sedov(double gamma) {
  ProblemSpec s;
  s.name = "sedov";
  s.description = "Sedov blast wave from a point energy deposit";
  s.gamma = gamma;
  s.x0 = s.y0 = -1.1;
  s.x1 = s.y1 = 1.1;
  s.n1 = s.n2 = 101;
  s.t_end = 1.0;
  s.limiter.kappa = 0.5;
  all_sides(s, outflow());
  s.initial = [](double, double) {
    Vec u(4);
    u << 1.0, 0.0, 0.0, 1e-12;
    return u;
  };
  s.center_cell_energy = 0.979264;
  return s;
}

ProblemSpec riemann2d(double gamma) {
  ProblemSpec s;
  s.name = "rp3";
  s.description = "2D Riemann problem, configuration 3 (four shocks)";
  s.gamma = gamma;
  s.n1 = s.n2 = 200;
  s.t_end = 0.8;
  s.limiter.kappa = 0.5;
  all_sides(s, outflow());
  s.initial = [gamma](double x, double y) {
    if (x > 0.8 && y > 0.8) return euler_state(gamma, 1.5, 0, 0, 1.5);
    if (x < 0.8 && y > 0.8) return euler_state(gamma, 0.5323, 1.206, 0, 0.3);
    if (x < 0.8 && y < 0.8) return euler_state(gamma, 0.138, 1.206, 1.206, 0.029);
    return euler_state(gamma, 0.5323, 0, 1.206, 0.3);
  };
  return s;
}

ProblemSpec double_mach(double gamma) {
  ProblemSpec s;
  s.name = "dmr";
  s.description = "double Mach reflection of a Mach 10 shock";
  s.gamma = gamma;
  s.x1 = 3;
  s.n1 = 240;
  s.n2 = 80;
  s.t_end = 0.2;
  s.limiter.kappa = 1.0;
  const double pi = std::numbers::pi;
  const Vec post = euler_state(gamma, 8, 8.25 * std::cos(pi / 6), -8.25 * std::sin(pi / 6), 116.5);
  const Vec pre = euler_state(gamma, 1.4, 0, 0, 1);
  auto shocked = [post, pre](double x, double y, double t) {
    return x < 1.0 / 6.0 + (y + 20 * t) / std::sqrt(3.0) ? post : pre;
  };
  s.initial = [shocked](double x, double y) { return shocked(x, y, 0); };
  BoundaryCondition bottom = reflective();
  bottom.state = [post](double, double, double) { return post; };
  bottom.dirichlet_below = 1.0 / 6.0;
  BoundaryCondition top{BcKind::DmrTop, [shocked](double x, double, double t) { return shocked(x, 1.0, t); },
                        std::nullopt};
  s.bc = {dirichlet([post](double, double, double) { return post; }), outflow(), bottom, top};
  return s;
}

ProblemSpec jet(double gamma, bool mach2000) {
  ProblemSpec s;
  s.name = mach2000 ? "jet2000" : "jet80";
  s.description = mach2000 ? "Mach 2000 astrophysical jet" : "Mach 80 astrophysical jet";
  s.gamma = gamma;
  s.x1 = mach2000 ? 1.0 : 2.0;
  s.y0 = mach2000 ? -0.25 : -0.5;
  s.y1 = -s.y0;
  s.n1 = 200;
  s.n2 = 100;
  s.t_end = mach2000 ? 0.001 : 0.07;
  s.limiter.kappa = mach2000 ? 10.0 : 1.0;
  const Vec ambient = euler_state(gamma, 0.5, 0, 0, 0.4127);
  const Vec beam = euler_state(gamma, 5, mach2000 ? 800.0 : 30.0, 0, 0.4127);
  s.initial = [ambient](double, double) { return ambient; };
  s.bc = {dirichlet([ambient, beam](double, double y, double) { return std::abs(y) < 0.05 ? beam : ambient; }),
          outflow(), outflow(), outflow()};
  return s;
}

}  // namespace

std::string to_string(BcKind k) {
  switch (k) {
    case BcKind::Periodic: return "periodic";
    case BcKind::Outflow: return "outflow";
    case BcKind::Reflective: return "reflective";
    case BcKind::Dirichlet: return "dirichlet";
    case BcKind::DmrTop: return "dmr_top";
  }
  return "unknown";
}

std::vector<std::string> problem_names() {
  return {"advection", "advection_smooth", "burgers", "vortex", "sod2d", "shock_reflection",
          "sedov",     "rp3",              "dmr",     "jet80",  "jet2000"};
}

ProblemSpec make_problem(const std::string& name, const ProblemOverrides& ov) {
  const double gamma = ov.gamma.value_or(name == "jet80" || name == "jet2000" ? 5.0 / 3.0 : 1.4);
  ProblemSpec s;
  if (name == "advection") s = advection();
  else if (name == "advection_smooth") s = advection_smooth();
  else if (name == "burgers") s = burgers();
  else if (name == "vortex") s = vortex(gamma);
  else if (name == "sod2d") s = sod2d(gamma);
  else if (name == "shock_reflection") s = shock_reflection(gamma);
  else if (name == "sedov") s = sedov(gamma);
  else if (name == "rp3") s = riemann2d(gamma);
  else if (name == "dmr") s = double_mach(gamma);
  else if (name == "jet80") s = jet(gamma, false);
  else if (name == "jet2000") s = jet(gamma, true);
  else throw ConfigError("unknown problem '" + name + "'");

  if (ov.n1) s.n1 = *ov.n1;
  if (ov.n2) s.n2 = *ov.n2;
  if (ov.t_end) s.t_end = *ov.t_end;
  if (ov.kappa) s.limiter.kappa = *ov.kappa;
  if (ov.cfl) s.cfl = *ov.cfl;
  validate_problem(s);
  return s;
}

void validate_problem(const ProblemSpec& s) {
  if (s.n1 < 1 || s.n2 < 1) throw ConfigError("mesh size must be positive");
  if (!(s.t_end >= 0)) throw ConfigError("t_end must be non-negative");
  if (!(s.cfl > 0 && s.cfl <= 1)) throw ConfigError("cfl must lie in (0, 1]");
  if (!(s.gamma > 1)) throw ConfigError("gamma must exceed 1");
  if (!(s.limiter.eps > 0)) throw ConfigError("positivity floor eps must be positive");
  if (!(s.limiter.kappa >= 0)) throw ConfigError("kappa must be non-negative");
  if (s.splitting == SplittingKind::VH && s.model != ModelKind::Euler) {
    throw ConfigError("splitting vh requires the Euler equations");
  }
  for (int side = 0; side < 4; ++side) {
    const auto& bc = s.bc[side];
    if (bc.kind == BcKind::DmrTop && (s.name != "dmr" || side != kTop)) {
      throw ConfigError("dmr_top boundary is only valid on the top side of the dmr problem");
    }
    if ((bc.kind == BcKind::Dirichlet || bc.kind == BcKind::DmrTop || bc.dirichlet_below) && !bc.state) {
      throw ConfigError("boundary on side " + std::to_string(side) + " needs a state");
    }
  }
  if ((s.bc[kLeft].kind == BcKind::Periodic) != (s.bc[kRight].kind == BcKind::Periodic) ||
      (s.bc[kBottom].kind == BcKind::Periodic) != (s.bc[kTop].kind == BcKind::Periodic)) {
    throw ConfigError("periodic boundaries must be paired");
  }
}

}  // namespace af
