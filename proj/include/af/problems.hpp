#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "af/equations.hpp"
#include "af/limiting_average.hpp"
#include "af/mesh.hpp"

namespace af {

enum class BcKind { Periodic, Outflow, Reflective, Dirichlet, DmrTop };
enum Side { kLeft = 0, kRight = 1, kBottom = 2, kTop = 3 };

std::string to_string(BcKind k);

/// Conservative state as a function of position and time.
using StateFunction = std::function<Eigen::VectorXd(double x, double y, double t)>;

struct BoundaryCondition {
  BcKind kind = BcKind::Outflow;
  StateFunction state;  // Dirichlet and DmrTop data
  // Reflective walls only: use `state` where the coordinate along the side
  // is below this value (the double Mach reflection's pre-wall segment).
  std::optional<double> dirichlet_below;
};

/// Everything needed to set up and judge one benchmark.
struct ProblemSpec {
  std::string name;
  std::string description;
  ModelKind model = ModelKind::Euler;
  double gamma = 1.4;
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  int n1 = 100, n2 = 100;
  double t_end = 0;
  std::array<BoundaryCondition, 4> bc;  // left, right, bottom, top
  std::function<Eigen::VectorXd(double x, double y)> initial;  // conservative
  StateFunction exact;  // empty when no exact solution is known
  std::optional<double> center_cell_energy;  // Sedov: E of the centered cell times dx*dy
  double cfl = 0.25;
  SplittingKind splitting = SplittingKind::LLF;
  LimiterConfig limiter;
};

struct ProblemOverrides {
  std::optional<int> n1, n2;
  std::optional<double> gamma, t_end, kappa, cfl;
};

std::vector<std::string> problem_names();
ProblemSpec make_problem(const std::string& name, const ProblemOverrides& overrides = {});
void validate_problem(const ProblemSpec& spec);

/// Composite tensor Simpson average of f over cell (i,j) split into sub x sub
/// subcells; sub = 1 is the 3x3 rule through the cell's nine DoF locations.
template <typename F>
Eigen::VectorXd simpson_cell_average(F&& f, const Grid& g, int i, int j, int sub = 1) {
  static constexpr double w[3] = {1.0, 4.0, 1.0};
  Eigen::VectorXd acc;
  const double hx = g.dx / sub, hy = g.dy / sub;
  for (int sj = 0; sj < sub; ++sj)
    for (int si = 0; si < sub; ++si)
      for (int b = 0; b < 3; ++b)
        for (int a = 0; a < 3; ++a) {
          const double x = g.xf(i) + (si + 0.5 * a) * hx;
          const double y = g.yf(j) + (sj + 0.5 * b) * hy;
          const Eigen::VectorXd v = f(x, y);
          if (acc.size() == 0) acc = Eigen::VectorXd::Zero(v.size());
          acc += (w[a] * w[b] / 36.0) * v;
        }
  return acc / double(sub * sub);
}

template <typename Model>
typename Model::State to_state(const Eigen::VectorXd& v) {
  if (v.size() != Model::kComponents) throw ConfigError("state function has the wrong number of components");
  return typename Model::State(v);
}

/// Point values by pointwise evaluation, averages by the 3x3 Simpson rule.
template <typename Model>
DofField<Model> init_dofs(const ProblemSpec& spec, const Grid& g, const Model& model) {
  if (!spec.initial) throw ConfigError("problem '" + spec.name + "' has no initial condition");
  auto d = allocate_dofs<Model>(g);
  auto init = [&](double x, double y) { return spec.initial(x, y); };
  for (int j = 0; j < g.n2; ++j)
    for (int i = 0; i < g.n1; ++i) d.avg(i, j) = to_state<Model>(simpson_cell_average(init, g, i, j));
  for (int j = 0; j < g.n2; ++j)
    for (int I = 0; I <= g.n1; ++I) d.facex(I, j) = to_state<Model>(init(g.xf(I), g.yc(j)));
  for (int J = 0; J <= g.n2; ++J)
    for (int i = 0; i < g.n1; ++i) d.facey(i, J) = to_state<Model>(init(g.xc(i), g.yf(J)));
  for (int J = 0; J <= g.n2; ++J)
    for (int I = 0; I <= g.n1; ++I) d.node(I, J) = to_state<Model>(init(g.xf(I), g.yf(J)));

  if (spec.center_cell_energy) {
    if constexpr (Model::kind == ModelKind::Euler) {
      d.avg(g.n1 / 2, g.n2 / 2)[3] = *spec.center_cell_energy / (g.dx * g.dy);
    } else {
      throw ConfigError("a centered energy deposit needs the Euler equations");
    }
  }

  auto check = [&](const auto& f, const char* fam) {
    for (int j = 0; j < f.ny(); ++j)
      for (int i = 0; i < f.nx(); ++i) {
        bool ok = f(i, j).allFinite();
        if constexpr (Model::kind == ModelKind::Euler) ok = ok && f(i, j)[0] > 0 && model.pressure(f(i, j)) > 0;
        if (!ok) {
          throw ConfigError("inadmissible initial " + std::string(fam) + " value at (" + std::to_string(i) + "," +
                            std::to_string(j) + ")");
        }
      }
  };
  check(d.avg, "average");
  check(d.facex, "x-face");
  check(d.facey, "y-face");
  check(d.node, "node");
  return d;
}

namespace detail {

// Map a ghost index to its source along one axis. `staggered` marks
// face-indexed families (n entries = cells + 1).
inline int periodic_source(int i, int cells) { return i < 0 ? i + cells : i - cells; }
inline int outflow_source(int i, int n) { return i < 0 ? 0 : n - 1; }
inline int mirror_source(int i, int n, bool staggered) {
  if (staggered) return i < 0 ? -i : 2 * (n - 1) - i;
  return i < 0 ? -1 - i : 2 * n - 1 - i;
}

template <typename Model>
void fill_side(Field<typename Model::State>& f, const Grid& g, DofFamily fam, const BoundaryCondition& bc, int axis,
               bool low_side, double t) {
  using State = typename Model::State;
  const int gh = f.ghost();
  const int n = axis == 0 ? f.nx() : f.ny();
  const int cells = axis == 0 ? g.n1 : g.n2;
  const bool staggered = n == cells + 1;
  // transverse range: interior only on the first (x) pass, everything on the second
  const int t0 = axis == 0 ? 0 : -gh;
  const int t1 = axis == 0 ? f.ny() : f.nx() + gh;
  for (int k = 1; k <= gh; ++k) {
    const int gi = low_side ? -k : n - 1 + k;
    for (int tr = t0; tr < t1; ++tr) {
      const int i = axis == 0 ? gi : tr;
      const int j = axis == 0 ? tr : gi;
      State& dst = f(i, j);
      auto at_source = [&](int s) -> const State& { return axis == 0 ? f(s, j) : f(i, s); };
      auto evaluate = [&]() {
        const Eigen::Vector2d x = dof_location(g, fam, i, j);
        return to_state<Model>(bc.state(x[0], x[1], t));
      };
      switch (bc.kind) {
        case BcKind::Periodic: dst = at_source(periodic_source(gi, cells)); break;
        case BcKind::Outflow: dst = at_source(outflow_source(gi, n)); break;
        case BcKind::Dirichlet:
        case BcKind::DmrTop: dst = evaluate(); break;
        case BcKind::Reflective: {
          if (bc.dirichlet_below) {
            const Eigen::Vector2d x = dof_location(g, fam, i, j);
            if (x[axis == 0 ? 1 : 0] < *bc.dirichlet_below) {
              dst = evaluate();
              break;
            }
          }
          State s = at_source(mirror_source(gi, n, staggered));
          if constexpr (Model::kind == ModelKind::Euler) s[1 + axis] = -s[1 + axis];
          dst = s;
          break;
        }
      }
    }
  }
}

}  // namespace detail

/// Populate every ghost entry of every family for stage time t: sides in x
/// first, then sides in y across the full width so corners are defined.
template <typename Model>
void fill_ghosts(DofField<Model>& d, const Grid& g, const ProblemSpec& spec, double t) {
  auto pass = [&](int axis) {
    const BoundaryCondition& lo = spec.bc[axis == 0 ? kLeft : kBottom];
    const BoundaryCondition& hi = spec.bc[axis == 0 ? kRight : kTop];
    auto both = [&](Field<typename Model::State>& f, DofFamily fam) {
      detail::fill_side<Model>(f, g, fam, lo, axis, true, t);
      detail::fill_side<Model>(f, g, fam, hi, axis, false, t);
    };
    both(d.avg, DofFamily::Average);
    both(d.facex, DofFamily::FaceX);
    both(d.facey, DofFamily::FaceY);
    both(d.node, DofFamily::Node);
  };
  pass(0);
  pass(1);
}

/// Per-component l1 error of the cell averages, sum |avg - exact avg| dx dy.
/// Exact cell averages use composite Simpson with sub x sub subcells.
template <typename Model>
std::vector<double> error_norms(const DofField<Model>& d, const Grid& g, const StateFunction& exact, double t,
                                int sub = 1) {
  std::vector<double> err(Model::kComponents, 0.0);
  auto f = [&](double x, double y) { return exact(x, y, t); };
  for (int j = 0; j < g.n2; ++j)
    for (int i = 0; i < g.n1; ++i) {
      const Eigen::VectorXd ex = simpson_cell_average(f, g, i, j, sub);
      for (int k = 0; k < Model::kComponents; ++k) err[k] += std::abs(d.avg(i, j)[k] - ex[k]) * g.dx * g.dy;
    }
  return err;
}

}  // namespace af
