#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "af/af_scheme.hpp"
#include "af/limiting_average.hpp"
#include "af/limiting_point.hpp"
#include "af/problems.hpp"

namespace af {

struct StepControl {
  double cfl = 0.25;
  double t = 0.0;
  double t_end = 0.0;
  bool bp_dt_enforced = true;
};

struct ResidualSample {
  long step;
  double t;
  double residual;
};

/// Summary of a run. Component vectors have one entry per conserved variable.
struct RunReport {
  std::string problem;
  ModelKind model = ModelKind::Euler;
  int n1 = 0, n2 = 0;
  double t_final = 0.0;
  long steps = 0;
  double wall_seconds = 0.0;
  std::vector<double> avg_min, avg_max, point_min, point_max;
  std::vector<double> l1_error;  // empty when no exact solution is available
  // Euler only: minima over every DoF family after every stage
  double min_density = std::numeric_limits<double>::infinity();
  double min_pressure = std::numeric_limits<double>::infinity();
  std::vector<ResidualSample> residual_history;
};

struct RunOptions {
  int log_every = 0;  // progress line every k steps, 0 = silent
  std::ostream* log = &std::cerr;
  std::vector<double> output_times;
  std::function<void(double t)> on_output;
  long max_steps = 100000000;
};

/// Shu-Osher SSP-RK3 built from forward-Euler stages fe(in, t, dt, out):
///   u1 = FE(un), u2 = 3/4 un + 1/4 FE(u1), un+1 = 1/3 un + 2/3 FE(u2).
/// comb(out, a, x, b, y) forms out = a x + b y; check(u, stage) runs after
/// each of the three stages. `u1`, `u2` and `work` are scratch.
template <typename U, typename ForwardEuler, typename Combine, typename Check>
void ssp_rk3_step(U& un, U& u1, U& u2, U& work, double t, double dt, ForwardEuler&& fe, Combine&& comb,
                  Check&& check) {
  fe(un, t, dt, u1);
  check(u1, 1);
  fe(u1, t + dt, dt, work);
  comb(u2, 0.75, un, 0.25, work);
  check(u2, 2);
  fe(u2, t + 0.5 * dt, dt, work);
  comb(un, 1.0 / 3.0, un, 2.0 / 3.0, work);
  check(un, 3);
}

/// Forward-Euler stages of the limited Active Flux scheme composed into
/// SSP-RK3 steps.
template <typename Model>
class Solver {
 public:
  using State = typename Model::State;
  using Scalar = typename Model::Scalar;
  static constexpr bool kEuler = Model::kind == ModelKind::Euler;

  Solver(const ProblemSpec& spec, const Model& model)
      : spec_(spec),
        model_(model),
        grid_(build_grid(spec.x0, spec.x1, spec.y0, spec.y1, spec.n1, spec.n2)),
        op_(model, grid_, spec.splitting),
        limiter_(model, grid_) {
    validate_problem(spec_);
    u_ = init_dofs(spec_, grid_, model_);
    res_ = allocate_dofs<Model>(grid_);
    stage_in_ = allocate_dofs<Model>(grid_);
    stage_out_ = allocate_dofs<Model>(grid_);
    u1_ = allocate_dofs<Model>(grid_);
    theta_point_ = allocate_theta();
    if constexpr (kEuler) {
      if (limiting()) op_.set_center_floor(spec_.limiter.eps);
    } else {
      // bounds of the initial data over every family
      global_ = {std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
      u_.for_each_family([&](const Field<State>& f) {
        for (int j = 0; j < f.ny(); ++j)
          for (int i = 0; i < f.nx(); ++i) {
            global_.lo = std::min(global_.lo, double(f(i, j)[0]));
            global_.hi = std::max(global_.hi, double(f(i, j)[0]));
          }
      });
    }
    control_.cfl = spec_.cfl;
    control_.t_end = spec_.t_end;
  }

  const Grid& grid() const { return grid_; }
  const Model& model() const { return model_; }
  const ProblemSpec& spec() const { return spec_; }
  DofField<Model>& state() { return u_; }
  const DofField<Model>& state() const { return u_; }
  double time() const { return control_.t; }
  StepControl& control() { return control_; }
  ScalarBounds global_bounds() const { return global_; }
  const AverageLimiter<Model>& average_limiter() const { return limiter_; }
  const SpatialOperator<Model>& spatial_operator() const { return op_; }
  /// Point-limiter blending factors of the last stage (1 = unlimited).
  const DofField<Model>& point_theta() const { return theta_point_; }

  bool limiting() const { return spec_.limiter.average || spec_.limiter.point; }

  /// CFL step from cell averages, capped by the uniform-mesh bound-preserving
  /// step over all DoFs when limiting is on, and clipped to t_end. The scans
  /// include the first ghost layer, so inflow data counts before it enters;
  /// ghosts must be filled.
  double compute_dt() const {
    double rate = 0;
    for (int j = -1; j <= grid_.n2; ++j)
      for (int i = -1; i <= grid_.n1; ++i)
        rate = std::max(rate, std::max(model_.spectral_radius(u_.avg(i, j), 0) / grid_.dx,
                                       model_.spectral_radius(u_.avg(i, j), 1) / grid_.dy));
    if (!(rate > 0)) throw ConfigError("maximum wave speed is zero, the time step is undefined");
    double dt = control_.cfl / rate;
    if (control_.bp_dt_enforced && limiting()) {
      Scalar r1 = 0, r2 = 0;
      u_.for_each_family([&](const Field<State>& f) {
        for (int j = -1; j <= f.ny(); ++j)
          for (int i = -1; i <= f.nx(); ++i) {
            r1 = std::max(r1, model_.spectral_radius(f(i, j), 0));
            r2 = std::max(r2, model_.spectral_radius(f(i, j), 1));
          }
      });
      double cap = std::numeric_limits<double>::infinity();
      if (r1 > 0) cap = std::min(cap, grid_.dx / r1);
      if (r2 > 0) cap = std::min(cap, grid_.dy / r2);
      dt = std::min(dt, 0.25 * cap);
    }
    return std::min(dt, control_.t_end - control_.t);
  }

  /// out = limited forward-Euler update of `in` over dt at stage time t.
  /// `in` gets its ghosts refreshed.
  void forward_euler(DofField<Model>& in, double t, double dt, DofField<Model>& out) {
    fill_ghosts(in, grid_, spec_, t);
    op_.evaluate(in, res_);
    limiter_.apply(spec_.limiter, in.avg, op_.face_flux_x(), op_.face_flux_y(), dt, global_, out.avg);

    const TableAccess access{op_, in};
    update_points(in.node, res_.node, out.node, theta_point_.node, dt,
                  [&](int i, int j) { return llf_point_node(access, dt, grid_, i, j); });
    update_points(in.facex, res_.facex, out.facex, theta_point_.facex, dt,
                  [&](int i, int j) { return llf_point_facex(access, dt, grid_, i, j); });
    update_points(in.facey, res_.facey, out.facey, theta_point_.facey, dt,
                  [&](int i, int j) { return llf_point_facey(access, dt, grid_, i, j); });
  }

  /// One SSP-RK3 step; admissibility is checked after every stage.
  void step(double dt) {
    const double t = control_.t;
    ssp_rk3_step(
        u_, u1_, stage_in_, stage_out_, t, dt,
        [this](DofField<Model>& in, double ts, double h, DofField<Model>& out) { forward_euler(in, ts, h, out); },
        [](DofField<Model>& out, double a, const DofField<Model>& x, double b, const DofField<Model>& y) {
          lincomb(out, a, x, b, y);
        },
        [this](const DofField<Model>& d, int stage) { check_stage(d, kStageNames[stage - 1]); });
    control_.t = t + dt;
  }

  RunReport run(const RunOptions& opt = {}) {
    const auto wall0 = std::chrono::steady_clock::now();
    RunReport rep;
    rep.problem = spec_.name;
    rep.model = Model::kind;
    rep.n1 = grid_.n1;
    rep.n2 = grid_.n2;
    check_stage(u_, "initial data");

    std::vector<double> outputs = opt.output_times;
    std::sort(outputs.begin(), outputs.end());
    std::size_t next_out = 0;
    while (next_out < outputs.size() && outputs[next_out] <= control_.t) {
      if (opt.on_output) opt.on_output(control_.t);
      ++next_out;
    }

    Field<State> prev_avg = u_.avg;
    long steps = 0;
    while (control_.t < control_.t_end) {
      if (steps >= opt.max_steps) throw NumericsError("step limit reached before t_end");
      fill_ghosts(u_, grid_, spec_, control_.t);
      double dt = compute_dt();
      if (next_out < outputs.size()) dt = std::min(dt, outputs[next_out] - control_.t);
      if (!(dt > 0) || !std::isfinite(dt)) throw NumericsError("time step collapsed");
      if (!(dt > 1e-15 * std::max(1.0, control_.t_end)) && control_.t_end - control_.t > dt) {
        throw NumericsError("time step collapsed to " + std::to_string(dt));
      }
      step(dt);
      ++steps;
      // snap to the final time once the remainder is round-off
      if (control_.t_end - control_.t < 1e-14 * std::max(1.0, control_.t_end)) control_.t = control_.t_end;

      double res = 0;
      for (int j = 0; j < grid_.n2; ++j)
        for (int i = 0; i < grid_.n1; ++i) {
          res += std::abs(double(u_.avg(i, j)[0] - prev_avg(i, j)[0]));
          prev_avg(i, j) = u_.avg(i, j);
        }
      rep.residual_history.push_back({steps, control_.t, res * grid_.dx * grid_.dy / dt});

      if (opt.log_every > 0 && opt.log && steps % opt.log_every == 0) log_line(*opt.log, steps, dt);
      while (next_out < outputs.size() && outputs[next_out] <= control_.t + 1e-14) {
        if (opt.on_output) opt.on_output(control_.t);
        ++next_out;
      }
    }
    rep.steps = steps;
    rep.t_final = control_.t;
    fill_ranges(rep);
    if (spec_.exact) rep.l1_error = error_norms(u_, grid_, spec_.exact, control_.t);
    rep.min_density = min_density_;
    rep.min_pressure = min_pressure_;
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - wall0).count();
    return rep;
  }

  /// Ranges of the current averages and point values.
  void fill_ranges(RunReport& rep) const {
    const int m = Model::kComponents;
    const double inf = std::numeric_limits<double>::infinity();
    rep.avg_min.assign(m, inf);
    rep.avg_max.assign(m, -inf);
    rep.point_min.assign(m, inf);
    rep.point_max.assign(m, -inf);
    auto scan = [&](const Field<State>& f, std::vector<double>& lo, std::vector<double>& hi) {
      for (int j = 0; j < f.ny(); ++j)
        for (int i = 0; i < f.nx(); ++i)
          for (int k = 0; k < m; ++k) {
            lo[k] = std::min(lo[k], double(f(i, j)[k]));
            hi[k] = std::max(hi[k], double(f(i, j)[k]));
          }
    };
    scan(u_.avg, rep.avg_min, rep.avg_max);
    scan(u_.facex, rep.point_min, rep.point_max);
    scan(u_.facey, rep.point_min, rep.point_max);
    scan(u_.node, rep.point_min, rep.point_max);
  }

 private:
  /// Point access backed by the spatial operator's flux tables.
  struct TableAccess {
    const SpatialOperator<Model>& op;
    const DofField<Model>& d;
    const State& u(DofFamily fam, int i, int j) const {
      switch (fam) {
        case DofFamily::Node: return d.node(i, j);
        case DofFamily::FaceX: return d.facex(i, j);
        case DofFamily::FaceY: return d.facey(i, j);
        case DofFamily::Average: break;
      }
      return d.avg(i, j);
    }
    const State& f(DofFamily fam, int i, int j, int dir) const { return op.table(fam).f[dir](i, j); }
    Scalar rho(DofFamily fam, int i, int j, int dir) const { return op.table(fam).rho[dir](i, j); }
  };

  DofField<Model> allocate_theta() {
    auto t = allocate_dofs<Model>(grid_);
    t.for_each_family([](Field<State>& f) {
      for (auto& s : f.raw()) s.setOnes();
    });
    return t;
  }

  template <typename LowOrder>
  void update_points(const Field<State>& in, const Field<State>& res, Field<State>& out, Field<State>& theta,
                     double dt, LowOrder&& low) {
    const auto& cfg = spec_.limiter;
    for (int j = 0; j < in.ny(); ++j)
      for (int i = 0; i < in.nx(); ++i) {
        const State uh = in(i, j) + dt * res(i, j);
        if (!cfg.point) {
          out(i, j) = uh;
          continue;
        }
        const State ul = low(i, j);
        if constexpr (kEuler) {
          const auto lim = limit_point_euler(model_, uh, ul, Scalar(cfg.eps));
          out(i, j) = lim.value;
          theta(i, j).setConstant(std::min(lim.theta_density, lim.theta_pressure));
        } else {
          const auto lim = limit_point_scalar(uh[0], ul[0], global_.lo, global_.hi);
          out(i, j)[0] = lim.value;
          theta(i, j)[0] = lim.theta;
        }
      }
  }

  static constexpr const char* kStageNames[3] = {"stage 1", "stage 2", "stage 3"};

  void check_stage(const DofField<Model>& d, const char* stage) {
    auto scan = [&](const Field<State>& f, const char* fam) {
      for (int j = 0; j < f.ny(); ++j)
        for (int i = 0; i < f.nx(); ++i) {
          const State& s = f(i, j);
          bool ok = s.allFinite();
          if constexpr (kEuler) {
            const double p = ok ? double(model_.pressure(s)) : 0.0;
            if (ok) {
              min_density_ = std::min(min_density_, double(s[0]));
              min_pressure_ = std::min(min_pressure_, p);
            }
            ok = ok && s[0] > 0 && p > 0;
          }
          if (!ok) {
            std::ostringstream os;
            os.precision(17);
            os << "inadmissible " << fam << " value at (" << i << "," << j << ") after " << stage
               << " of step starting at t=" << control_.t << ": (";
            for (int k = 0; k < s.size(); ++k) os << (k ? ", " : "") << s[k];
            os << ")";
            throw NumericsError(os.str());
          }
        }
    };
    scan(d.avg, "average");
    scan(d.facex, "x-face");
    scan(d.facey, "y-face");
    scan(d.node, "node");
  }

  void log_line(std::ostream& os, long steps, double dt) const {
    os << "step " << steps << " t=" << control_.t << " dt=" << dt;
    if constexpr (kEuler) os << " min_rho=" << min_density_ << " min_p=" << min_pressure_;
    os << "\n";
  }

  ProblemSpec spec_;
  Model model_;
  Grid grid_;
  SpatialOperator<Model> op_;
  AverageLimiter<Model> limiter_;
  StepControl control_;
  ScalarBounds global_{0, 0};
  DofField<Model> u_, res_, stage_in_, stage_out_, u1_, theta_point_;
  double min_density_ = std::numeric_limits<double>::infinity();
  double min_pressure_ = std::numeric_limits<double>::infinity();
};

/// Model instance matching a problem's equation and parameters.
inline Euler make_euler(const ProblemSpec& s) {
  Euler m;
  m.gamma = s.gamma;
  return m;
}

}  // namespace af
