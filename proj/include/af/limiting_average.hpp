#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "af/equations.hpp"
#include "af/limiting_point.hpp"
#include "af/mesh.hpp"

namespace af {

enum class MpMode { Global, Local };

struct LimiterConfig {
  bool average = true;  // convex limiting of the average update
  bool point = true;    // scaling limiter on point values
  MpMode mp_mode = MpMode::Global;
  double eps = 1e-13;   // positivity floor for density and pressure
  double kappa = 0.0;   // shock sensor strength
  bool sensor = true;   // apply theta_s = exp(-kappa phi1 phi2) to Euler fluxes
  bool force_low_order = false;  // theta = 0 on every face (first-order averages)
};

struct ScalarBounds {
  double lo, hi;
};

/// First-order LLF flux between two cell averages and its dissipation
/// coefficient alpha = max spectral radius of the pair.
template <typename Model>
struct LowOrderFlux {
  typename Model::State flux;
  typename Model::Scalar alpha;
};

template <typename Model>
LowOrderFlux<Model> loworder_flux(const Model& model, const typename Model::State& ul,
                                  const typename Model::State& ur, int dir) {
  const auto alpha = std::max(model.spectral_radius(ul, dir), model.spectral_radius(ur, dir));
  return {(0.5 * (model.flux(ul, dir) + model.flux(ur, dir)) - 0.5 * alpha * (ur - ul)).eval(), alpha};
}

/// Riemann-fan average (ul+ur)/2 + (F(ul)-F(ur))/(2 alpha) of the LLF scheme.
template <typename Model>
typename Model::State intermediate_state(const Model& model, const typename Model::State& ul,
                                         const typename Model::State& ur, int dir,
                                         typename Model::Scalar alpha) {
  const auto df = (model.flux(ul, dir) - model.flux(ur, dir)).eval();
  if (alpha == 0) {
    if (df.cwiseAbs().maxCoeff() == 0) return (0.5 * (ul + ur)).eval();
    throw NumericsError("intermediate state with zero dissipation coefficient and a flux jump");
  }
  return (0.5 * (ul + ur) + df / (2 * alpha)).eval();
}

/// Limit an anti-diffusive flux so that ut - dF/alpha stays in the left
/// cell's bounds and ut + dF/alpha in the right cell's.
inline double limit_scalar_flux(double df, double ut, ScalarBounds left, ScalarBounds right, double alpha) {
  if (df >= 0) return std::min(df, alpha * std::min(ut - left.lo, right.hi - ut));
  return std::max(df, alpha * std::max(right.lo - ut, ut - left.hi));
}

inline ScalarBounds local_bounds(double ubar, double ut_left, double ut_right, double ut_bottom, double ut_top) {
  return {std::min({ubar, ut_left, ut_right, ut_bottom, ut_top}), std::max({ubar, ut_left, ut_right, ut_bottom, ut_top})};
}

/// Density part of the Euler anti-diffusion: keeps the density of both
/// limited intermediate states above eps. nullopt when ut itself has no
/// margin, meaning the face must fall back to the low-order flux.
inline std::optional<double> limit_density(double df_rho, double ut_rho, double alpha, double eps) {
  if (!(ut_rho > eps)) return std::nullopt;
  if (df_rho >= 0) return std::min(df_rho, alpha * (ut_rho - eps));
  return std::max(df_rho, alpha * (eps - ut_rho));
}

/// Coefficients of A theta^2 ± B theta < C, the pressure constraint on
/// ut ± theta dF/alpha.
struct PressureCoefficients {
  double a, b, c;
};

template <typename State>
PressureCoefficients pressure_coefficients(const State& df, const State& ut, double alpha, double eps) {
  const double dm2 = df[1] * df[1] + df[2] * df[2];
  const double a = 0.5 * dm2 - df[0] * df[3];
  const double b = alpha * (df[0] * ut[3] + ut[0] * df[3] - (df[1] * ut[1] + df[2] * ut[2]) - eps * df[0]);
  const double c = alpha * alpha * (ut[0] * ut[3] - 0.5 * (ut[1] * ut[1] + ut[2] * ut[2]) - eps * ut[0]);
  return {a, b, c};
}

/// Largest theta from the linear sufficient condition
/// (max(0,A) + |B|) theta < C. Returns 0 if ut has no pressure margin.
template <typename State>
double limit_pressure(const State& df, const State& ut, double alpha, double eps) {
  const auto [a, b, c] = pressure_coefficients(df, ut, alpha, eps);
  if (!(c > 0)) return 0.0;
  const double den = std::max(0.0, a) + std::abs(b);
  if (den < kTinyDenominator) return 1.0;
  return std::min(1.0, c / den);
}

/// Jameson's pressure curvature indicator |p+ - 2p + p-| / |p+ + 2p + p-|.
inline double jameson_indicator(double pm, double p0, double pp) {
  const double den = std::abs(pp + 2 * p0 + pm);
  if (den == 0) return 0.0;
  return std::abs(pp - 2 * p0 + pm) / den;
}

/// Compression indicator max(-div / sqrt(div^2 + curl^2 + 1e-40), 0).
inline double compression_indicator(double div, double curl) {
  return std::max(-div / std::sqrt(div * div + curl * curl + 1e-40), 0.0);
}

inline double sensor_blend(double kappa, double phi1, double phi2) { return std::exp(-kappa * phi1 * phi2); }

/// Face blending coefficients of the shock sensor, from cell-average
/// pressure and velocity. theta_x is (N1+1) x N2, theta_y is N1 x (N2+1).
/// Needs two ghost layers of averages.
template <typename Scalar>
void shock_sensor(const EulerModel<Scalar>& model, const Field<typename EulerModel<Scalar>::State>& avg,
                  const Grid& g, double kappa, Field<double>& theta_x, Field<double>& theta_y) {
  const int n1 = g.n1, n2 = g.n2, gh = g.ghost;
  Field<double> p(n1, n2, gh), v1(n1, n2, gh), v2(n1, n2, gh);
  for (int j = -2; j < n2 + 2; ++j)
    for (int i = -2; i < n1 + 2; ++i) {
      const auto w = model.cons_to_prim(avg(i, j));
      p(i, j) = w.p;
      v1(i, j) = w.v1;
      v2(i, j) = w.v2;
    }
  Field<double> phi1x(n1, n2, gh), phi1y(n1, n2, gh), phi2(n1, n2, gh);
  for (int j = -1; j <= n2; ++j)
    for (int i = -1; i <= n1; ++i) {
      phi1x(i, j) = jameson_indicator(p(i - 1, j), p(i, j), p(i + 1, j));
      phi1y(i, j) = jameson_indicator(p(i, j - 1), p(i, j), p(i, j + 1));
      const double dv1dx = (v1(i + 1, j) - v1(i - 1, j)) / (2 * g.dx);
      const double dv2dy = (v2(i, j + 1) - v2(i, j - 1)) / (2 * g.dy);
      const double dv2dx = (v2(i + 1, j) - v2(i - 1, j)) / (2 * g.dx);
      const double dv1dy = (v1(i, j + 1) - v1(i, j - 1)) / (2 * g.dy);
      phi2(i, j) = compression_indicator(dv1dx + dv2dy, dv2dx - dv1dy);
    }
  for (int j = 0; j < n2; ++j)
    for (int I = 0; I <= n1; ++I)
      theta_x(I, j) = sensor_blend(kappa, std::max(phi1x(I - 1, j), phi1x(I, j)), std::max(phi2(I - 1, j), phi2(I, j)));
  for (int J = 0; J <= n2; ++J)
    for (int i = 0; i < n1; ++i)
      theta_y(i, J) = sensor_blend(kappa, std::max(phi1y(i, J - 1), phi1y(i, J)), std::max(phi2(i, J - 1), phi2(i, J)));
}

/// Convex limiting of the forward-Euler average update. Given stage input
/// averages and high-order face fluxes, builds the limited face fluxes and
/// the limited stage averages.
template <typename Model>
class AverageLimiter {
 public:
  using State = typename Model::State;
  using Scalar = typename Model::Scalar;
  static constexpr bool kEuler = Model::kind == ModelKind::Euler;

  AverageLimiter(const Model& model, const Grid& g) : model_(model), g_(g) {
    const int n1 = g.n1, n2 = g.n2, gh = g.ghost;
    alpha_x_ = Field<Scalar>(n1 + 1, n2, gh, 0);
    alpha_y_ = Field<Scalar>(n1, n2 + 1, gh, 0);
    ut_x_ = Field<State>(n1 + 1, n2, gh, State::Zero());
    ut_y_ = Field<State>(n1, n2 + 1, gh, State::Zero());
    fl_x_ = Field<State>(n1 + 1, n2, gh, State::Zero());
    fl_y_ = Field<State>(n1, n2 + 1, gh, State::Zero());
    flim_x_ = Field<State>(n1 + 1, n2, gh, State::Zero());
    flim_y_ = Field<State>(n1, n2 + 1, gh, State::Zero());
    theta_x_ = Field<double>(n1 + 1, n2, gh, 1.0);
    theta_y_ = Field<double>(n1, n2 + 1, gh, 1.0);
    sensor_x_ = Field<double>(n1 + 1, n2, gh, 1.0);
    sensor_y_ = Field<double>(n1, n2 + 1, gh, 1.0);
    bounds_ = Field<ScalarBounds>(n1, n2, gh, ScalarBounds{0, 0});
  }

  /// Stage averages out = in - dt/dx (Fx_{I+1} - Fx_I) - dt/dy (...) with
  /// limited fluxes. `global` holds [m0, M0] for scalar models.
  void apply(const LimiterConfig& cfg, const Field<State>& in, const Field<State>& fh_x, const Field<State>& fh_y,
             double dt, ScalarBounds global, Field<State>& out) {
    const int n1 = g_.n1, n2 = g_.n2;
    const bool use_sensor = kEuler && cfg.sensor && cfg.kappa >= 0 && (cfg.average || cfg.kappa > 0);
    if constexpr (kEuler) {
      if (use_sensor) shock_sensor(model_, in, g_, cfg.kappa, sensor_x_, sensor_y_);
    }
    const bool need_low = cfg.average || cfg.force_low_order || use_sensor;

    if (!need_low) {
      for (int j = 0; j < n2; ++j)
        for (int I = 0; I <= n1; ++I) flim_x_(I, j) = fh_x(I, j);
      for (int J = 0; J <= n2; ++J)
        for (int i = 0; i < n1; ++i) flim_y_(i, J) = fh_y(i, J);
    } else {
      low_order_faces(in, cfg.average && !kEuler && cfg.mp_mode == MpMode::Local);
      if constexpr (!kEuler) {
        if (cfg.average) fill_bounds(in, cfg.mp_mode, global);
      }
      for (int j = 0; j < n2; ++j)
        for (int I = 0; I <= n1; ++I)
          flim_x_(I, j) = limit_face(cfg, fl_x_(I, j), fh_x(I, j), ut_x_(I, j), alpha_x_(I, j), I - 1, j, I, j,
                                     use_sensor ? sensor_x_(I, j) : 1.0, use_sensor, theta_x_(I, j));
      for (int J = 0; J <= n2; ++J)
        for (int i = 0; i < n1; ++i)
          flim_y_(i, J) = limit_face(cfg, fl_y_(i, J), fh_y(i, J), ut_y_(i, J), alpha_y_(i, J), i, J - 1, i, J,
                                     use_sensor ? sensor_y_(i, J) : 1.0, use_sensor, theta_y_(i, J));
    }

    const double mx = dt / g_.dx, my = dt / g_.dy;
    for (int j = 0; j < n2; ++j)
      for (int i = 0; i < n1; ++i)
        out(i, j) = in(i, j) - mx * (flim_x_(i + 1, j) - flim_x_(i, j)) - my * (flim_y_(i, j + 1) - flim_y_(i, j));
  }

  const Field<State>& limited_flux_x() const { return flim_x_; }
  const Field<State>& limited_flux_y() const { return flim_y_; }
  const Field<State>& low_order_flux_x() const { return fl_x_; }
  const Field<State>& low_order_flux_y() const { return fl_y_; }
  const Field<double>& theta_x() const { return theta_x_; }
  const Field<double>& theta_y() const { return theta_y_; }
  const Field<double>& sensor_x() const { return sensor_x_; }
  const Field<double>& sensor_y() const { return sensor_y_; }

 private:
  void low_order_faces(const Field<State>& in, bool extended) {
    const int n1 = g_.n1, n2 = g_.n2;
    // local bounds of the cells next to interior faces need one extra ring
    const int e = extended ? 1 : 0;
    for (int j = -e; j < n2 + e; ++j)
      for (int I = -e; I <= n1 + e; ++I) {
        const auto lo = loworder_flux(model_, in(I - 1, j), in(I, j), 0);
        fl_x_(I, j) = lo.flux;
        alpha_x_(I, j) = lo.alpha;
        ut_x_(I, j) = intermediate_state(model_, in(I - 1, j), in(I, j), 0, lo.alpha);
      }
    for (int J = -e; J <= n2 + e; ++J)
      for (int i = -e; i < n1 + e; ++i) {
        const auto lo = loworder_flux(model_, in(i, J - 1), in(i, J), 1);
        fl_y_(i, J) = lo.flux;
        alpha_y_(i, J) = lo.alpha;
        ut_y_(i, J) = intermediate_state(model_, in(i, J - 1), in(i, J), 1, lo.alpha);
      }
  }

  void fill_bounds(const Field<State>& in, MpMode mode, ScalarBounds global) {
    const int n1 = g_.n1, n2 = g_.n2;
    for (int j = -1; j <= n2; ++j)
      for (int i = -1; i <= n1; ++i) {
        if (mode == MpMode::Global) {
          bounds_(i, j) = global;
        } else {
          bounds_(i, j) = local_bounds(in(i, j)[0], ut_x_(i, j)[0], ut_x_(i + 1, j)[0], ut_y_(i, j)[0], ut_y_(i, j + 1)[0]);
        }
      }
  }

  State limit_face(const LimiterConfig& cfg, const State& fl, const State& fh, const State& ut, Scalar alpha, int il,
                   int jl, int ir, int jr, double theta_s, bool use_sensor, double& theta_out) const {
    if (cfg.force_low_order) {
      theta_out = 0.0;
      return fl;
    }
    const State df = fh - fl;
    if (!cfg.average) {
      // sensor only: F_H + (theta_s - 1) dF equals F_L + theta_s dF and is
      // exactly F_H when theta_s = 1
      theta_out = 1.0;
      return use_sensor ? (fh + (theta_s - 1.0) * df).eval() : fh;
    }
    if constexpr (kEuler) {
      const auto drho = limit_density(df[0], ut[0], alpha, cfg.eps);
      if (!drho) {
        theta_out = 0.0;
        return fl;
      }
      State dstar = df;
      dstar[0] = *drho;
      const double theta = limit_pressure(dstar, ut, alpha, cfg.eps);
      theta_out = theta;
      const State dlim = theta * dstar;
      if (use_sensor) return fl + theta_s * dlim;
      return fl + dlim;
    } else {
      const double dlim = limit_scalar_flux(df[0], ut[0], bounds_(il, jl), bounds_(ir, jr), alpha);
      theta_out = df[0] != 0 ? dlim / df[0] : 1.0;
      return fl + State(dlim);
    }
  }

  Model model_;
  Grid g_;
  Field<Scalar> alpha_x_, alpha_y_;
  Field<State> ut_x_, ut_y_, fl_x_, fl_y_, flim_x_, flim_y_;
  Field<double> theta_x_, theta_y_, sensor_x_, sensor_y_;
  Field<ScalarBounds> bounds_;
};

}  // namespace af
