#pragma once

#include <algorithm>
#include <cmath>

#include "af/equations.hpp"
#include "af/mesh.hpp"

namespace af {

/// Blending factors below this magnitude in a denominator mean the two
/// states coincide and no limiting is needed.
inline constexpr double kTinyDenominator = 1e-300;

/// Reads point values and their fluxes straight from a DofField.
template <typename Model>
class DirectPointAccess {
 public:
  using State = typename Model::State;
  using Scalar = typename Model::Scalar;

  DirectPointAccess(const Model& model, const DofField<Model>& d) : model_(model), d_(d) {}

  const State& u(DofFamily fam, int i, int j) const {
    switch (fam) {
      case DofFamily::Node: return d_.node(i, j);
      case DofFamily::FaceX: return d_.facex(i, j);
      case DofFamily::FaceY: return d_.facey(i, j);
      case DofFamily::Average: break;
    }
    return d_.avg(i, j);
  }
  State f(DofFamily fam, int i, int j, int dir) const { return model_.flux(u(fam, i, j), dir); }
  Scalar rho(DofFamily fam, int i, int j, int dir) const { return model_.spectral_radius(u(fam, i, j), dir); }

 private:
  const Model& model_;
  const DofField<Model>& d_;
};

namespace detail {

/// LLF flux between two point values a (left/below) and b (right/above).
template <typename Access>
auto llf_point_flux(const Access& a, DofFamily fa, int ia, int ja, DofFamily fb, int ib, int jb, int dir) {
  const auto alpha = std::max(a.rho(fa, ia, ja, dir), a.rho(fb, ib, jb, dir));
  return (0.5 * (a.f(fa, ia, ja, dir) + a.f(fb, ib, jb, dir)) - 0.5 * alpha * (a.u(fb, ib, jb) - a.u(fa, ia, ja))).eval();
}

}  // namespace detail

/// First-order LLF prediction at node (I,J) over its node neighbours, a
/// distance dx (dy) apart.
template <typename Access>
auto llf_point_node(const Access& a, double dt, const Grid& g, int I, int J) {
  constexpr auto N = DofFamily::Node;
  const auto fx_r = detail::llf_point_flux(a, N, I, J, N, I + 1, J, 0);
  const auto fx_l = detail::llf_point_flux(a, N, I - 1, J, N, I, J, 0);
  const auto fy_t = detail::llf_point_flux(a, N, I, J, N, I, J + 1, 1);
  const auto fy_b = detail::llf_point_flux(a, N, I, J - 1, N, I, J, 1);
  return (a.u(N, I, J) - dt / g.dx * (fx_r - fx_l) - dt / g.dy * (fy_t - fy_b)).eval();
}

/// First-order LLF prediction at x-face (I,j). The tangential fluxes use the
/// nodes above and below, but the difference is divided by dy, not dy/2.
template <typename Access>
auto llf_point_facex(const Access& a, double dt, const Grid& g, int I, int j) {
  constexpr auto F = DofFamily::FaceX;
  constexpr auto N = DofFamily::Node;
  const auto fx_r = detail::llf_point_flux(a, F, I, j, F, I + 1, j, 0);
  const auto fx_l = detail::llf_point_flux(a, F, I - 1, j, F, I, j, 0);
  const auto fy_t = detail::llf_point_flux(a, F, I, j, N, I, j + 1, 1);
  const auto fy_b = detail::llf_point_flux(a, N, I, j, F, I, j, 1);
  return (a.u(F, I, j) - dt / g.dx * (fx_r - fx_l) - dt / g.dy * (fy_t - fy_b)).eval();
}

/// First-order LLF prediction at y-face (i,J); mirror of llf_point_facex.
template <typename Access>
auto llf_point_facey(const Access& a, double dt, const Grid& g, int i, int J) {
  constexpr auto F = DofFamily::FaceY;
  constexpr auto N = DofFamily::Node;
  const auto fx_r = detail::llf_point_flux(a, F, i, J, N, i + 1, J, 0);
  const auto fx_l = detail::llf_point_flux(a, N, i, J, F, i, J, 0);
  const auto fy_t = detail::llf_point_flux(a, F, i, J, F, i, J + 1, 1);
  const auto fy_b = detail::llf_point_flux(a, F, i, J - 1, F, i, J, 1);
  return (a.u(F, i, J) - dt / g.dx * (fx_r - fx_l) - dt / g.dy * (fy_t - fy_b)).eval();
}

/// Result of a scaling limiter: the limited value and the blending factor
/// (1 keeps the high-order value).
template <typename T>
struct PointLimited {
  T value;
  double theta;
};

/// Scale uH toward uL so the result lies in [m0, M0]. uL must lie in the
/// bounds already.
inline PointLimited<double> limit_point_scalar(double uh, double ul, double m0, double m1) {
  double theta = 1.0;
  if (uh > m1) {
    const double den = uh - ul;
    theta = std::abs(den) < kTinyDenominator ? 1.0 : (m1 - ul) / den;
  } else if (uh < m0) {
    const double den = ul - uh;
    theta = std::abs(den) < kTinyDenominator ? 1.0 : (ul - m0) / den;
  }
  theta = std::clamp(theta, 0.0, 1.0);
  double v = theta * uh + (1.0 - theta) * ul;
  // the blend lands on the bound up to one rounding
  if (ul >= m0 && ul <= m1) v = std::clamp(v, m0, m1);
  return {v, theta};
}

/// Euler scaling limiter result with both blending stages.
template <typename State>
struct EulerPointLimited {
  State value;
  double theta_density;
  double theta_pressure;
};

/// Two-step positivity scaling of UH toward the low-order UL: first the
/// density, then the pressure through its concavity in the conservative
/// variables. Floors are min(eps, half of UL's own density / pressure) so a
/// low-order value closer to vacuum than eps still has headroom.
template <typename Scalar>
EulerPointLimited<typename EulerModel<Scalar>::State> limit_point_euler(const EulerModel<Scalar>& model,
                                                                        const typename EulerModel<Scalar>::State& uh,
                                                                        const typename EulerModel<Scalar>::State& ul,
                                                                        Scalar eps) {
  using State = typename EulerModel<Scalar>::State;
  if (!all_finite(ul) || !(ul[0] > 0) || !(model.pressure(ul) > 0)) {
    throw_bad_state("low-order point value is inadmissible", ul);
  }
  if (!all_finite(uh)) return {ul, 0.0, 0.0};
  const Scalar pl = model.pressure(ul);
  const Scalar eps_rho = std::min(eps, Scalar(0.5) * ul[0]);
  const Scalar eps_p = std::min(eps, Scalar(0.5) * pl);

  State us = uh;
  Scalar theta1 = 1;
  if (!(uh[0] >= eps_rho)) {
    const Scalar den = ul[0] - uh[0];
    theta1 = std::abs(den) < kTinyDenominator ? Scalar(1) : std::clamp((ul[0] - eps_rho) / den, Scalar(0), Scalar(1));
    us[0] = theta1 * uh[0] + (1 - theta1) * ul[0];
  }
  const Scalar ps = model.pressure(us);
  Scalar theta2 = 1;
  if (!(ps >= eps_p)) {
    const Scalar den = pl - ps;
    theta2 = std::abs(den) < kTinyDenominator ? Scalar(1) : std::clamp((pl - eps_p) / den, Scalar(0), Scalar(1));
  }
  if (theta2 == 1) return {us, double(theta1), 1.0};
  return {(theta2 * us + (1 - theta2) * ul).eval(), double(theta1), double(theta2)};
}

}  // namespace af
