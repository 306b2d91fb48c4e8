#pragma once

#include <cmath>
#include <sstream>
#include <string>
#include <utility>

#include <Eigen/Core>

#include "af/errors.hpp"

namespace af {

enum class ModelKind { Advection, Burgers, Euler };

/// Flux vector splitting used by the point value update.
///  - LLF: F± = (F ± alpha U)/2 with a stencil-wide alpha
///  - SW: characteristic (Steger-Warming) splitting, F± = (F ± |J| U)/2
///  - VH: van Leer-Hänel Mach number splitting, Euler only
enum class SplittingKind { LLF, SW, VH };

std::string to_string(ModelKind k);
std::string to_string(SplittingKind k);
SplittingKind parse_splitting(const std::string& s);

template <typename State>
bool all_finite(const State& u) {
  return u.allFinite();
}

template <typename State>
[[noreturn]] void throw_bad_state(const char* what, const State& u) {
  std::ostringstream os;
  os.precision(17);
  os << what << ": (";
  for (int k = 0; k < u.size(); ++k) os << (k ? ", " : "") << u[k];
  os << ")";
  throw NumericsError(os.str());
}

/// Linear advection u_t + a1 u_x + a2 u_y = 0.
template <typename ScalarT>
struct AdvectionModel {
  using Scalar = ScalarT;
  static constexpr int kComponents = 1;
  static constexpr ModelKind kind = ModelKind::Advection;
  using State = Eigen::Matrix<Scalar, 1, 1>;

  Scalar a1 = 1, a2 = 1;

  Scalar velocity(int dir) const { return dir == 0 ? a1 : a2; }

  State flux(const State& u, int dir) const {
    if (!all_finite(u)) throw_bad_state("non-finite state in flux", u);
    return velocity(dir) * u;
  }
  Scalar flux_derivative(const State&, int dir) const { return velocity(dir); }
  Scalar spectral_radius(const State&, int dir) const { return std::abs(velocity(dir)); }
  bool is_admissible(const State& u, Scalar) const { return all_finite(u); }
};

/// Burgers' equation u_t + (u^2/2)_x + (u^2/2)_y = 0.
template <typename ScalarT>
struct BurgersModel {
  using Scalar = ScalarT;
  static constexpr int kComponents = 1;
  static constexpr ModelKind kind = ModelKind::Burgers;
  using State = Eigen::Matrix<Scalar, 1, 1>;

  State flux(const State& u, int) const {
    if (!all_finite(u)) throw_bad_state("non-finite state in flux", u);
    return State(Scalar(0.5) * u[0] * u[0]);
  }
  Scalar flux_derivative(const State& u, int) const { return u[0]; }
  Scalar spectral_radius(const State& u, int) const { return std::abs(u[0]); }
  bool is_admissible(const State& u, Scalar) const { return all_finite(u); }
};

/// Primitive variables of the 2D Euler equations.
template <typename Scalar>
struct Primitive {
  Scalar rho, v1, v2, p;
};

/// 2D compressible Euler equations for a perfect gas, conservative state
/// (rho, rho v1, rho v2, E).
template <typename ScalarT>
struct EulerModel {
  using Scalar = ScalarT;
  static constexpr int kComponents = 4;
  static constexpr ModelKind kind = ModelKind::Euler;
  using State = Eigen::Matrix<Scalar, 4, 1>;

  Scalar gamma = Scalar(1.4);

  Scalar pressure(const State& u) const {
    return (gamma - 1) * (u[3] - Scalar(0.5) * (u[1] * u[1] + u[2] * u[2]) / u[0]);
  }

  Primitive<Scalar> cons_to_prim(const State& u) const {
    if (!all_finite(u) || !(u[0] > 0)) throw_bad_state("non-positive density", u);
    return {u[0], u[1] / u[0], u[2] / u[0], pressure(u)};
  }

  State prim_to_cons(const Primitive<Scalar>& w) const {
    State u;
    u << w.rho, w.rho * w.v1, w.rho * w.v2,
        w.p / (gamma - 1) + Scalar(0.5) * w.rho * (w.v1 * w.v1 + w.v2 * w.v2);
    return u;
  }

  State prim_to_cons(Scalar rho, Scalar v1, Scalar v2, Scalar p) const {
    return prim_to_cons(Primitive<Scalar>{rho, v1, v2, p});
  }

  Scalar sound_speed(const State& u) const { return std::sqrt(gamma * pressure(u) / u[0]); }

  bool is_admissible(const State& u, Scalar eps) const {
    return all_finite(u) && u[0] > eps && pressure(u) > eps;
  }

  State flux(const State& u, int dir) const {
    if (!all_finite(u) || !(u[0] > 0)) throw_bad_state("inadmissible state in flux", u);
    const Scalar p = pressure(u);
    const Scalar vn = u[1 + dir] / u[0];
    State f;
    f[0] = u[1 + dir];
    f[1] = u[1] * vn;
    f[2] = u[2] * vn;
    f[1 + dir] += p;
    f[3] = (u[3] + p) * vn;
    return f;
  }

  Scalar spectral_radius(const State& u, int dir) const {
    if (!all_finite(u) || !(u[0] > 0)) throw_bad_state("inadmissible state (density)", u);
    const Scalar p = pressure(u);
    if (!(p > 0)) throw_bad_state("inadmissible state (pressure)", u);
    return std::abs(u[1 + dir] / u[0]) + std::sqrt(gamma * p / u[0]);
  }
};

/// Swap the two momentum components; maps a y-direction problem to x.
template <typename State>
State swap_momentum(const State& u) {
  State r = u;
  r[1] = u[2];
  r[2] = u[1];
  return r;
}

namespace detail {

template <typename S>
S positive_part(S x) {
  return S(0.5) * (x + std::abs(x));
}
template <typename S>
S negative_part(S x) {
  return S(0.5) * (x - std::abs(x));
}

/// Steger-Warming split in x for the Euler equations; `sign` = +1 or -1.
template <typename Scalar>
typename EulerModel<Scalar>::State steger_warming_x(const EulerModel<Scalar>& m,
                                                    const typename EulerModel<Scalar>::State& u,
                                                    int sign) {
  const Scalar g = m.gamma;
  const Scalar rho = u[0];
  const Scalar v1 = u[1] / rho, v2 = u[2] / rho;
  const Scalar p = m.pressure(u);
  const Scalar a = std::sqrt(g * p / rho);
  auto part = [sign](Scalar x) { return sign > 0 ? positive_part(x) : negative_part(x); };
  const Scalar l1 = part(v1), l2 = part(v1 + a), l3 = part(v1 - a);
  const Scalar al = 2 * (g - 1) * l1 + l2 + l3;
  const Scalar c = rho / (2 * g);
  typename EulerModel<Scalar>::State f;
  f[0] = c * al;
  f[1] = c * (al * v1 + a * (l2 - l3));
  f[2] = c * al * v2;
  f[3] = c * (Scalar(0.5) * al * (v1 * v1 + v2 * v2) + a * v1 * (l2 - l3) +
              a * a / (g - 1) * (l2 + l3));
  return f;
}

/// van Leer-Hänel split in x; supersonic states are fully one-sided.
template <typename Scalar>
std::pair<typename EulerModel<Scalar>::State, typename EulerModel<Scalar>::State> van_leer_haenel_x(
    const EulerModel<Scalar>& m, const typename EulerModel<Scalar>::State& u) {
  using State = typename EulerModel<Scalar>::State;
  const Scalar rho = u[0];
  const Scalar v1 = u[1] / rho, v2 = u[2] / rho;
  const Scalar p = m.pressure(u);
  const Scalar a = std::sqrt(m.gamma * p / rho);
  const Scalar mach = v1 / a;
  if (mach >= 1) return {m.flux(u, 0), State::Zero()};
  if (mach <= -1) return {State::Zero(), m.flux(u, 0)};
  const Scalar h = (u[3] + p) / rho;
  const Scalar mp = Scalar(0.25) * rho * a * (mach + 1) * (mach + 1);
  const Scalar mm = -Scalar(0.25) * rho * a * (mach - 1) * (mach - 1);
  // Haenel's pressure split, continuous with the supersonic branches
  const Scalar pp = Scalar(0.25) * p * (mach + 1) * (mach + 1) * (2 - mach);
  const Scalar pm = Scalar(0.25) * p * (mach - 1) * (mach - 1) * (2 + mach);
  State fp, fm;
  fp << mp, mp * v1 + pp, mp * v2, mp * h;
  fm << mm, mm * v1 + pm, mm * v2, mm * h;
  return {fp, fm};
}

}  // namespace detail

/// Split the physical flux in direction `dir` (0 = x, 1 = y) into parts with
/// non-negative and non-positive Jacobian eigenvalues. `alpha` is only read
/// by the LLF splitting and must bound the spectral radius over the stencil.
template <typename Model>
std::pair<typename Model::State, typename Model::State> fvs_split(const Model& model, SplittingKind kind,
                                                                  const typename Model::State& u, int dir,
                                                                  typename Model::Scalar alpha) {
  using State = typename Model::State;
  using Scalar = typename Model::Scalar;
  if (kind == SplittingKind::LLF) {
    const State f = model.flux(u, dir);
    return {Scalar(0.5) * (f + alpha * u), Scalar(0.5) * (f - alpha * u)};
  }
  if constexpr (Model::kind == ModelKind::Euler) {
    // validates the state
    (void)model.spectral_radius(u, dir);
    if (kind == SplittingKind::SW) {
      if (dir == 0) return {detail::steger_warming_x(model, u, +1), detail::steger_warming_x(model, u, -1)};
      const State r = swap_momentum(u);
      return {swap_momentum(detail::steger_warming_x(model, r, +1)),
              swap_momentum(detail::steger_warming_x(model, r, -1))};
    }
    if (dir == 0) return detail::van_leer_haenel_x(model, u);
    auto [fp, fm] = detail::van_leer_haenel_x(model, swap_momentum(u));
    return {swap_momentum(fp), swap_momentum(fm)};
  } else {
    if (kind == SplittingKind::VH) {
      throw ConfigError("van Leer-Haenel splitting is only defined for the Euler equations");
    }
    // characteristic splitting of a scalar flux: F± = (f ± |f'| u)/2
    const State f = model.flux(u, dir);
    const Scalar s = std::abs(model.flux_derivative(u, dir));
    return {Scalar(0.5) * (f + s * u), Scalar(0.5) * (f - s * u)};
  }
}

using Advection = AdvectionModel<double>;
using Burgers = BurgersModel<double>;
using Euler = EulerModel<double>;

}  // namespace af
