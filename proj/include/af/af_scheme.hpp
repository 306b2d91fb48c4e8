#pragma once

#include <algorithm>
#include <array>

#include <optional>

#include "af/equations.hpp"
#include "af/limiting_point.hpp"
#include "af/mesh.hpp"

namespace af {

/// Simpson quadrature of a flux along a face from its two end values and the
/// face-center value.
template <typename State>
State simpson_flux(const State& lo, const State& mid, const State& hi) {
  return (lo + 4 * mid + hi) / 6;
}

/// Point value at the center of cell (i,j) from the biquadratic
/// reconstruction through the cell's nine DoFs.
template <typename Model>
typename Model::State cell_center_reconstruct(const DofField<Model>& d, int i, int j) {
  return (36 * d.avg(i, j) -
          4 * (d.facex(i, j) + d.facex(i + 1, j) + d.facey(i, j) + d.facey(i, j + 1)) -
          (d.node(i, j) + d.node(i + 1, j) + d.node(i, j + 1) + d.node(i + 1, j + 1))) /
         16;
}

/// Third-order one-sided differences of split fluxes on a five-point stencil
/// s0..s4 (spacing h/2) centered on s2:
///   D+ F+ = (F+_0 - 4 F+_1 + 3 F+_2)/h,  D- F- = (-3 F-_2 + 4 F-_3 - F-_4)/h.
template <typename State, typename Scalar>
State upwind_difference(const std::array<State, 5>& fp, const std::array<State, 5>& fm, Scalar h) {
  return ((fp[0] - 4 * fp[1] + 3 * fp[2]) + (-3 * fm[2] + 4 * fm[3] - fm[4])) / h;
}

/// Location and orientation of a stencil for stencil_alpha and the single
/// point residuals. `i`, `j` use the family's own indexing.
struct PointLocation {
  DofFamily family;
  int i, j;
};

namespace detail {

/// Five states along direction `dir` centered on a point DoF. Cell-centered
/// entries come from the parabolic reconstruction.
template <typename Model>
std::array<typename Model::State, 5> gather_stencil(const DofField<Model>& d, PointLocation loc, int dir) {
  const int i = loc.i, j = loc.j;
  switch (loc.family) {
    case DofFamily::Node:
      if (dir == 0) return {d.node(i - 1, j), d.facey(i - 1, j), d.node(i, j), d.facey(i, j), d.node(i + 1, j)};
      return {d.node(i, j - 1), d.facex(i, j - 1), d.node(i, j), d.facex(i, j), d.node(i, j + 1)};
    case DofFamily::FaceX:
      if (dir != 0) throw ConfigError("x-face stencils are only upwinded in x");
      return {d.facex(i - 1, j), cell_center_reconstruct(d, i - 1, j), d.facex(i, j),
              cell_center_reconstruct(d, i, j), d.facex(i + 1, j)};
    case DofFamily::FaceY:
      if (dir != 1) throw ConfigError("y-face stencils are only upwinded in y");
      return {d.facey(i, j - 1), cell_center_reconstruct(d, i, j - 1), d.facey(i, j),
              cell_center_reconstruct(d, i, j), d.facey(i, j + 1)};
    case DofFamily::Average: break;
  }
  throw ConfigError("cell averages have no point stencil");
}

template <typename Model>
typename Model::State upwind_term(const Model& model, SplittingKind kind,
                                  const std::array<typename Model::State, 5>& s, int dir,
                                  typename Model::Scalar h) {
  using State = typename Model::State;
  typename Model::Scalar alpha = 0;
  if (kind == SplittingKind::LLF) {
    for (const auto& u : s) alpha = std::max(alpha, model.spectral_radius(u, dir));
  }
  std::array<State, 5> fp, fm;
  for (int k = 0; k < 5; ++k) std::tie(fp[k], fm[k]) = fvs_split(model, kind, s[k], dir, alpha);
  return upwind_difference(fp, fm, h);
}

}  // namespace detail

/// Maximum spectral radius in direction `dir` over the five-point stencil of
/// a point DoF; this is the dissipation coefficient of the LLF splitting.
template <typename Model>
typename Model::Scalar stencil_alpha(const Model& model, const DofField<Model>& d, PointLocation loc, int dir) {
  typename Model::Scalar alpha = 0;
  for (const auto& u : detail::gather_stencil(d, loc, dir)) alpha = std::max(alpha, model.spectral_radius(u, dir));
  return alpha;
}

/// d/dt of node (I,J): -sum over directions of [D+ F+ + D- F-].
template <typename Model>
typename Model::State node_residual(const Model& model, SplittingKind kind, const DofField<Model>& d,
                                    const Grid& g, int I, int J) {
  const PointLocation loc{DofFamily::Node, I, J};
  return -(detail::upwind_term(model, kind, detail::gather_stencil(d, loc, 0), 0, g.dx) +
           detail::upwind_term(model, kind, detail::gather_stencil(d, loc, 1), 1, g.dy));
}

/// d/dt of x-face (I,j): upwinded in x, central in y along the face.
template <typename Model>
typename Model::State facex_residual(const Model& model, SplittingKind kind, const DofField<Model>& d,
                                     const Grid& g, int I, int j) {
  const auto normal = detail::upwind_term(model, kind, detail::gather_stencil(d, {DofFamily::FaceX, I, j}, 0), 0, g.dx);
  const typename Model::State tangential = (model.flux(d.node(I, j + 1), 1) - model.flux(d.node(I, j), 1)) / g.dy;
  return -normal - tangential;
}

/// d/dt of y-face (i,J): upwinded in y, central in x along the face.
template <typename Model>
typename Model::State facey_residual(const Model& model, SplittingKind kind, const DofField<Model>& d,
                                     const Grid& g, int i, int J) {
  const auto normal = detail::upwind_term(model, kind, detail::gather_stencil(d, {DofFamily::FaceY, i, J}, 1), 1, g.dy);
  const typename Model::State tangential = (model.flux(d.node(i + 1, J), 0) - model.flux(d.node(i, J), 0)) / g.dx;
  return -normal - tangential;
}

/// d/dt of the average of cell (i,j) with Simpson-rule face fluxes.
template <typename Model>
typename Model::State average_residual(const Model& model, const DofField<Model>& d, const Grid& g, int i, int j) {
  auto fx = [&](int I) {
    return simpson_flux(model.flux(d.node(I, j), 0), model.flux(d.facex(I, j), 0), model.flux(d.node(I, j + 1), 0));
  };
  auto fy = [&](int J) {
    return simpson_flux(model.flux(d.node(i, J), 1), model.flux(d.facey(i, J), 1), model.flux(d.node(i + 1, J), 1));
  };
  return -(fx(i + 1) - fx(i)) / g.dx - (fy(j + 1) - fy(j)) / g.dy;
}

/// Flux data of one family of point values, evaluated once per stage.
template <typename Model>
struct PointFluxTable {
  using State = typename Model::State;
  using Scalar = typename Model::Scalar;
  std::array<Field<State>, 2> f;       // physical flux per direction
  std::array<Field<State>, 2> fp, fm;  // split parts (SW / VH only)
  std::array<Field<Scalar>, 2> rho;    // spectral radius per direction
};

/// Semi-discrete Active Flux operator on a whole DofField. Point flux tables
/// are built once per evaluation, then differenced; the Simpson face fluxes
/// are kept for the average limiter.
template <typename Model>
class SpatialOperator {
 public:
  using State = typename Model::State;
  using Scalar = typename Model::Scalar;

  SpatialOperator(const Model& model, const Grid& grid, SplittingKind kind)
      : model_(model), grid_(grid), kind_(kind) {
    if constexpr (Model::kind != ModelKind::Euler) {
      if (kind == SplittingKind::VH) throw ConfigError("van Leer-Haenel splitting requires the Euler equations");
    }
    const int n1 = grid.n1, n2 = grid.n2, g = grid.ghost;
    centers_ = Field<State>(n1, n2, g, State::Zero());
    auto alloc = [&](PointFluxTable<Model>& t, int nx, int ny) {
      for (int d = 0; d < 2; ++d) {
        t.f[d] = Field<State>(nx, ny, g, State::Zero());
        t.rho[d] = Field<Scalar>(nx, ny, g, Scalar(0));
        if (kind != SplittingKind::LLF) {
          t.fp[d] = Field<State>(nx, ny, g, State::Zero());
          t.fm[d] = Field<State>(nx, ny, g, State::Zero());
        }
      }
    };
    alloc(node_, n1 + 1, n2 + 1);
    alloc(facex_, n1 + 1, n2);
    alloc(facey_, n1, n2 + 1);
    alloc(center_, n1, n2);
    flux_x_ = Field<State>(n1 + 1, n2, g, State::Zero());
    flux_y_ = Field<State>(n1, n2 + 1, g, State::Zero());
  }

  /// With a floor set, reconstructed cell-center states of the Euler
  /// equations that fall below it are scaled toward the cell average.
  void set_center_floor(std::optional<Scalar> eps) { center_floor_ = eps; }

  /// Residuals on every interior DoF; `d` must have its ghosts filled.
  void evaluate(const DofField<Model>& d, DofField<Model>& res) {
    const int n1 = grid_.n1, n2 = grid_.n2, g = grid_.ghost;
    for (int j = -1; j <= n2; ++j)
      for (int i = -1; i <= n1; ++i) {
        centers_(i, j) = cell_center_reconstruct(d, i, j);
        if constexpr (Model::kind == ModelKind::Euler) {
          if (center_floor_ && !model_.is_admissible(centers_(i, j), *center_floor_)) {
            centers_(i, j) = limit_point_euler(model_, centers_(i, j), d.avg(i, j), *center_floor_).value;
          } else if (!center_floor_ && !model_.is_admissible(centers_(i, j), Scalar(0))) {
            throw_bad_state(("inadmissible reconstructed cell center at (" + std::to_string(i) + "," +
                             std::to_string(j) + ")")
                                .c_str(),
                            centers_(i, j));
          }
        }
      }

    fill_table(node_, d.node, -g, n1 + 1 + g, -g, n2 + 1 + g);
    fill_table(facex_, d.facex, -g, n1 + 1 + g, -g, n2 + g);
    fill_table(facey_, d.facey, -g, n1 + g, -g, n2 + 1 + g);
    fill_table(center_, centers_, -1, n1 + 1, -1, n2 + 1);

    for (int j = 0; j < n2; ++j)
      for (int I = 0; I <= n1; ++I)
        flux_x_(I, j) = simpson_flux(node_.f[0](I, j), facex_.f[0](I, j), node_.f[0](I, j + 1));
    for (int J = 0; J <= n2; ++J)
      for (int i = 0; i < n1; ++i)
        flux_y_(i, J) = simpson_flux(node_.f[1](i, J), facey_.f[1](i, J), node_.f[1](i + 1, J));

    for (int j = 0; j < n2; ++j)
      for (int i = 0; i < n1; ++i)
        res.avg(i, j) = -(flux_x_(i + 1, j) - flux_x_(i, j)) / grid_.dx - (flux_y_(i, j + 1) - flux_y_(i, j)) / grid_.dy;

    for (int J = 0; J <= n2; ++J)
      for (int I = 0; I <= n1; ++I) {
        const State dx_term = upwind({{{&node_, &d.node, I - 1, J}, {&facey_, &d.facey, I - 1, J},
                                      {&node_, &d.node, I, J}, {&facey_, &d.facey, I, J},
                                      {&node_, &d.node, I + 1, J}}},
                                     0, grid_.dx);
        const State dy_term = upwind({{{&node_, &d.node, I, J - 1}, {&facex_, &d.facex, I, J - 1},
                                      {&node_, &d.node, I, J}, {&facex_, &d.facex, I, J},
                                      {&node_, &d.node, I, J + 1}}},
                                     1, grid_.dy);
        res.node(I, J) = -dx_term - dy_term;
      }

    for (int j = 0; j < n2; ++j)
      for (int I = 0; I <= n1; ++I) {
        const State normal = upwind({{{&facex_, &d.facex, I - 1, j}, {&center_, &centers_, I - 1, j},
                                     {&facex_, &d.facex, I, j}, {&center_, &centers_, I, j},
                                     {&facex_, &d.facex, I + 1, j}}},
                                    0, grid_.dx);
        res.facex(I, j) = -normal - (node_.f[1](I, j + 1) - node_.f[1](I, j)) / grid_.dy;
      }

    for (int J = 0; J <= n2; ++J)
      for (int i = 0; i < n1; ++i) {
        const State normal = upwind({{{&facey_, &d.facey, i, J - 1}, {&center_, &centers_, i, J - 1},
                                     {&facey_, &d.facey, i, J}, {&center_, &centers_, i, J},
                                     {&facey_, &d.facey, i, J + 1}}},
                                    1, grid_.dy);
        res.facey(i, J) = -normal - (node_.f[0](i + 1, J) - node_.f[0](i, J)) / grid_.dx;
      }
  }

  /// High-order (Simpson) numerical fluxes through x-faces, (N1+1) x N2.
  const Field<State>& face_flux_x() const { return flux_x_; }
  /// High-order (Simpson) numerical fluxes through y-faces, N1 x (N2+1).
  const Field<State>& face_flux_y() const { return flux_y_; }
  const Field<State>& centers() const { return centers_; }

  const PointFluxTable<Model>& table(DofFamily fam) const {
    switch (fam) {
      case DofFamily::Node: return node_;
      case DofFamily::FaceX: return facex_;
      case DofFamily::FaceY: return facey_;
      case DofFamily::Average: break;
    }
    return center_;
  }

  const Model& model() const { return model_; }
  const Grid& grid() const { return grid_; }
  SplittingKind splitting() const { return kind_; }

 private:
  struct Tap {
    const PointFluxTable<Model>* table;
    const Field<State>* values;
    int i, j;
  };

  void fill_table(PointFluxTable<Model>& t, const Field<State>& u, int i0, int i1, int j0, int j1) {
    for (int j = j0; j < j1; ++j)
      for (int i = i0; i < i1; ++i) {
        const State& s = u(i, j);
        for (int dir = 0; dir < 2; ++dir) {
          t.f[dir](i, j) = model_.flux(s, dir);
          t.rho[dir](i, j) = model_.spectral_radius(s, dir);
          if (kind_ != SplittingKind::LLF) {
            auto [p, m] = fvs_split(model_, kind_, s, dir, Scalar(0));
            t.fp[dir](i, j) = p;
            t.fm[dir](i, j) = m;
          }
        }
      }
  }

  State upwind(const std::array<Tap, 5>& taps, int dir, Scalar h) const {
    std::array<State, 5> fp, fm;
    if (kind_ == SplittingKind::LLF) {
      Scalar alpha = 0;
      for (const Tap& t : taps) alpha = std::max(alpha, t.table->rho[dir](t.i, t.j));
      for (int k = 0; k < 5; ++k) {
        const State& f = taps[k].table->f[dir](taps[k].i, taps[k].j);
        const State& u = (*taps[k].values)(taps[k].i, taps[k].j);
        fp[k] = Scalar(0.5) * (f + alpha * u);
        fm[k] = Scalar(0.5) * (f - alpha * u);
      }
    } else {
      for (int k = 0; k < 5; ++k) {
        fp[k] = taps[k].table->fp[dir](taps[k].i, taps[k].j);
        fm[k] = taps[k].table->fm[dir](taps[k].i, taps[k].j);
      }
    }
    return upwind_difference(fp, fm, h);
  }

  Model model_;
  Grid grid_;
  SplittingKind kind_;
  std::optional<Scalar> center_floor_;
  Field<State> centers_;
  PointFluxTable<Model> node_, facex_, facey_, center_;
  Field<State> flux_x_, flux_y_;
};

}  // namespace af
