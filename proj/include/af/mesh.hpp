#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "af/errors.hpp"

namespace af {

/// Uniform Cartesian grid on [x0,x1]x[y0,y1] with N1 x N2 cells.
///
/// Index conventions used throughout (all zero-based):
///  - cell (i,j), i in [0,N1), j in [0,N2), spans [x0+i*dx, x0+(i+1)*dx]
///  - x-face (I,j) sits at (x0+I*dx, y-center of row j), I in [0,N1]
///  - y-face (i,J) sits at (x-center of column i, y0+J*dy), J in [0,N2]
///  - node (I,J) sits at (x0+I*dx, y0+J*dy)
struct Grid {
  double x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;
  int n1 = 1, n2 = 1;
  double dx = 1.0, dy = 1.0;
  int ghost = 2;

  double xc(int i) const { return x0 + (i + 0.5) * dx; }
  double yc(int j) const { return y0 + (j + 0.5) * dy; }
  double xf(int i) const { return x0 + i * dx; }
  double yf(int j) const { return y0 + j * dy; }
  double cell_area() const { return dx * dy; }
};

Grid build_grid(double x0, double x1, double y0, double y1, int n1, int n2);

/// 2D array with a ghost frame of width `ghost` on every side. Valid indices
/// are i in [-ghost, nx+ghost), j in [-ghost, ny+ghost).
template <typename T>
class Field {
 public:
  Field() = default;
  Field(int nx, int ny, int ghost, const T& fill = T{})
      : nx_(nx), ny_(ny), ghost_(ghost), stride_(nx + 2 * ghost),
        data_(static_cast<std::size_t>(nx + 2 * ghost) * (ny + 2 * ghost), fill) {}

  T& operator()(int i, int j) { return data_[index(i, j)]; }
  const T& operator()(int i, int j) const { return data_[index(i, j)]; }

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  int ghost() const { return ghost_; }
  std::size_t size() const { return data_.size(); }

  std::vector<T>& raw() { return data_; }
  const std::vector<T>& raw() const { return data_; }

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j + ghost_) * stride_ + (i + ghost_);
  }

  int nx_ = 0, ny_ = 0, ghost_ = 0, stride_ = 0;
  std::vector<T> data_;
};

/// Which of the four Active Flux DoF families a point belongs to.
enum class DofFamily { Average, FaceX, FaceY, Node };

/// The four DoF families of the third-order Active Flux representation.
/// Boundary point values shared by two cells are stored once.
template <typename Model>
struct DofField {
  using Scalar = typename Model::Scalar;
  using State = typename Model::State;

  Field<State> avg;    // N1 x N2
  Field<State> facex;  // (N1+1) x N2
  Field<State> facey;  // N1 x (N2+1)
  Field<State> node;   // (N1+1) x (N2+1)

  template <typename F>
  void for_each_family(F&& f) {
    f(avg);
    f(facex);
    f(facey);
    f(node);
  }
  template <typename F>
  void for_each_family(F&& f) const {
    f(avg);
    f(facex);
    f(facey);
    f(node);
  }
};

template <typename Model>
DofField<Model> allocate_dofs(const Grid& grid) {
  using State = typename Model::State;
  const State zero = State::Zero();
  const int g = grid.ghost;
  DofField<Model> d;
  d.avg = Field<State>(grid.n1, grid.n2, g, zero);
  d.facex = Field<State>(grid.n1 + 1, grid.n2, g, zero);
  d.facey = Field<State>(grid.n1, grid.n2 + 1, g, zero);
  d.node = Field<State>(grid.n1 + 1, grid.n2 + 1, g, zero);
  return d;
}

/// out = a*x + b*y over every entry of every family, ghosts included.
template <typename Model>
void lincomb(DofField<Model>& out, typename Model::Scalar a, const DofField<Model>& x,
             typename Model::Scalar b, const DofField<Model>& y) {
  auto combine = [&](auto& o, const auto& fx, const auto& fy) {
    auto& ov = o.raw();
    const auto& xv = fx.raw();
    const auto& yv = fy.raw();
    for (std::size_t k = 0; k < ov.size(); ++k) ov[k] = a * xv[k] + b * yv[k];
  };
  combine(out.avg, x.avg, y.avg);
  combine(out.facex, x.facex, y.facex);
  combine(out.facey, x.facey, y.facey);
  combine(out.node, x.node, y.node);
}

/// Physical location of entry (i,j) of the given family.
inline Eigen::Vector2d dof_location(const Grid& g, DofFamily fam, int i, int j) {
  switch (fam) {
    case DofFamily::Average: return {g.xc(i), g.yc(j)};
    case DofFamily::FaceX: return {g.xf(i), g.yc(j)};
    case DofFamily::FaceY: return {g.xc(i), g.yf(j)};
    case DofFamily::Node: return {g.xf(i), g.yf(j)};
  }
  return {0.0, 0.0};
}

}  // namespace af
