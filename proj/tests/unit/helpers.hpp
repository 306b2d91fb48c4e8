#pragma once

#include <functional>

#include "af/mesh.hpp"

namespace testing_support {

/// Point values sampled from `point` and averages from `average`, on every
/// entry including ghosts.
template <typename Model, typename P, typename A>
void fill_dofs(af::DofField<Model>& d, const af::Grid& g, P&& point, A&& average) {
  using af::DofFamily;
  auto fill = [&](af::Field<typename Model::State>& f, DofFamily fam) {
    const int gh = f.ghost();
    for (int j = -gh; j < f.ny() + gh; ++j)
      for (int i = -gh; i < f.nx() + gh; ++i) {
        const auto p = af::dof_location(g, fam, i, j);
        f(i, j) = fam == DofFamily::Average ? average(p.x(), p.y()) : point(p.x(), p.y());
      }
  };
  fill(d.avg, DofFamily::Average);
  fill(d.facex, DofFamily::FaceX);
  fill(d.facey, DofFamily::FaceY);
  fill(d.node, DofFamily::Node);
}

template <typename Model, typename P>
void fill_constant(af::DofField<Model>& d, const af::Grid& g, P&& value) {
  fill_dofs(d, g, [&](double, double) { return value; }, [&](double, double) { return value; });
}

}  // namespace testing_support
