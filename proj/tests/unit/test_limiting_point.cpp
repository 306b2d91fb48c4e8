#include <doctest.h>

#include <cmath>
#include <random>

#include "af/limiting_point.hpp"
#include "helpers.hpp"

using namespace af;
using testing_support::fill_constant;
using testing_support::fill_dofs;

namespace {

Euler::State euler(double rho, double v1, double v2, double p) { return Euler{}.prim_to_cons(rho, v1, v2, p); }

}  // namespace

TEST_CASE("low-order point schemes keep constants") {
  const Euler m;
  const auto g = build_grid(0, 1, 0, 1, 4, 4);
  auto d = allocate_dofs<Euler>(g);
  const auto c = euler(0.9, 0.4, -0.3, 1.7);
  fill_constant(d, g, c);
  const DirectPointAccess<Euler> a(m, d);
  CHECK((llf_point_node(a, 0.01, g, 2, 2) - c).cwiseAbs().maxCoeff() <= 1e-15);
  CHECK((llf_point_facex(a, 0.01, g, 2, 1) - c).cwiseAbs().maxCoeff() <= 1e-15);
  CHECK((llf_point_facey(a, 0.01, g, 1, 2) - c).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("low-order node update on linear data") {
  const Advection m;
  const auto g = build_grid(0, 1, 0, 1, 10, 10);
  auto d = allocate_dofs<Advection>(g);
  auto lin = [](double x, double) { return Advection::State(x); };
  fill_dofs(d, g, lin, lin);
  const DirectPointAccess<Advection> a(m, d);
  const double dt = 0.002;
  CHECK(llf_point_node(a, dt, g, 4, 4)[0] == doctest::Approx(g.xf(4) - dt));
  CHECK(llf_point_facex(a, dt, g, 4, 4)[0] == doctest::Approx(g.xf(4) - dt));
}

TEST_CASE("x-face tangential difference divides by dy") {
  // u = y: the tangential LLF fluxes use the nodes dy/2 above and below
  const Advection m;
  const auto g = build_grid(0, 1, 0, 1, 10, 10);
  auto d = allocate_dofs<Advection>(g);
  auto lin = [](double, double y) { return Advection::State(y); };
  fill_dofs(d, g, lin, lin);
  const DirectPointAccess<Advection> a(m, d);
  const double dt = 0.002, y = g.yc(4);
  // upwind flux difference is u(face) - u(node below) = dy/2, over dy
  CHECK(llf_point_facex(a, dt, g, 4, 4)[0] == doctest::Approx(y - dt * 0.5));
  CHECK(llf_point_facey(a, dt, g, 4, 4)[0] == doctest::Approx(g.yf(4) - dt));
}

TEST_CASE("low-order point schemes respect local bounds") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(-1, 2);
  const Burgers m;
  const auto g = build_grid(0, 1, 0, 1, 4, 4);
  for (int t = 0; t < 2000; ++t) {
    auto d = allocate_dofs<Burgers>(g);
    d.for_each_family([&](Field<Burgers::State>& f) {
      for (auto& v : f.raw()) v[0] = u(rng);
    });
    double rmax = 0;
    d.for_each_family([&](const Field<Burgers::State>& f) {
      for (const auto& v : f.raw()) rmax = std::max(rmax, std::abs(v[0]));
    });
    const double dt = 0.25 * g.dx / rmax;
    const DirectPointAccess<Burgers> a(m, d);
    auto in_range = [](double v, std::initializer_list<double> nb) {
      return v >= std::min(nb) - 1e-14 && v <= std::max(nb) + 1e-14;
    };
    CHECK(in_range(llf_point_node(a, dt, g, 2, 2)[0],
                   {d.node(2, 2)[0], d.node(1, 2)[0], d.node(3, 2)[0], d.node(2, 1)[0], d.node(2, 3)[0]}));
    CHECK(in_range(llf_point_facex(a, dt, g, 2, 1)[0],
                   {d.facex(2, 1)[0], d.facex(1, 1)[0], d.facex(3, 1)[0], d.node(2, 1)[0], d.node(2, 2)[0]}));
    CHECK(in_range(llf_point_facey(a, dt, g, 1, 2)[0],
                   {d.facey(1, 2)[0], d.facey(1, 1)[0], d.facey(1, 3)[0], d.node(1, 2)[0], d.node(2, 2)[0]}));
  }
}

TEST_CASE("low-order Sod node stays admissible") {
  const Euler m;
  const auto g = build_grid(0, 1, 0, 1, 10, 10);
  auto d = allocate_dofs<Euler>(g);
  auto sod = [&](double x, double) { return x < 0.5 ? euler(1, 0, 0, 1) : euler(0.125, 0, 0, 0.1); };
  fill_dofs(d, g, sod, sod);
  const DirectPointAccess<Euler> a(m, d);
  const double dt = 0.25 * g.dx / m.spectral_radius(euler(1, 0, 0, 1), 0);
  for (int I = 3; I <= 7; ++I) {
    CHECK(m.is_admissible(llf_point_node(a, dt, g, I, 5), 0.0));
    CHECK(m.is_admissible(llf_point_facex(a, dt, g, I, 5), 0.0));
  }
}

TEST_CASE("limit_point_scalar") {
  auto r = limit_point_scalar(0.7, 0.5, 0, 1);
  CHECK(r.value == 0.7);
  CHECK(r.theta == 1);

  r = limit_point_scalar(1.2, 0.5, 0, 1);
  CHECK(r.theta == doctest::Approx(5.0 / 7.0));
  CHECK(r.value == doctest::Approx(1.0));

  r = limit_point_scalar(-0.2, 0.6, 0, 1);
  CHECK(r.theta == doctest::Approx(0.75));
  CHECK(r.value == doctest::Approx(0.0).epsilon(1e-15));

  r = limit_point_scalar(0.5, 0.5, 0, 1);
  CHECK(r.value == 0.5);

  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-3, 3), b(0, 1);
  for (int t = 0; t < 100000; ++t) {
    const double ul = b(rng), uh = u(rng);
    const auto lim = limit_point_scalar(uh, ul, 0, 1);
    REQUIRE(lim.value >= 0);
    REQUIRE(lim.value <= 1);
    if (uh >= 0 && uh <= 1) REQUIRE(lim.value == uh);
  }
}

TEST_CASE("limit_point_euler") {
  const Euler m;
  const double eps = 1e-13;
  const auto ul = euler(1, 0.2, 0.1, 1);

  SUBCASE("admissible high-order value passes through") {
    const auto uh = euler(1.1, 0.3, 0, 0.9);
    const auto r = limit_point_euler(m, uh, ul, eps);
    CHECK(r.theta_density == 1);
    CHECK(r.theta_pressure == 1);
    CHECK((r.value - uh).cwiseAbs().maxCoeff() == 0);
  }
  SUBCASE("negative density") {
    Euler::State uh = ul;
    uh[0] = -0.5;
    const auto r = limit_point_euler(m, uh, ul, eps);
    CHECK(r.theta_density == doctest::Approx((1 - eps) / 1.5));
    CHECK(r.value[0] > 0);
    CHECK(m.pressure(r.value) > eps);
  }
  SUBCASE("inadmissible low-order value") {
    CHECK_THROWS_AS(limit_point_euler(m, ul, Euler::State(1, 2, 0, 1), eps), NumericsError);
  }
  SUBCASE("non-finite high-order value falls back") {
    const auto r = limit_point_euler(m, Euler::State(NAN, 0, 0, 1), ul, eps);
    CHECK((r.value - ul).cwiseAbs().maxCoeff() == 0);
  }
  SUBCASE("endpoints") {
    // theta = 0 reproduces UL
    const Euler::State uh(1, 5, 0, 1);
    const auto r = limit_point_euler(m, uh, euler(1, 5, 0, 1e-13 * 1.5), eps);
    CHECK(m.pressure(r.value) > 0);
  }
}

TEST_CASE("Euler point limiter randomized") {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> u(-1, 1), lp(-8, 1);
  const Euler m;
  const double eps = 1e-13;
  for (int t = 0; t < 100000; ++t) {
    const auto ul = euler(std::exp(lp(rng)), 2 * u(rng), 2 * u(rng), std::exp(lp(rng)));
    const Euler::State uh = ul + Euler::State(u(rng), 3 * u(rng), 3 * u(rng), 3 * u(rng)) * std::exp(lp(rng) + 3);
    const auto r = limit_point_euler(m, uh, ul, eps);
    const double floor_rho = std::min(eps, 0.5 * ul[0]);
    const double floor_p = std::min(eps, 0.5 * m.pressure(ul));
    REQUIRE(r.value[0] >= floor_rho * (1 - 1e-10));
    REQUIRE(m.pressure(r.value) >= floor_p * (1 - 1e-6));
    REQUIRE(r.theta_density >= 0);
    REQUIRE(r.theta_pressure <= 1);
  }
}
