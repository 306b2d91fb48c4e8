#include <doctest.h>

#include <cmath>

#include "af/timeloop.hpp"

using namespace af;

namespace {

ProblemSpec uniform_euler(int n) {
  ProblemSpec s;
  s.name = "uniform";
  s.model = ModelKind::Euler;
  s.n1 = s.n2 = n;
  s.t_end = 1;
  for (auto& b : s.bc) b.kind = BcKind::Periodic;
  s.initial = [](double, double) {
    Eigen::VectorXd u(4);
    u << 1, 0, 0, 2.5;
    return u;
  };
  return s;
}

template <typename Model>
double total_mass(const Solver<Model>& s) {
  double m = 0;
  const auto& g = s.grid();
  for (int j = 0; j < g.n2; ++j)
    for (int i = 0; i < g.n1; ++i) m += s.state().avg(i, j)[0];
  return m * g.dx * g.dy;
}

}  // namespace

TEST_CASE("compute_dt") {
  SUBCASE("advection: CFL and BP caps coincide") {
    auto spec = make_problem("advection");
    Solver<Advection> s(spec, Advection{});
    CHECK(s.compute_dt() == doctest::Approx(0.0025).epsilon(1e-14));
    s.control().bp_dt_enforced = false;
    CHECK(s.compute_dt() == doctest::Approx(0.0025).epsilon(1e-14));
  }
  SUBCASE("uniform Euler") {
    auto spec = uniform_euler(10);
    Solver<Euler> s(spec, make_euler(spec));
    fill_ghosts(s.state(), s.grid(), spec, 0);
    CHECK(s.compute_dt() == doctest::Approx(0.25 * 0.1 / std::sqrt(1.4)).epsilon(1e-14));
  }
  SUBCASE("clipped to the remaining time") {
    auto spec = uniform_euler(10);
    spec.t_end = 1e-3;
    Solver<Euler> s(spec, make_euler(spec));
    fill_ghosts(s.state(), s.grid(), spec, 0);
    CHECK(s.compute_dt() == 1e-3);
  }
  SUBCASE("zero wave speed") {
    auto spec = make_problem("burgers");
    spec.initial = [](double, double) { return Eigen::VectorXd::Zero(1).eval(); };
    Solver<Burgers> s(spec, Burgers{});
    CHECK_THROWS_AS(s.compute_dt(), ConfigError);
  }
}

TEST_CASE("ssp_rk3_step on u' = -u") {
  double u = 1, u1 = 0, u2 = 0, w = 0;
  const double h = 0.1;
  int checks = 0;
  ssp_rk3_step(
      u, u1, u2, w, 0.0, h, [](double& in, double, double dt, double& out) { out = in - dt * in; },
      [](double& out, double a, const double& x, double b, const double& y) { out = a * x + b * y; },
      [&](const double&, int) { ++checks; });
  CHECK(u == doctest::Approx(1 - h + h * h / 2 - h * h * h / 6).epsilon(1e-15));
  CHECK(checks == 3);

  double v = 0.3;
  ssp_rk3_step(
      v, u1, u2, w, 0.0, h, [](double& in, double, double, double& out) { out = in; },
      [](double& out, double a, const double& x, double b, const double& y) { out = a * x + b * y; },
      [](const double&, int) {});
  CHECK(v == doctest::Approx(0.3).epsilon(1e-15));
}

TEST_CASE("third-order convergence for smooth advection") {
  double e[2];
  int k = 0;
  for (int n : {64, 128}) {
    ProblemOverrides o;
    o.n1 = o.n2 = n;
    auto spec = make_problem("advection_smooth", o);
    Solver<Advection> s(spec, Advection{});
    e[k++] = s.run().l1_error[0];
  }
  CHECK(std::log2(e[0] / e[1]) >= 2.8);
}

TEST_CASE("zero steps echo the initial data") {
  ProblemOverrides o;
  o.t_end = 0;
  auto spec = make_problem("advection", o);
  Solver<Advection> s(spec, Advection{});
  const auto before = s.state().node.raw();
  const auto rep = s.run();
  CHECK(rep.steps == 0);
  CHECK(rep.t_final == 0);
  for (int j = 0; j <= 100; ++j)
    for (int i = 0; i <= 100; ++i) CHECK(s.state().node(i, j)[0] == before[(j + 2) * 105 + i + 2][0]);
}

TEST_CASE("report carries average and point ranges separately") {
  ProblemOverrides o;
  o.n1 = o.n2 = 20;
  o.t_end = 0.1;
  auto spec = make_problem("advection", o);
  Solver<Advection> s(spec, Advection{});
  const auto rep = s.run();
  REQUIRE(rep.avg_min.size() == 1);
  REQUIRE(rep.point_min.size() == 1);
  CHECK(rep.avg_min[0] >= -1e-12);
  CHECK(rep.point_max[0] <= 1 + 1e-12);
  CHECK(rep.residual_history.size() == std::size_t(rep.steps));
  CHECK(rep.t_final == doctest::Approx(0.1).epsilon(1e-15));
}

TEST_CASE("runs are deterministic") {
  ProblemOverrides o;
  o.n1 = o.n2 = 24;
  o.t_end = 0.05;
  auto spec = make_problem("rp3", o);
  Solver<Euler> a(spec, make_euler(spec)), b(spec, make_euler(spec));
  a.run();
  b.run();
  CHECK(a.state().avg.raw() == b.state().avg.raw());
  CHECK(a.state().node.raw() == b.state().node.raw());
}

TEST_CASE("coarse Sedov keeps positivity at every stage") {
  ProblemOverrides o;
  o.n1 = o.n2 = 31;
  o.t_end = 0.05;
  auto spec = make_problem("sedov", o);
  Solver<Euler> s(spec, make_euler(spec));
  const auto rep = s.run();
  CHECK(rep.min_density > 0);
  CHECK(rep.min_pressure > 0);
}

TEST_CASE("unlimited blast aborts with a located diagnostic") {
  ProblemOverrides o;
  o.n1 = o.n2 = 31;
  o.t_end = 0.05;
  auto spec = make_problem("sedov", o);
  spec.limiter.average = false;
  spec.limiter.point = false;
  Solver<Euler> s(spec, make_euler(spec));
  try {
    s.run();
    FAIL("expected a numerical failure");
  } catch (const NumericsError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("at (") != std::string::npos);
  }
}

TEST_CASE("conservation on periodic domains") {
  for (const char* name : {"advection", "burgers"}) {
    for (bool limit : {true, false}) {
      ProblemOverrides o;
      o.n1 = o.n2 = 32;
      o.t_end = 0.1;
      auto spec = make_problem(name, o);
      spec.limiter.average = spec.limiter.point = limit;
      if (spec.model == ModelKind::Advection) {
        Solver<Advection> s(spec, Advection{});
        const double m0 = total_mass(s);
        s.run();
        CHECK(std::abs(total_mass(s) - m0) <= 1e-13 * std::abs(m0));
      } else {
        Solver<Burgers> s(spec, Burgers{});
        const double m0 = total_mass(s);
        s.run();
        CHECK(std::abs(total_mass(s) - m0) <= 1e-13 * std::abs(m0));
      }
    }
  }
}

TEST_CASE("uniform-mesh BP step passes the per-point constraint") {
  // every point LLF update is a convex combination when
  // dt * (alpha_x/dx + alpha_y/dy) <= 1/2 at each point
  ProblemOverrides o;
  o.n1 = o.n2 = 40;
  auto spec = make_problem("rp3", o);
  Solver<Euler> s(spec, make_euler(spec));
  fill_ghosts(s.state(), s.grid(), spec, 0.0);
  const double dt = s.compute_dt();
  const Euler m = make_euler(spec);
  const auto& g = s.grid();
  const auto& d = s.state();
  for (int J = 0; J <= g.n2; ++J)
    for (int I = 0; I <= g.n1; ++I) {
      double ax = 0, ay = 0;
      for (int k = -1; k <= 1; ++k) {
        ax = std::max(ax, m.spectral_radius(d.node(I + k, J), 0));
        ay = std::max(ay, m.spectral_radius(d.node(I, J + k), 1));
      }
      CHECK(dt * (ax / g.dx + ay / g.dy) <= 0.5 + 1e-14);
    }
}
