#include <doctest.h>

#include <cmath>
#include <random>

#include "af/equations.hpp"

using namespace af;

namespace {

Euler::State euler(double rho, double v1, double v2, double p) { return Euler{}.prim_to_cons(rho, v1, v2, p); }

Euler::State random_admissible(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> lr(-3, 3), v(-5, 5);
  return euler(std::exp(lr(rng)), v(rng), v(rng), std::exp(lr(rng)));
}

}  // namespace

TEST_CASE("physical fluxes") {
  const Euler m;
  const auto f = m.flux(euler(1, 0, 0, 1), 0);
  CHECK(f[0] == 0);
  CHECK(f[1] == doctest::Approx(1));
  CHECK(f[2] == 0);
  CHECK(f[3] == 0);

  CHECK(Advection{}.flux(Advection::State(0.3), 0)[0] == 0.3);
  CHECK(Burgers{}.flux(Burgers::State(2.0), 0)[0] == 2.0);
  CHECK_THROWS_AS(Advection{}.flux(Advection::State(NAN), 0), NumericsError);
  CHECK_THROWS_AS(m.flux(Euler::State(-1, 0, 0, 1), 0), NumericsError);
}

TEST_CASE("spectral radius") {
  // same formula in extended precision
  const EulerModel<long double> ml;
  EulerModel<long double>::State ul;
  ul << 1.0L, 0.0L, 0.0L, 2.5L;
  CHECK(double(ml.spectral_radius(ul, 0)) == doctest::Approx(1.1832159566199232).epsilon(1e-15));
  CHECK(Euler{}.spectral_radius(euler(1, 0, 0, 1), 1) == doctest::Approx(1.1832159566).epsilon(1e-10));

  CHECK(Advection{}.spectral_radius(Advection::State(-7.0), 0) == 1);
  CHECK(Burgers{}.spectral_radius(Burgers::State(-3.0), 0) == 3);
  CHECK_THROWS_AS(Euler{}.spectral_radius(Euler::State(1, 0, 0, -1), 0), NumericsError);
  CHECK_THROWS_AS(Euler{}.spectral_radius(Euler::State(0, 0, 0, 1), 0), NumericsError);
}

TEST_CASE("fvs_split examples") {
  SUBCASE("advection LLF") {
    const auto [fp, fm] = fvs_split(Advection{}, SplittingKind::LLF, Advection::State(1.0), 0, 1.0);
    CHECK(fp[0] == 1.0);
    CHECK(fm[0] == 0.0);
  }
  SUBCASE("SW supersonic") {
    const Euler m;
    const double a = std::sqrt(1.4);
    const auto u = euler(1, 3 * a, 0.2, 1);
    const auto [fp, fm] = fvs_split(m, SplittingKind::SW, u, 0, 0.0);
    const auto f = m.flux(u, 0);
    CHECK(fm.cwiseAbs().maxCoeff() <= 1e-14 * f.cwiseAbs().maxCoeff());
    CHECK((fp - f).cwiseAbs().maxCoeff() <= 1e-13 * f.cwiseAbs().maxCoeff());
  }
  SUBCASE("VH at rest") {
    const Euler m;
    const double a = std::sqrt(1.4), h = 3.5;
    const auto [fp, fm] = fvs_split(m, SplittingKind::VH, euler(1, 0, 0, 1), 0, 0.0);
    CHECK(fp[0] == doctest::Approx(a / 4));
    CHECK(fp[1] == doctest::Approx(0.5));
    CHECK(fp[2] == 0);
    CHECK(fp[3] == doctest::Approx(a * h / 4));
    const Euler::State sum = fp + fm;
    CHECK(std::abs(sum[0]) < 1e-15);
    CHECK(sum[1] == doctest::Approx(1));
    CHECK(std::abs(sum[3]) < 1e-15);
  }
  SUBCASE("VH supersonic is one-sided") {
    const Euler m;
    const auto u = euler(1, -2, 0.3, 0.5);
    const auto [fp, fm] = fvs_split(m, SplittingKind::VH, u, 0, 0.0);
    CHECK(fp.cwiseAbs().maxCoeff() == 0);
    CHECK((fm - m.flux(u, 0)).cwiseAbs().maxCoeff() == 0);
  }
  SUBCASE("VH on a scalar model") {
    CHECK_THROWS_AS(fvs_split(Burgers{}, SplittingKind::VH, Burgers::State(1.0), 0, 1.0), ConfigError);
  }
}

TEST_CASE("VH is continuous across |M| = 1") {
  const Euler m;
  const double a = std::sqrt(1.4);
  for (double sgn : {1.0, -1.0}) {
    const auto below = fvs_split(m, SplittingKind::VH, euler(1, sgn * a * (1 - 1e-9), 0.1, 1), 0, 0.0);
    const auto above = fvs_split(m, SplittingKind::VH, euler(1, sgn * a * (1 + 1e-9), 0.1, 1), 0, 0.0);
    CHECK((below.first - above.first).cwiseAbs().maxCoeff() < 1e-7);
    CHECK((below.second - above.second).cwiseAbs().maxCoeff() < 1e-7);
  }
}

TEST_CASE("splitting consistency on random states") {
  std::mt19937_64 rng(7);
  const Euler m;
  for (int t = 0; t < 1000; ++t) {
    const auto u = random_admissible(rng);
    for (int dir = 0; dir < 2; ++dir) {
      const auto f = m.flux(u, dir);
      const double tol = 1e-12 * (1 + f.cwiseAbs().maxCoeff());
      for (auto kind : {SplittingKind::LLF, SplittingKind::SW, SplittingKind::VH}) {
        const auto [fp, fm] = fvs_split(m, kind, u, dir, m.spectral_radius(u, dir));
        CHECK((fp + fm - f).cwiseAbs().maxCoeff() <= tol);
      }
    }
  }
}

TEST_CASE("SW degenerates for supersonic states") {
  std::mt19937_64 rng(11);
  const Euler m;
  int checked = 0;
  for (int t = 0; t < 2000; ++t) {
    const auto u = random_admissible(rng);
    for (int dir = 0; dir < 2; ++dir) {
      const double vn = u[1 + dir] / u[0];
      if (std::abs(vn) < m.sound_speed(u)) continue;
      ++checked;
      const auto [fp, fm] = fvs_split(m, SplittingKind::SW, u, dir, 0.0);
      const double scale = 1e-14 * m.flux(u, dir).cwiseAbs().maxCoeff();
      CHECK((vn > 0 ? fm : fp).cwiseAbs().maxCoeff() <= scale);
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("LLF split signs for scalar models") {
  const Burgers m;
  for (double u = -2; u <= 2; u += 0.25) {
    const double alpha = 2.0, h = 1e-6;
    const auto d = [&](int sign) {
      const auto [p1, m1] = fvs_split(m, SplittingKind::LLF, Burgers::State(u + h), 0, alpha);
      const auto [p0, m0] = fvs_split(m, SplittingKind::LLF, Burgers::State(u - h), 0, alpha);
      return sign > 0 ? (p1[0] - p0[0]) / (2 * h) : (m1[0] - m0[0]) / (2 * h);
    };
    CHECK(d(+1) >= -1e-9);
    CHECK(d(-1) <= 1e-9);
  }
}

TEST_CASE("rotational symmetry") {
  std::mt19937_64 rng(3);
  const Euler m;
  for (int t = 0; t < 200; ++t) {
    const auto u = random_admissible(rng);
    const auto fy = m.flux(u, 1);
    const auto fx = swap_momentum(m.flux(swap_momentum(u), 0));
    CHECK((fy - fx).cwiseAbs().maxCoeff() <= 1e-13 * (1 + fy.cwiseAbs().maxCoeff()));
    for (auto kind : {SplittingKind::SW, SplittingKind::VH}) {
      const auto a = fvs_split(m, kind, u, 1, 0.0);
      const auto b = fvs_split(m, kind, swap_momentum(u), 0, 0.0);
      CHECK((a.first - swap_momentum(b.first)).cwiseAbs().maxCoeff() == 0);
    }
  }
}

TEST_CASE("primitive round trip") {
  const Euler m;
  auto u = m.prim_to_cons(1, 0, 0, 1);
  CHECK(u[3] == doctest::Approx(2.5));
  u = m.prim_to_cons(0.125, 0, 0, 0.1);
  CHECK(u[0] == 0.125);
  CHECK(u[3] == doctest::Approx(0.25));
  const auto w = m.cons_to_prim(u);
  CHECK(w.p == doctest::Approx(0.1));

  std::mt19937_64 rng(5);
  for (int t = 0; t < 1000; ++t) {
    const auto v = random_admissible(rng);
    const auto back = m.prim_to_cons(m.cons_to_prim(v));
    for (int k = 0; k < 4; ++k) CHECK(std::abs(back[k] - v[k]) <= 1e-14 * (std::abs(v[k]) + std::abs(v[3])));
  }
  CHECK_THROWS_AS(m.cons_to_prim(Euler::State(0, 0, 0, 1)), NumericsError);
}

TEST_CASE("admissibility") {
  const Euler m;
  CHECK(m.is_admissible(Euler::State(1, 0, 0, 2.5), 1e-13));
  CHECK_FALSE(m.is_admissible(Euler::State(1, 2, 0, 2), 1e-13));  // kinetic energy only
  CHECK_FALSE(m.is_admissible(Euler::State(-1, 0, 0, 1), 1e-13));
  CHECK_FALSE(m.is_admissible(Euler::State(1, NAN, 0, 1), 1e-13));
}

TEST_CASE("splitting names") {
  CHECK(parse_splitting("llf") == SplittingKind::LLF);
  CHECK(parse_splitting("SW") == SplittingKind::SW);
  CHECK(parse_splitting("vh") == SplittingKind::VH);
  CHECK_THROWS_AS(parse_splitting("js"), ConfigError);
  CHECK(to_string(SplittingKind::VH) == "vh");
}
