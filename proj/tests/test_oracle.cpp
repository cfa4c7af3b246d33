#include <cmath>
#include <complex>

#include <doctest.h>

#include "qladder/oracle.hpp"
#include "qladder/systems.hpp"

using namespace qladder;

TEST_CASE("two-level Rabi flopping") {
  auto spec = krawtchouk_system(1, 0.0);
  auto grid = TimeGrid::linspace(0.0, 6.0, 61);
  auto traj = oracle::integrate_ladder(spec, grid);
  for (std::size_t ti = 0; ti < grid.size(); ++ti) {
    const double t = grid.points[ti];
    CHECK(std::norm(traj.amplitudes[ti][1]) ==
          doctest::Approx(std::sin(t) * std::sin(t)).epsilon(1e-8));
    CHECK(std::abs(traj.amplitudes[ti][0].imag()) < 1e-9);
  }
}

TEST_CASE("norm is conserved on a closed ladder") {
  auto spec = krawtchouk_system(5, 0.3);
  auto grid = TimeGrid::linspace(0.0, 10.0, 101);
  auto traj = oracle::integrate_ladder(spec, grid);
  for (std::size_t ti = 0; ti < grid.size(); ++ti)
    CHECK(std::abs(traj.norm_sum(ti) - 1.0) < 1e-9);
}

TEST_CASE("global error shrinks 16x per step halving") {
  auto spec = krawtchouk_system(5, 0.0);
  auto grid = TimeGrid::linspace(0.0, 5.0, 11);
  const double h0 = 0.125;  // divides the 0.5 grid spacing, so halving is exact
  auto ref = oracle::integrate_ladder_fixed_step(spec, grid, h0 / 16.0);

  auto err = [&](double h) {
    auto traj = oracle::integrate_ladder_fixed_step(spec, grid, h);
    double worst = 0.0;
    for (std::size_t ti = 0; ti < grid.size(); ++ti)
      for (std::size_t n = 0; n < traj.amplitudes[ti].size(); ++n)
        worst = std::max(
            worst, std::abs(traj.amplitudes[ti][n] - ref.amplitudes[ti][n]));
    return worst;
  };

  const double e1 = err(h0), e2 = err(h0 / 2.0), e3 = err(h0 / 4.0);
  CHECK(e1 > 1e-10);  // stay above roundoff so the ratios mean something
  CHECK(e3 > 1e-13);
  CHECK(e1 / e2 > 13.0);
  CHECK(e1 / e2 < 19.0);
  CHECK(e2 / e3 > 13.0);
  CHECK(e2 / e3 < 19.0);
}

TEST_CASE("solution is independent of grid refinement") {
  auto spec = jacobi_antisymmetric_system(0.3, 24);
  oracle::IntegratorConfig cfg;
  auto coarse = oracle::integrate_ladder(spec, TimeGrid({0.0, 4.0}), cfg);
  auto fine = oracle::integrate_ladder(spec, TimeGrid({0.0, 2.0, 4.0}), cfg);
  for (std::size_t n = 0; n < spec.level_count; ++n)
    CHECK(std::abs(coarse.amplitudes[1][n] - fine.amplitudes[2][n]) <
          10.0 * cfg.tolerance);
}

TEST_CASE("degenerate system starts at the ground level with unit norm") {
  DegenerateSystemSpec spec(2, 1, 1.0, 0.5);
  auto grid = TimeGrid::linspace(0.0, 5.0, 26);
  auto traj = oracle::integrate_degenerate(spec, grid);
  REQUIRE(traj.n_levels == 3);
  REQUIRE(traj.m_levels == 2);
  CHECK(std::abs(traj.at(0, 0, 0) - Complex(1.0, 0.0)) < 1e-12);
  for (std::size_t ti = 0; ti < grid.size(); ++ti)
    CHECK(std::abs(traj.norm_sum(ti) - 1.0) < 1e-8);
}

TEST_CASE("degenerate system with Omega' = 0 reduces to the plain ladder") {
  DegenerateSystemSpec spec(3, 2, 1.0, 0.0);
  auto grid = TimeGrid::linspace(0.0, 6.0, 31);
  auto traj2d = oracle::integrate_degenerate(spec, grid);
  auto ladder = krawtchouk_system(3, 0.0);
  auto traj1d = oracle::integrate_ladder(ladder, grid);
  for (std::size_t ti = 0; ti < grid.size(); ++ti)
    for (std::size_t n = 0; n <= 3; ++n) {
      // all population stays at m = 0
      double rho_n = 0.0;
      for (std::size_t m = 0; m <= 2; ++m) rho_n += std::norm(traj2d.at(ti, n, m));
      CHECK(std::abs(std::norm(traj2d.at(ti, n, 0)) - rho_n) < 1e-12);
      CHECK(std::abs(rho_n - std::norm(traj1d.amplitudes[ti][n])) < 5e-9);
    }
}
