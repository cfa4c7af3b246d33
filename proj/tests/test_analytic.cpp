#include <cmath>
#include <complex>

#include <doctest.h>

#include "qladder/analytic.hpp"
#include "qladder/oracle.hpp"
#include "qladder/systems.hpp"

using namespace qladder;

namespace {

// Ascending-series Bessel J_n, independent of the library routine; good to
// ~1e-11 for the |x| <= 10 used here.
double bessel_series(int n, double x) {
  double term = std::pow(0.5 * x, n);
  for (int k = 2; k <= n; ++k) term /= k;
  double sum = term;
  for (int k = 1; k < 200; ++k) {
    term *= -0.25 * x * x / (static_cast<double>(k) * (n + k));
    sum += term;
    if (std::abs(term) < 1e-18 * (std::abs(sum) + 1e-300)) break;
  }
  return sum;
}

double max_row_diff(const std::vector<Complex>& a, const std::vector<Complex>& b,
                    std::size_t count) {
  double m = 0.0;
  for (std::size_t n = 0; n < count; ++n) m = std::max(m, std::abs(a[n] - b[n]));
  return m;
}

}  // namespace

TEST_CASE("all evaluators start in the ground level") {
  auto grid = TimeGrid::linspace(0.0, 1.0, 2);
  auto check_delta = [](const std::vector<Complex>& row) {
    CHECK(std::abs(row[0] - Complex(1.0, 0.0)) < 1e-12);
    for (std::size_t n = 1; n < row.size(); ++n) CHECK(std::abs(row[n]) < 1e-12);
  };
  check_delta(analytic::jacobi_amplitudes(jacobi_system(1.0, 2.0, 20), grid, 10)
                  .amplitudes[0]);
  check_delta(analytic::jacobi_amplitudes(jacobi_antisymmetric_system(0.25, 20),
                                          grid, 10)
                  .amplitudes[0]);
  check_delta(analytic::krawtchouk_amplitudes(6, 0.4, grid).amplitudes[0]);
  check_delta(
      analytic::christoffel_legendre_amplitudes(christoffel_legendre_system(2.0, 20),
                                                grid, 15)
          .amplitudes[0]);
  auto deg = analytic::degenerate_krawtchouk_amplitudes(
      DegenerateSystemSpec(2, 2, 1.0, 0.5), grid);
  CHECK(std::abs(deg.at(0, 0, 0) - Complex(1.0, 0.0)) < 1e-12);
  CHECK(std::abs(deg.norm_sum(0) - 1.0) < 1e-12);
}

TEST_CASE("Krawtchouk amplitudes: exact unitarity and binomial moments") {
  auto grid = TimeGrid::linspace(0.0, 20.0, 101);
  for (int N : {1, 4, 12}) {
    for (double eps : {0.0, 0.3, 1.0}) {
      auto traj = analytic::krawtchouk_amplitudes(N, eps, grid);
      for (std::size_t ti = 0; ti < grid.size(); ++ti) {
        CHECK(std::abs(traj.norm_sum(ti) - 1.0) < 1e-12);
        const double y = analytic::krawtchouk_y(N, eps, grid.points[ti]);
        CHECK(std::abs(traj.mean_excitation(ti) - N * y) < 1e-12);
      }
    }
  }
}

TEST_CASE("resonant Krawtchouk reaches full inversion at t = (pi/2) sqrt(N)") {
  {
    auto traj = analytic::krawtchouk_amplitudes(
        1, 0.0, TimeGrid({0.0, 0.5 * M_PI}));
    CHECK(std::norm(traj.amplitudes[1][1]) == doctest::Approx(1.0).epsilon(1e-12));
  }
  {
    auto traj =
        analytic::krawtchouk_amplitudes(4, 0.0, TimeGrid({0.0, M_PI}));
    CHECK(std::norm(traj.amplitudes[1][4]) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("Krawtchouk amplitudes agree with direct integration") {
  auto grid = TimeGrid::linspace(0.0, 10.0, 41);
  for (double eps : {0.3, -0.5}) {
    auto spec = krawtchouk_system(5, eps);
    auto ode = oracle::integrate_ladder(spec, grid);
    auto closed = analytic::krawtchouk_amplitudes(5, eps, grid);
    for (std::size_t ti = 0; ti < grid.size(); ++ti)
      CHECK(max_row_diff(ode.amplitudes[ti], closed.amplitudes[ti], 6) < 1e-7);
  }
}

TEST_CASE("half-integer antisymmetric ladder has Bessel populations") {
  // alpha = -beta = 1/2: rho_n(t) = J_n(2t)^2 + J_{n+1}(2t)^2
  auto spec = jacobi_antisymmetric_system(0.5, 40);
  auto grid = TimeGrid({0.5, 1.0, 2.0, 5.0});
  auto traj = analytic::jacobi_amplitudes(spec, grid, 30);
  for (std::size_t ti = 0; ti < grid.size(); ++ti) {
    const double x = 2.0 * grid.points[ti];
    for (int n = 0; n <= 10; ++n) {
      const double jn = bessel_series(n, x), jn1 = bessel_series(n + 1, x);
      CHECK(std::abs(std::norm(traj.amplitudes[ti][n]) - (jn * jn + jn1 * jn1)) <
            1e-8);
    }
  }
  CHECK(std::norm(traj.amplitudes[1][0]) == doctest::Approx(0.3827327).epsilon(1e-5));
}

TEST_CASE("Jacobi Kummer amplitudes agree with direct integration") {
  auto grid = TimeGrid({0.0, 0.35, 0.7});
  auto spec = jacobi_system(1.0, 2.0, 48);
  auto ode = oracle::integrate_ladder(spec, grid);
  auto closed = analytic::jacobi_amplitudes(spec, grid, 20);
  for (std::size_t ti = 0; ti < grid.size(); ++ti)
    CHECK(max_row_diff(ode.amplitudes[ti], closed.amplitudes[ti], 12) < 1e-6);
}

TEST_CASE("Christoffel-Legendre amplitudes agree with direct integration") {
  auto grid = TimeGrid({0.0, 1.0, 2.0});
  auto spec = christoffel_legendre_system(1.5, 60);
  auto ode = oracle::integrate_ladder(spec, grid);
  auto closed = analytic::christoffel_legendre_amplitudes(spec, grid, 30);
  for (std::size_t ti = 0; ti < grid.size(); ++ti)
    CHECK(max_row_diff(ode.amplitudes[ti], closed.amplitudes[ti], 12) < 1e-6);
}

TEST_CASE("Christoffel-Legendre ground amplitude is continuous at small t") {
  auto spec = christoffel_legendre_system(3.0, 20);
  auto grid = TimeGrid({1e-8, 1e-4, 1e-2});
  auto traj = analytic::christoffel_legendre_amplitudes(spec, grid, 10);
  CHECK(std::abs(traj.amplitudes[0][0] - Complex(1.0, 0.0)) < 1e-6);
  CHECK(std::abs(traj.amplitudes[1][0]) <= 1.0 + 1e-12);
}

TEST_CASE("truncation tail shrinks as the cutoff grows") {
  auto grid = TimeGrid({5.0});
  auto spec = christoffel_legendre_system(1.0, 100);
  double prev = 1.0;
  for (std::size_t n_max : {10u, 16u, 20u}) {
    auto traj = analytic::christoffel_legendre_amplitudes(spec, grid, n_max);
    CHECK(traj.truncation_tail < prev);
    CHECK(traj.truncation_tail >= -1e-12);
    prev = traj.truncation_tail;
  }
  CHECK(prev < 1e-10);
}

TEST_CASE("degenerate Krawtchouk amplitudes agree with direct integration") {
  auto grid = TimeGrid({0.0, 0.8, 2.0});
  for (auto [N, M] : {std::pair{1, 1}, std::pair{2, 1}}) {
    DegenerateSystemSpec spec(N, M, 1.0, 0.5);
    auto ode = oracle::integrate_degenerate(spec, grid);
    auto closed = analytic::degenerate_krawtchouk_amplitudes(spec, grid);
    for (std::size_t ti = 0; ti < grid.size(); ++ti) {
      CHECK(std::abs(closed.norm_sum(ti) - 1.0) < 1e-10);
      for (std::size_t i = 0; i < ode.amplitudes[ti].size(); ++i)
        CHECK(std::abs(ode.amplitudes[ti][i] - closed.amplitudes[ti][i]) < 1e-6);
    }
  }
}

TEST_CASE("degenerate solution with Omega' = 0 factorises") {
  DegenerateSystemSpec spec(3, 2, 1.0, 0.0);
  auto grid = TimeGrid({0.0, 1.3, 2.6});
  auto closed2d = analytic::degenerate_krawtchouk_amplitudes(spec, grid);
  auto closed1d = analytic::krawtchouk_amplitudes(3, 0.0, grid);
  for (std::size_t ti = 0; ti < grid.size(); ++ti)
    for (int n = 0; n <= 3; ++n) {
      double rho = 0.0;
      for (int m = 0; m <= 2; ++m) rho += std::norm(closed2d.at(ti, n, m));
      CHECK(std::abs(rho - std::norm(closed1d.amplitudes[ti][n])) < 1e-12);
    }
}
