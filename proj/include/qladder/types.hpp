#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace qladder {

using Complex = std::complex<double>;

/// Thrown when a numerical routine fails to converge; carries diagnostics.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Strictly increasing grid of dimensionless times, first point >= 0.
struct TimeGrid {
  std::vector<double> points;

  TimeGrid() = default;
  explicit TimeGrid(std::vector<double> pts) : points(std::move(pts)) {
    if (points.empty()) throw std::domain_error("TimeGrid: empty grid");
    if (points.front() < 0.0)
      throw std::domain_error("TimeGrid: negative start time");
    for (std::size_t i = 1; i < points.size(); ++i)
      if (points[i] <= points[i - 1])
        throw std::domain_error("TimeGrid: points must be strictly increasing");
  }

  static TimeGrid linspace(double start, double stop, std::size_t n) {
    if (n < 2) throw std::domain_error("TimeGrid: need at least 2 points");
    std::vector<double> pts(n);
    for (std::size_t i = 0; i < n; ++i)
      pts[i] = start + (stop - start) * static_cast<double>(i) /
                           static_cast<double>(n - 1);
    return TimeGrid(std::move(pts));
  }

  std::size_t size() const { return points.size(); }
};

/// Complex amplitudes a_n(t) on a time grid, one row per grid point.
struct AmplitudeTrajectory {
  TimeGrid times;
  std::vector<std::vector<Complex>> amplitudes;  // [time][level]
  // Largest 1 - sum rho over the grid; zero for closed systems.
  double truncation_tail = 0.0;

  std::size_t level_count() const {
    return amplitudes.empty() ? 0 : amplitudes.front().size();
  }

  std::vector<double> populations(std::size_t ti) const {
    std::vector<double> rho(amplitudes[ti].size());
    for (std::size_t n = 0; n < rho.size(); ++n)
      rho[n] = std::norm(amplitudes[ti][n]);
    return rho;
  }

  double norm_sum(std::size_t ti) const {
    double s = 0.0;
    for (const Complex& a : amplitudes[ti]) s += std::norm(a);
    return s;
  }

  double mean_excitation(std::size_t ti) const {
    double s = 0.0;
    for (std::size_t n = 0; n < amplitudes[ti].size(); ++n)
      s += static_cast<double>(n) * std::norm(amplitudes[ti][n]);
    return s;
  }
};

/// Amplitudes a_{n,m}(t) of a two-index (degenerate-level) ladder,
/// stored row-major as a[n * (M+1) + m].
struct Trajectory2d {
  TimeGrid times;
  std::size_t n_levels = 0;  // N+1
  std::size_t m_levels = 0;  // M+1
  std::vector<std::vector<Complex>> amplitudes;

  Complex at(std::size_t ti, std::size_t n, std::size_t m) const {
    return amplitudes[ti][n * m_levels + m];
  }

  double norm_sum(std::size_t ti) const {
    double s = 0.0;
    for (const Complex& a : amplitudes[ti]) s += std::norm(a);
    return s;
  }
};

}  // namespace qladder
