#include "qladder/oracle.hpp"

#include <cmath>
#include <functional>

namespace qladder::oracle {

namespace {

using State = std::vector<Complex>;
using Rhs = std::function<void(double, const State&, State&)>;

// RK4 over the sample grid; each grid interval is split into equal
// substeps no longer than h.
std::vector<State> rk4_on_grid(const Rhs& rhs, State y, const TimeGrid& times,
                               double h, std::size_t& steps_used) {
  std::vector<State> out;
  out.reserve(times.size());
  State k1(y.size()), k2(y.size()), k3(y.size()), k4(y.size()), tmp(y.size());
  double t = times.points.front();
  if (t > 0.0) {
    // March from t = 0 to the first sample point first.
    TimeGrid lead(std::vector<double>{0.0, t});
    auto pre = rk4_on_grid(rhs, std::move(y), lead, h, steps_used);
    y = std::move(pre.back());
  }
  out.push_back(y);
  for (std::size_t gi = 1; gi < times.size(); ++gi) {
    const double t1 = times.points[gi];
    const auto nsub = static_cast<std::size_t>(std::ceil((t1 - t) / h));
    const double dt = (t1 - t) / static_cast<double>(nsub);
    for (std::size_t s = 0; s < nsub; ++s) {
      const double ts = t + dt * static_cast<double>(s);
      rhs(ts, y, k1);
      for (std::size_t i = 0; i < y.size(); ++i)
        tmp[i] = y[i] + 0.5 * dt * k1[i];
      rhs(ts + 0.5 * dt, tmp, k2);
      for (std::size_t i = 0; i < y.size(); ++i)
        tmp[i] = y[i] + 0.5 * dt * k2[i];
      rhs(ts + 0.5 * dt, tmp, k3);
      for (std::size_t i = 0; i < y.size(); ++i) tmp[i] = y[i] + dt * k3[i];
      rhs(ts + dt, tmp, k4);
      for (std::size_t i = 0; i < y.size(); ++i)
        y[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    steps_used += nsub;
    t = t1;
    out.push_back(y);
  }
  return out;
}

double max_diff(const std::vector<State>& a, const std::vector<State>& b) {
  double m = 0.0;
  for (std::size_t ti = 0; ti < a.size(); ++ti)
    for (std::size_t i = 0; i < a[ti].size(); ++i)
      m = std::max(m, std::abs(a[ti][i] - b[ti][i]));
  return m;
}

std::vector<State> integrate_with_halving(const Rhs& rhs, State y0,
                                          const TimeGrid& times,
                                          const IntegratorConfig& cfg) {
  std::size_t used = 0;
  double h = cfg.step;
  auto prev = rk4_on_grid(rhs, y0, times, h, used);
  double last = -1.0, before = -1.0;
  while (true) {
    h *= 0.5;
    auto next = rk4_on_grid(rhs, y0, times, h, used);
    before = last;
    last = max_diff(prev, next);
    if (last < cfg.tolerance) return next;
    if (used > cfg.max_steps)
      throw EvaluationError(
          "oracle: step budget exhausted before convergence; last residuals " +
          std::to_string(before) + ", " + std::to_string(last));
    prev = std::move(next);
  }
}

// Interaction-picture right-hand side: the detuning phases stay explicit
// so the oracle shares no frame transformation with the spectral route.
Rhs make_ladder_rhs(const SystemSpec& spec, std::vector<double> eps) {
  const std::size_t m = spec.level_count;
  return [&spec, eps = std::move(eps), m](double t, const State& a, State& da) {
    for (std::size_t n = 0; n < m; ++n) {
      Complex v(0.0, 0.0);
      if (n + 1 < m) {
        const double ph = -eps[n + 1] * t;
        v += spec.coupling(n + 1) * Complex(std::cos(ph), std::sin(ph)) * a[n + 1];
      }
      if (n >= 1) {
        const double ph = eps[n] * t;
        v += spec.coupling(n) * Complex(std::cos(ph), std::sin(ph)) * a[n - 1];
      }
      da[n] = Complex(0.0, 1.0) * v;
    }
  };
}

std::vector<double> detunings_of(const SystemSpec& spec) {
  std::vector<double> eps(spec.level_count, 0.0);
  for (std::size_t n = 1; n < spec.level_count; ++n) eps[n] = spec.detuning(n);
  return eps;
}

}  // namespace

AmplitudeTrajectory integrate_ladder(const SystemSpec& spec,
                                     const TimeGrid& times,
                                     const IntegratorConfig& config) {
  const std::size_t m = spec.level_count;
  Rhs rhs = make_ladder_rhs(spec, detunings_of(spec));

  State y0(m, Complex(0.0, 0.0));
  y0[0] = Complex(1.0, 0.0);
  auto rows = integrate_with_halving(rhs, std::move(y0), times, config);

  AmplitudeTrajectory traj;
  traj.times = times;
  traj.amplitudes = std::move(rows);
  if (!spec.closed) {
    double tail = 0.0;
    for (std::size_t ti = 0; ti < traj.times.size(); ++ti)
      tail = std::max(tail, 1.0 - traj.norm_sum(ti));
    traj.truncation_tail = tail;
  }
  return traj;
}

AmplitudeTrajectory integrate_ladder_fixed_step(const SystemSpec& spec,
                                                const TimeGrid& times,
                                                double step) {
  Rhs rhs = make_ladder_rhs(spec, detunings_of(spec));
  State y0(spec.level_count, Complex(0.0, 0.0));
  y0[0] = Complex(1.0, 0.0);
  std::size_t used = 0;
  AmplitudeTrajectory traj;
  traj.times = times;
  traj.amplitudes = rk4_on_grid(rhs, std::move(y0), times, step, used);
  return traj;
}

Trajectory2d integrate_degenerate(const DegenerateSystemSpec& spec,
                                  const TimeGrid& times,
                                  const IntegratorConfig& config) {
  const int N = spec.n_transitions, M = spec.m_transitions;
  const std::size_t mm = static_cast<std::size_t>(M) + 1;
  const std::size_t dim = (static_cast<std::size_t>(N) + 1) * mm;
  auto idx = [mm](int n, int m) { return static_cast<std::size_t>(n) * mm + m; };

  Rhs rhs = [&spec, N, M, idx](double /*t*/, const State& a, State& da) {
    for (int n = 0; n <= N; ++n) {
      for (int m = 0; m <= M; ++m) {
        Complex v(0.0, 0.0);
        if (n + 1 <= N) {
          v += spec.omega * spec.f(n + 1) * a[idx(n + 1, m)];
          if (m + 1 <= M)
            v += spec.omega_prime * spec.f(n + 1) * spec.g(m + 1) * a[idx(n + 1, m + 1)];
          if (m - 1 >= 0)
            v += spec.omega_prime * spec.f(n + 1) * spec.g(m) * a[idx(n + 1, m - 1)];
        }
        if (n - 1 >= 0) {
          v += spec.omega * spec.f(n) * a[idx(n - 1, m)];
          if (m + 1 <= M)
            v += spec.omega_prime * spec.f(n) * spec.g(m + 1) * a[idx(n - 1, m + 1)];
          if (m - 1 >= 0)
            v += spec.omega_prime * spec.f(n) * spec.g(m) * a[idx(n - 1, m - 1)];
        }
        da[idx(n, m)] = Complex(0.0, 1.0) * v;
      }
    }
  };

  State y0(dim, Complex(0.0, 0.0));
  y0[0] = Complex(1.0, 0.0);
  auto rows = integrate_with_halving(rhs, std::move(y0), times, config);

  Trajectory2d traj;
  traj.times = times;
  traj.n_levels = static_cast<std::size_t>(N) + 1;
  traj.m_levels = mm;
  traj.amplitudes = std::move(rows);
  return traj;
}

}  // namespace qladder::oracle
