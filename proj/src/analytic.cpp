#include "qladder/analytic.hpp"

#include <cmath>

#include "qladder/specfun.hpp"

namespace qladder::analytic {

namespace {

Complex ipow(std::size_t n) {
  switch (n % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

Complex cis(double x) { return {std::cos(x), std::sin(x)}; }

void attach_open_tail(AmplitudeTrajectory& traj) {
  double tail = 0.0;
  for (std::size_t ti = 0; ti < traj.times.size(); ++ti)
    tail = std::max(tail, 1.0 - traj.norm_sum(ti));
  traj.truncation_tail = tail;
}

}  // namespace

AmplitudeTrajectory jacobi_amplitudes(const SystemSpec& spec,
                                      const TimeGrid& times,
                                      std::size_t n_max) {
  double alpha, beta;
  if (spec.family == Family::Jacobi) {
    alpha = spec.param("alpha");
    beta = spec.param("beta");
  } else if (spec.family == Family::JacobiAntisymmetric) {
    alpha = spec.param("alpha");
    beta = -alpha;
  } else {
    throw std::domain_error("jacobi_amplitudes: spec is not a Jacobi-type family");
  }
  if (n_max >= spec.level_count)
    throw std::domain_error("jacobi_amplitudes: n_max exceeds the spec truncation");

  const double r = spec.scale;
  // log of the square-bracket prefactor, assembled from log-gammas so the
  // Pochhammer products cannot overflow at large n.
  std::vector<long double> half_log(n_max + 1, 0.0L);
  for (std::size_t n = 1; n <= n_max; ++n) {
    const long double nl = static_cast<long double>(n);
    const long double al = alpha, be = beta;
    long double lg = (lgammal(al + 1.0L + nl) - lgammal(al + 1.0L)) +
                     (lgammal(be + 1.0L + nl) - lgammal(be + 1.0L)) -
                     (lgammal(al + be + 2.0L + 2.0L * nl) -
                      lgammal(al + be + 2.0L)) -
                     (lgammal(al + be + 1.0L + 2.0L * nl) -
                      lgammal(al + be + 1.0L + nl)) -
                     lgammal(nl + 1.0L);
    half_log[n] = 0.5L * lg;
  }

  AmplitudeTrajectory traj;
  traj.times = times;
  traj.amplitudes.resize(times.size());
  for (std::size_t ti = 0; ti < times.size(); ++ti) {
    const double t = times.points[ti];
    auto& row = traj.amplitudes[ti];
    row.resize(n_max + 1);
    if (t == 0.0) {
      for (std::size_t n = 0; n <= n_max; ++n)
        row[n] = (n == 0) ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
      continue;
    }
    const long double log2rt = std::log(2.0L * static_cast<long double>(r) *
                                        static_cast<long double>(t));
    for (std::size_t n = 0; n <= n_max; ++n) {
      const double mag = static_cast<double>(
          expl(static_cast<long double>(n) * log2rt + half_log[n]));
      const Complex f = specfun::kummer_1f1(
          static_cast<double>(n) + alpha + 1.0,
          2.0 * static_cast<double>(n) + alpha + beta + 2.0,
          Complex(0.0, -2.0 * r * t));
      row[n] = ipow(n) * mag * cis(t * (r + spec.phases[n])) * f;
    }
  }
  attach_open_tail(traj);
  return traj;
}

double krawtchouk_y(int N, double epsilon, double t) {
  const double sigma = N * epsilon * epsilon / 4.0;
  const double w = std::sqrt((1.0 + sigma) / N);
  const double s = std::sin(w * t);
  return s * s / (1.0 + sigma);
}

AmplitudeTrajectory krawtchouk_amplitudes(int N, double epsilon,
                                          const TimeGrid& times) {
  if (N < 1) throw std::domain_error("krawtchouk_amplitudes: N must be >= 1");
  const double sigma = N * epsilon * epsilon / 4.0;
  const double w = std::sqrt((1.0 + sigma) / N);

  AmplitudeTrajectory traj;
  traj.times = times;
  traj.amplitudes.resize(times.size());
  for (std::size_t ti = 0; ti < times.size(); ++ti) {
    const double t = times.points[ti];
    // Signed branches of the printed square roots: S and C carry the sign
    // of sin/cos, which the population formula cannot see but the complex
    // amplitudes require.
    const double S = std::sin(w * t) / std::sqrt(1.0 + sigma);
    const double C = std::cos(w * t);
    const Complex z(C, 0.5 * std::sqrt(static_cast<double>(N)) * epsilon * S);
    auto& row = traj.amplitudes[ti];
    row.resize(N + 1);
    for (int n = 0; n <= N; ++n) {
      Complex zp(1.0, 0.0);
      for (int k = 0; k < N - n; ++k) zp *= z;
      row[n] = ipow(n) * std::sqrt(specfun::binomial(N, n)) * std::pow(S, n) *
               zp * cis(t * epsilon * (n - 0.5 * N));
    }
  }
  return traj;
}

Trajectory2d degenerate_krawtchouk_amplitudes(const DegenerateSystemSpec& spec,
                                              const TimeGrid& times) {
  const int N = spec.n_transitions, M = spec.m_transitions;
  const double sqN = std::sqrt(static_cast<double>(N));
  const double sqM = std::sqrt(static_cast<double>(M));

  Trajectory2d traj;
  traj.times = times;
  traj.n_levels = static_cast<std::size_t>(N) + 1;
  traj.m_levels = static_cast<std::size_t>(M) + 1;
  traj.amplitudes.resize(times.size());
  for (std::size_t ti = 0; ti < times.size(); ++ti) {
    const double t = times.points[ti];
    auto& row = traj.amplitudes[ti];
    row.resize(traj.n_levels * traj.m_levels);
    for (int n = 0; n <= N; ++n) {
      for (int m = 0; m <= M; ++m) {
        double sum = 0.0;
        for (int j = 0; j <= M; ++j) {
          const double tau =
              t / sqN * (spec.omega + spec.omega_prime * (2.0 * j - M) / sqM);
          sum += specfun::krawtchouk_poly(m, j, M, 0.5) *
                 specfun::binomial(M, j) * std::pow(std::sin(tau), n) *
                 std::pow(std::cos(tau), N - n);
        }
        row[static_cast<std::size_t>(n) * traj.m_levels + m] =
            ipow(n) / std::pow(2.0, M - m) *
            std::sqrt(specfun::binomial(N, n) / specfun::binomial(M, m)) * sum;
      }
    }
  }
  return traj;
}

AmplitudeTrajectory christoffel_legendre_amplitudes(const SystemSpec& spec,
                                                    const TimeGrid& times,
                                                    std::size_t n_max) {
  if (spec.family != Family::ChristoffelLegendre)
    throw std::domain_error(
        "christoffel_legendre_amplitudes: spec is not a Christoffel-Legendre family");
  if (n_max >= spec.level_count)
    throw std::domain_error(
        "christoffel_legendre_amplitudes: n_max exceeds the spec truncation");

  const double b = spec.param("b");
  const double r = spec.scale;

  // kappa_n = P_{n+1}(b)/P_n(b); d_0/d_n = sqrt((n+1) kappa_n / b).
  std::vector<double> kappa(n_max + 1), d0_over_dn(n_max + 1);
  kappa[0] = b;
  d0_over_dn[0] = 1.0;
  for (std::size_t n = 1; n <= n_max; ++n) {
    kappa[n] = ((2.0 * n + 1.0) * b - n / kappa[n - 1]) / (n + 1.0);
    d0_over_dn[n] = std::sqrt((n + 1.0) * kappa[n] / b);
  }

  AmplitudeTrajectory traj;
  traj.times = times;
  traj.amplitudes.resize(times.size());
  for (std::size_t ti = 0; ti < times.size(); ++ti) {
    const double t = times.points[ti];
    auto& row = traj.amplitudes[ti];
    row.resize(n_max + 1);
    // sqrt(pi/2) (rt)^{-1/2} J_{n+1/2}(rt) is just the spherical j_n(rt);
    // the series branch inside sph_bessel_array covers rt -> 0.
    const auto j = specfun::sph_bessel_array(static_cast<int>(n_max) + 1, r * t);
    for (std::size_t n = 0; n <= n_max; ++n)
      row[n] = ipow(n) * d0_over_dn[n] * cis(spec.phases[n] * t) *
               Complex(j[n], -j[n + 1] / kappa[n]);
  }
  attach_open_tail(traj);
  return traj;
}

}  // namespace qladder::analytic
