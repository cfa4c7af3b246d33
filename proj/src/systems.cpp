#include "qladder/systems.hpp"

#include <cmath>

namespace qladder {

const char* family_name(Family f) {
  switch (f) {
    case Family::Jacobi: return "jacobi";
    case Family::JacobiAntisymmetric: return "jacobi-antisymmetric";
    case Family::Krawtchouk: return "krawtchouk";
    case Family::ChristoffelLegendre: return "christoffel-legendre";
    case Family::LegendreFunction: return "legendre-function";
    case Family::Custom: return "custom";
  }
  return "?";
}

DegenerateSystemSpec::DegenerateSystemSpec(int N, int M, double Omega,
                                           double OmegaPrime)
    : n_transitions(N), m_transitions(M), omega(Omega), omega_prime(OmegaPrime) {
  if (N < 1 || M < 1)
    throw std::domain_error("DegenerateSystemSpec: N and M must be >= 1");
  if (Omega < 0.0 || OmegaPrime < 0.0)
    throw std::domain_error("DegenerateSystemSpec: Rabi frequencies must be >= 0");
}

double DegenerateSystemSpec::f(int n) const {
  if (n < 1 || n > n_transitions) return 0.0;
  return std::sqrt(n * (n_transitions - n + 1.0) / n_transitions);
}

double DegenerateSystemSpec::g(int m) const {
  if (m < 1 || m > m_transitions) return 0.0;
  return std::sqrt(m * (m_transitions - m + 1.0) / m_transitions);
}

namespace {

// Diagonal coefficient of the orthonormal Jacobi three-term recurrence.
double jacobi_diag(double al, double be, int n) {
  if (n == 0) return (be - al) / (al + be + 2.0);  // limit form, avoids 0/0
  double s = 2.0 * n + al + be;
  return (be * be - al * al) / (s * (s + 2.0));
}

}  // namespace

SystemSpec jacobi_system(double alpha, double beta, std::size_t n_max) {
  // The published constraint reads beta > 1; beta > -1 is what the scale
  // constant actually requires and what the special cases use.
  if (!(alpha > -1.0) || !(beta > -1.0))
    throw std::domain_error("jacobi_system: requires alpha > -1 and beta > -1");
  if (n_max < 1) throw std::domain_error("jacobi_system: n_max must be >= 1");

  const double r = 0.5 * (alpha + beta + 2.0) *
                   std::sqrt((alpha + beta + 3.0) / ((alpha + 1.0) * (beta + 1.0)));
  SystemSpec spec;
  spec.family = Family::Jacobi;
  spec.params = {{"alpha", alpha}, {"beta", beta}};
  spec.level_count = n_max + 1;
  spec.scale = r;
  spec.closed = false;
  spec.couplings.resize(n_max);
  // f_1 = 1 identically: the factor (1+alpha+beta)/(s-1) cancels, and r is
  // chosen to normalise the rest; the closed form would read 0/0 at
  // alpha+beta = -1.
  spec.couplings[0] = 1.0;
  for (std::size_t i = 2; i <= n_max; ++i) {
    const double n = static_cast<double>(i);
    const double s = 2.0 * n + alpha + beta;
    spec.couplings[i - 1] =
        2.0 * r / s *
        std::sqrt(n * (n + alpha) * (n + beta) * (n + alpha + beta) /
                  ((s - 1.0) * (s + 1.0)));
  }
  spec.phases.resize(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n)
    spec.phases[n] = -r * jacobi_diag(alpha, beta, static_cast<int>(n));
  return spec;
}

SystemSpec gegenbauer_system(double lambda, std::size_t n_max) {
  SystemSpec spec = jacobi_system(lambda - 0.5, lambda - 0.5, n_max);
  spec.params["lambda"] = lambda;
  return spec;
}

SystemSpec jacobi_antisymmetric_system(double alpha, std::size_t n_max) {
  if (!(std::abs(alpha) < 1.0))
    throw std::domain_error("jacobi_antisymmetric_system: requires |alpha| < 1");
  if (n_max < 1)
    throw std::domain_error("jacobi_antisymmetric_system: n_max must be >= 1");

  const double r = std::sqrt(3.0 / (1.0 - alpha * alpha));
  SystemSpec spec;
  spec.family = Family::JacobiAntisymmetric;
  spec.params = {{"alpha", alpha}};
  spec.level_count = n_max + 1;
  spec.scale = r;
  spec.closed = false;
  spec.couplings.resize(n_max);
  for (std::size_t i = 1; i <= n_max; ++i) {
    const double n = static_cast<double>(i);
    spec.couplings[i - 1] =
        std::sqrt(3.0 * (n * n - alpha * alpha) /
                  ((1.0 - alpha * alpha) * (4.0 * n * n - 1.0)));
  }
  spec.phases.assign(n_max + 1, 0.0);
  spec.phases[0] = alpha * std::sqrt(3.0 / (1.0 - alpha * alpha));
  return spec;
}

SystemSpec krawtchouk_system(int N, double epsilon) {
  if (N < 1) throw std::domain_error("krawtchouk_system: N must be >= 1");
  SystemSpec spec;
  spec.family = Family::Krawtchouk;
  spec.params = {{"N", static_cast<double>(N)}, {"epsilon", epsilon}};
  spec.level_count = static_cast<std::size_t>(N) + 1;
  spec.scale = 2.0 / std::sqrt(static_cast<double>(N));
  spec.closed = true;
  spec.couplings.resize(N);
  for (int n = 1; n <= N; ++n)
    spec.couplings[n - 1] = std::sqrt(n * (N - n + 1.0) / N);
  spec.phases.resize(N + 1);
  for (int n = 0; n <= N; ++n)
    spec.phases[n] = epsilon * (n - 0.5 * N);
  return spec;
}

SystemSpec christoffel_legendre_system(double b, std::size_t n_max) {
  if (!(b >= 1.0))
    throw std::domain_error("christoffel_legendre_system: requires b >= 1");
  if (n_max < 1)
    throw std::domain_error("christoffel_legendre_system: n_max must be >= 1");

  // kappa_n = P_{n+1}(b)/P_n(b) by the ratio form of the Legendre
  // recurrence; overflow-free for any b.
  std::vector<double> kappa(n_max + 2);
  kappa[0] = b;
  for (std::size_t n = 1; n <= n_max + 1; ++n)
    kappa[n] = ((2.0 * n + 1.0) * b - n / kappa[n - 1]) / (n + 1.0);

  std::vector<double> d(n_max + 2);
  for (std::size_t n = 0; n <= n_max + 1; ++n)
    d[n] = std::sqrt(2.0 / (n + 1.0) * b / kappa[n]);

  const double r = 3.0 * d[1] / d[0];
  SystemSpec spec;
  spec.family = Family::ChristoffelLegendre;
  spec.params = {{"b", b}};
  spec.level_count = n_max + 1;
  spec.scale = r;
  spec.closed = false;
  spec.couplings.resize(n_max);
  for (std::size_t i = 1; i <= n_max; ++i)
    spec.couplings[i - 1] = r * (i / (2.0 * i + 1.0)) * d[i - 1] / d[i];
  spec.phases.resize(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n)
    spec.phases[n] = r * ((n + 1.0) / (2.0 * n + 1.0) * kappa[n] -
                          (n + 2.0) / (2.0 * n + 3.0) * kappa[n + 1]);
  return spec;
}

SystemSpec legendre_function_system(double lambda, int N) {
  if (!(lambda < -1.0))
    throw std::domain_error("legendre_function_system: requires lambda < -1");
  if (N < 1 || static_cast<double>(N) > std::floor(std::abs(lambda)))
    throw std::domain_error(
        "legendre_function_system: requires 1 <= N <= floor(|lambda|)");

  SystemSpec spec;
  spec.family = Family::LegendreFunction;
  spec.params = {{"lambda", lambda}, {"N", static_cast<double>(N)}};
  spec.level_count = static_cast<std::size_t>(N) + 1;
  spec.scale = 0.0;
  spec.closed = true;
  spec.couplings.resize(N);
  for (int n = 1; n <= N; ++n)
    spec.couplings[n - 1] =
        std::sqrt(std::abs(n * (2.0 * lambda + n - 1.0) * (lambda + 1.0) /
                           (2.0 * (lambda + n - 1.0) * (lambda + n))));
  spec.phases.assign(static_cast<std::size_t>(N) + 1, 0.0);
  return spec;
}

SystemSpec custom_system(const std::vector<double>& couplings,
                         const std::vector<double>& detunings, bool closed) {
  if (couplings.empty())
    throw std::domain_error("custom_system: couplings must be nonempty");
  if (detunings.size() != couplings.size())
    throw std::domain_error(
        "custom_system: detunings length must match couplings length");
  for (double f : couplings)
    if (!(f > 0.0))
      throw std::domain_error("custom_system: couplings must be positive");

  SystemSpec spec;
  spec.family = Family::Custom;
  spec.level_count = couplings.size() + 1;
  spec.scale = 0.0;
  spec.closed = closed;
  spec.couplings = couplings;
  spec.phases.resize(spec.level_count);
  spec.phases[0] = 0.0;
  for (std::size_t n = 1; n < spec.level_count; ++n)
    spec.phases[n] = spec.phases[n - 1] + detunings[n - 1];
  return spec;
}

}  // namespace qladder
