#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "qladder/types.hpp"

namespace qladder {

enum class Family {
  Jacobi,
  JacobiAntisymmetric,
  Krawtchouk,
  ChristoffelLegendre,
  LegendreFunction,
  Custom,
};

const char* family_name(Family f);

/// A multilevel ladder: couplings f_n, phases s_n (detunings eps_n = s_n -
/// s_{n-1}), scale constant r, and whether the ladder closes (f past the top
/// level identically zero). Immutable after construction.
struct SystemSpec {
  Family family = Family::Custom;
  std::map<std::string, double> params;
  std::size_t level_count = 0;     // number of amplitudes
  std::vector<double> couplings;   // couplings[i] = f_{i+1}, i < level_count-1
  std::vector<double> phases;      // s_0 ... s_{level_count-1}
  double scale = 0.0;              // r; 0 when the family defines none
  bool closed = false;

  /// f_n for 1 <= n; returns 0 at n = level_count for closed ladders.
  double coupling(std::size_t n) const {
    if (n == 0 || n > couplings.size()) return 0.0;
    return couplings[n - 1];
  }

  /// eps_n = s_n - s_{n-1}, 1 <= n < level_count.
  double detuning(std::size_t n) const { return phases[n] - phases[n - 1]; }

  double param(const std::string& key) const { return params.at(key); }
};

/// Two-index ladder of degenerate levels driven by two Rabi frequencies.
struct DegenerateSystemSpec {
  int n_transitions = 1;  // N
  int m_transitions = 1;  // M
  double omega = 1.0;
  double omega_prime = 0.0;

  DegenerateSystemSpec(int N, int M, double Omega, double OmegaPrime);

  double f(int n) const;  // sqrt(n (N-n+1) / N), 0 outside [1, N]
  double g(int m) const;  // sqrt(m (M-m+1) / M), 0 outside [1, M]
};

/// Two-parameter family with f_n -> r/2 and detunings decaying ~ n^-3;
/// requires alpha > -1, beta > -1. Truncated at n_max (open ladder).
SystemSpec jacobi_system(double alpha, double beta, std::size_t n_max);

/// alpha = beta = lambda - 1/2 diagonal of the Jacobi family; the
/// equal-Rabi ladder is lambda = 1, the f_1=1, f_n=1/sqrt(2) ladder
/// is lambda = 0.
SystemSpec gegenbauer_system(double lambda, std::size_t n_max);

/// alpha = -beta case: equidistant levels, only the 0<->1 transition
/// detuned (eps_1 = -s_0). Requires |alpha| < 1.
SystemSpec jacobi_antisymmetric_system(double alpha, std::size_t n_max);

/// Closed ladder of N+1 equidistant levels, f_n = sqrt(n(N-n+1)/N),
/// uniform detuning epsilon.
SystemSpec krawtchouk_system(int N, double epsilon);

/// One-parameter open family built on Legendre polynomials with weight
/// factor (b-x)/b; requires b >= 1.
SystemSpec christoffel_legendre_system(double b, std::size_t n_max);

/// Closed resonant ladder from Legendre functions of the first kind;
/// requires lambda < -1 and 1 <= N <= floor(|lambda|).
SystemSpec legendre_function_system(double lambda, int N);

/// Arbitrary ladder from explicit couplings f_1..f_top and per-transition
/// detunings; phases reconstructed with s_0 = 0.
SystemSpec custom_system(const std::vector<double>& couplings,
                         const std::vector<double>& detunings, bool closed);

}  // namespace qladder
