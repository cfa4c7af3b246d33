#pragma once

#include "qladder/systems.hpp"
#include "qladder/types.hpp"

namespace qladder::analytic {

/// Kummer-function amplitudes of the Jacobi family (covers the alpha = -beta
/// case as well). The spec must come from jacobi_system, gegenbauer_system
/// or jacobi_antisymmetric_system with level_count > n_max.
AmplitudeTrajectory jacobi_amplitudes(const SystemSpec& spec,
                                      const TimeGrid& times,
                                      std::size_t n_max);

/// Elementary-function amplitudes of the closed N+1-level ladder with
/// uniform detuning epsilon:
///   a_n = i^n sqrt(C(N,n)) S^n (C + i (sqrt(N) eps / 2) S)^(N-n)
///         e^{i t eps (n - N/2)},
/// S = sin(w t)/sqrt(1+sigma), C = cos(w t), w = sqrt((1+sigma)/N),
/// sigma = N eps^2 / 4. Populations are binomial in y = S^2, <n> = N y.
AmplitudeTrajectory krawtchouk_amplitudes(int N, double epsilon,
                                          const TimeGrid& times);

double krawtchouk_y(int N, double epsilon, double t);

/// Krawtchouk-polynomial amplitudes of the degenerate-level system.
Trajectory2d degenerate_krawtchouk_amplitudes(const DegenerateSystemSpec& spec,
                                              const TimeGrid& times);

/// Half-integer-Bessel amplitudes of the Christoffel-Legendre family.
AmplitudeTrajectory christoffel_legendre_amplitudes(const SystemSpec& spec,
                                                    const TimeGrid& times,
                                                    std::size_t n_max);

}  // namespace qladder::analytic
