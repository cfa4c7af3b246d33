#pragma once

#include "qladder/systems.hpp"
#include "qladder/types.hpp"

namespace qladder::oracle {

struct IntegratorConfig {
  double step = 0.02;        // initial RK4 step (halved until converged)
  double tolerance = 1e-9;   // max-norm difference between successive halvings
  std::size_t max_steps = 20'000'000;  // total step budget across halvings
};

/// Fixed-step RK4 on the interaction-picture ladder equation
///   da_n/dt = i [ f_{n+1} e^{-i eps_{n+1} t} a_{n+1} + f_n e^{+i eps_n t} a_{n-1} ]
/// from a_n(0) = delta_{n,0}, sampled on the grid. The step is halved until
/// two successive solutions agree to the configured tolerance.
AmplitudeTrajectory integrate_ladder(const SystemSpec& spec,
                                     const TimeGrid& times,
                                     const IntegratorConfig& config = {});

/// Single fixed-step RK4 pass with no halving; used by the convergence
/// self-test (global error should shrink ~16x per step halving).
AmplitudeTrajectory integrate_ladder_fixed_step(const SystemSpec& spec,
                                                const TimeGrid& times,
                                                double step);

/// Same scheme on the (N+1)(M+1)-dimensional degenerate-level system with
/// selection rules dn = +-1, dm = 0, +-1.
Trajectory2d integrate_degenerate(const DegenerateSystemSpec& spec,
                                  const TimeGrid& times,
                                  const IntegratorConfig& config = {});

}  // namespace qladder::oracle
