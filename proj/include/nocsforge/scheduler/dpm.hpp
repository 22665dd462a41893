#pragma once

#include <functional>

#include "nocsforge/scheduler/schedule.hpp"

namespace nf {

/// Noise-prediction network interface: eps_hat(x_k, k).
using EpsFn = std::function<MapTensor(const MapTensor&, int)>;

/// Deterministic second-order multistep DPM-Solver in log-SNR time,
/// noise-prediction parameterization. Nodes are placed uniformly in
/// lambda between lambda(K-1) and lambda(0), snapped to the discrete
/// schedule; the first update is first-order. Runs the probability-flow
/// ODE from the given initial state (typically a standard normal draw).
MapTensor dpm_solver_solve(const EpsFn& eps_fn, const MapTensor& x_init, int steps,
                           const NoiseSchedule& schedule);

/// Draws the initial noise from rng, solves, clamps to [-1,1] and maps
/// back to a [0,1] NOCS map.
NocsMap dpm_solver_sample(const EpsFn& eps_fn, int height, int width, int steps,
                          const NoiseSchedule& schedule, Rng& rng);

}  // namespace nf
