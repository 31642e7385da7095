#pragma once

#include <cstddef>
#include <vector>

#include "osc/model.hpp"

namespace osc {

struct StepStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t rhs_evaluations = 0;
};

/// Samples of v and v' at equally spaced times 0..t_end.
struct Trajectory {
  std::vector<double> times;
  std::vector<double> values;
  std::vector<double> velocities;
  double tol = 0.0;
  StepStats stats{};
};

/// Dormand-Prince 5(4) with PI step-size control and the method's
/// continuous extension for output at `samples` equally spaced times
/// (including 0 and t_end). `tol` is used as both the relative and absolute
/// tolerance and must lie in [1e-13, 1e-3].
///
/// Throws StepUnderflow when the step size collapses (escaping or stiff
/// trajectory) and NonFinite when the state overflows.
Trajectory integrate(const GeneralProblem& problem, double t_end, double tol,
                     std::size_t samples);

/// Amplitudes at interior velocity sign changes, each refined by cubic
/// Hermite interpolation between the bracketing samples. Throws NoTurning
/// when the velocity never changes sign.
std::vector<double> detect_turning_points(const Trajectory& traj);

/// max_i |v'_i^2 / 2 + V(v_i) - E_0|.
double energy_drift(const GeneralProblem& problem, const Trajectory& traj);

}  // namespace osc
