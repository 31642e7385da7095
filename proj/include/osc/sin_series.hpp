#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "osc/model.hpp"

namespace osc {

/// v(t) = sum_n c_n sin^n(omega_series t), coefficients c_0..c_N.
///
/// Odd coefficients are exactly zero and c_0 == problem.v0. The series only
/// converges on the whole period when omega_series = pi / T.
struct SinPowerSeries {
  double omega_series = 0.0;
  std::vector<double> coeffs;
  GeneralProblem problem{};

  std::size_t n_terms() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
};

/// Coefficients from substituting the ansatz into the ODE and matching
/// powers of s = sin(omega_series t):
///   2 W^2 c_2 = A + B c_0 + C c_0^2 + D c_0^3,
///   (n+1)(n+2) c_{n+2} = n^2 c_n + (B c_n + C (c*c)_n + D (c*c*c)_n) / W^2.
/// Throws NonFinite (with the offending index) on overflow.
SinPowerSeries compute_sin_coefficients(const GeneralProblem& problem,
                                        double omega_series,
                                        std::size_t n_terms);

double evaluate_sin_series(const SinPowerSeries& series, double t);

/// Time derivative of the truncated series.
double sin_series_velocity(const SinPowerSeries& series, double t);

/// v''(t) - force(v(t)) with v'' taken analytically from the ansatz.
double ode_residual(const SinPowerSeries& series, double t);

/// Sum of c_n and of n c_n: the value of the series at the quarter period
/// (s = 1) and the slope of the series in s there.
struct QuarterPeriodSums {
  double S = 0.0;
  double M = 0.0;
};

QuarterPeriodSums quarter_period_sums(const SinPowerSeries& series);

/// max_{N/2 <= n <= N, n even} |c_n| n^{3/2}. A square-root branch point at
/// s^2 = 1 (wrong frequency) makes this O(1); at the true frequency the tail
/// decays geometrically. Non-finite input gives +inf.
double tail_growth(std::span<const double> coeffs);

}  // namespace osc
