#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "osc/model.hpp"

namespace osc {

enum class PeriodMethod { Quadrature, ClosedForm, Calibration };

std::string_view to_string(PeriodMethod method);

struct PeriodEstimate {
  double T = 0.0;
  double omega_pi_over_T = 0.0;  // pi / T
  double x_minus = 0.0;
  double x_plus = 0.0;
  PeriodMethod method = PeriodMethod::Quadrature;
  double err_estimate = 0.0;
};

struct TurningPoints {
  double x_minus = 0.0;
  double x_plus = 0.0;
};

/// V(x) with v'' = -V'(v): -(A x + B x^2/2 + C x^3/3 + D x^4/4).
double potential_energy(const GeneralProblem& problem, double x);

/// The two roots of V(x) = V(v0) bounding the well that contains v0.
///
/// The known root v0 is deflated out of V(x) - V(v0); the neighbour in the
/// direction of the initial force is found by bracketed bisection on the
/// remaining cubic and Newton-polished against the full polynomial.
///
/// Throws Equilibrium when v0 is a critical point of V, NonPeriodic when the
/// motion is unbounded on that side, and Separatrix when the far turning
/// point is a double root (infinite period).
TurningPoints turning_points(const GeneralProblem& problem);

/// T = 2 int dx / sqrt(2 (E - V(x))) between the turning points, after the
/// substitution x = m + h sin(theta) that removes the endpoint singularities.
/// Gauss-Legendre node count doubles from `nodes` until successive estimates
/// agree to 1e-12 T.
PeriodEstimate period_by_quadrature(const GeneralProblem& problem,
                                    std::size_t nodes = 16);

/// Complete elliptic integral of the first kind by the arithmetic-geometric
/// mean: K(k) = pi / (2 AGM(1, sqrt(1 - k^2))). Requires 0 <= k < 1.
double elliptic_K_agm(double k);

/// Period of u'' + w^2 u + beta u^3 = 0, u(0) = a0, beta >= 0:
/// T = 4 K(k) / lambda, lambda^2 = w^2 + beta a0^2,
/// k^2 = beta a0^2 / (2 lambda^2).
PeriodEstimate period_duffing_closed_form(double omega, double beta, double a0);

struct FrequencyBracket {
  double lo = 0.0;
  double hi = 0.0;
};

/// Orders used by calibrate_frequency when the caller has no preference.
inline constexpr std::size_t kDefaultCalibrationTerms = 256;

/// tail_growth() of the sin-power coefficients at the given frequency;
/// +inf when the recursion overflows.
double tail_growth_objective(const GeneralProblem& problem, double omega,
                             std::size_t n_terms);

/// Series frequency that minimises the coefficient tail growth. A coarse
/// logarithmic scan of the bracket locates the basin, golden-section search
/// refines it to relative width 1e-10. The default bracket is
/// [0.5, 2] * pi / T_quadrature. Throws NoMinimum when the objective is
/// monotone over the bracket.
double calibrate_frequency(const GeneralProblem& problem,
                           std::size_t n_terms = kDefaultCalibrationTerms,
                           std::optional<FrequencyBracket> bracket = std::nullopt);

/// Period reported as pi / calibrate_frequency(...).
PeriodEstimate period_by_calibration(const GeneralProblem& problem,
                                     std::size_t n_terms = kDefaultCalibrationTerms,
                                     std::optional<FrequencyBracket> bracket = std::nullopt);

}  // namespace osc
