#include "osc/sin_series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "osc/error.hpp"
#include "osc/power_series.hpp"
#include "recursion.hpp"

namespace osc {

SinPowerSeries compute_sin_coefficients(const GeneralProblem& problem,
                                        double omega_series,
                                        std::size_t n_terms) {
  if (!(omega_series > 0.0) || !std::isfinite(omega_series)) {
    throw Error(ErrorKind::InvalidArgument,
                "series frequency must be positive and finite");
  }
  if (n_terms < 2) {
    throw Error(ErrorKind::InvalidArgument, "n_terms must be at least 2");
  }
  SinPowerSeries out;
  out.omega_series = omega_series;
  out.problem = problem;
  out.coeffs = detail::solve_recursion(problem, n_terms, 1.0,
                                       omega_series * omega_series);
  return out;
}

double evaluate_sin_series(const SinPowerSeries& series, double t) {
  return series::horner(series.coeffs, std::sin(series.omega_series * t));
}

double sin_series_velocity(const SinPowerSeries& series, double t) {
  const double phase = series.omega_series * t;
  const double s = std::sin(phase);
  // d/ds sum c_n s^n
  double slope = 0.0;
  for (std::size_t n = series.coeffs.size(); n-- > 1;) {
    slope = slope * s + static_cast<double>(n) * series.coeffs[n];
  }
  return series.omega_series * std::cos(phase) * slope;
}

double ode_residual(const SinPowerSeries& series, double t) {
  const double phase = series.omega_series * t;
  const double s = std::sin(phase);
  const double c = std::cos(phase);
  const auto& coeffs = series.coeffs;

  // curvature = sum n(n-1) c_n s^{n-2}, stretch = sum n c_n s^n
  double curvature = 0.0;
  for (std::size_t n = coeffs.size(); n-- > 2;) {
    curvature = curvature * s + static_cast<double>(n * (n - 1)) * coeffs[n];
  }
  double stretch = 0.0;
  for (std::size_t n = coeffs.size(); n-- > 1;) {
    stretch = stretch * s + static_cast<double>(n) * coeffs[n];
  }
  stretch *= s;

  const double w2 = series.omega_series * series.omega_series;
  const double accel = w2 * (curvature * c * c - stretch);
  const double v = series::horner(coeffs, s);
  return accel - series.problem.force(v);
}

QuarterPeriodSums quarter_period_sums(const SinPowerSeries& series) {
  series::CompensatedSum s, m;
  for (std::size_t n = 0; n < series.coeffs.size(); ++n) {
    s.add(series.coeffs[n]);
    m.add(static_cast<double>(n) * series.coeffs[n]);
  }
  return {s.value(), m.value()};
}

double tail_growth(std::span<const double> coeffs) {
  if (coeffs.size() < 3) return 0.0;
  const std::size_t n_max = coeffs.size() - 1;
  std::size_t n = n_max / 2;
  if (n % 2 != 0) ++n;
  double worst = 0.0;
  for (; n <= n_max; n += 2) {
    const double c = coeffs[n];
    if (!std::isfinite(c)) return std::numeric_limits<double>::infinity();
    worst = std::max(worst, std::abs(c) * std::pow(static_cast<double>(n), 1.5));
  }
  return worst;
}

}  // namespace osc
