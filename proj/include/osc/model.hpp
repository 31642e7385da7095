#pragma once

#include <string_view>

namespace osc {

enum class ProblemLabel { Raw, ShiftedQuadratic, Cubic, NormalizedCubic };

std::string_view to_string(ProblemLabel label);
ProblemLabel parse_label(std::string_view text);

/// Maps a solution of a transformed problem back to the original variables:
/// u = scale * v - offset, physical time = t / time_scale.
struct ShiftRecord {
  double offset = 0.0;
  double scale = 1.0;
  double time_scale = 1.0;
};

/// Autonomous oscillator v'' = A + B v + C v^2 + D v^3 with v(0) = v0 and
/// v'(0) = 0. The initial velocity is always zero and is not stored.
struct GeneralProblem {
  double A = 0.0;
  double B = 0.0;
  double C = 0.0;
  double D = 0.0;
  double v0 = 0.0;
  ProblemLabel label = ProblemLabel::Raw;
  ShiftRecord shift{};

  /// Right-hand side A + B v + C v^2 + D v^3, summed in power-basis order so
  /// that it agrees bit-for-bit with the n = 0 term of the series recursions.
  double force(double v) const;
  /// d(force)/dv.
  double force_slope(double v) const;
};

/// u'' + w^2 u = -beta u^2 rewritten in v = u + w^2/(2 beta), which
/// removes the linear term: v'' = w^4/(4 beta) - beta v^2.
GeneralProblem make_quadratic_shifted(double omega, double beta, double a0);

/// v'' = -w^2 v - beta2 v^2 - beta3 v^3, no transformation.
GeneralProblem make_raw(double omega, double beta2, double beta3, double a0);

/// make_raw(omega, 0, beta, a0) labelled as the cubic (Duffing) oscillator.
GeneralProblem make_cubic(double omega, double beta, double a0);

/// Cubic oscillator in u = a0 v and t = omega x:
/// v'' + v + (beta a0^2 / omega^2) v^3 = 0, v(0) = 1.
GeneralProblem make_cubic_normalized(double omega, double beta, double a0);

double unshift(double value, const ShiftRecord& shift);
double physical_time(double t, const ShiftRecord& shift);

}  // namespace osc
