#include "osc/model.hpp"

#include <cmath>
#include <string>

#include "osc/error.hpp"

namespace osc {

std::string_view to_string(ProblemLabel label) {
  switch (label) {
    case ProblemLabel::Raw: return "raw";
    case ProblemLabel::ShiftedQuadratic: return "shifted-quadratic";
    case ProblemLabel::Cubic: return "cubic";
    case ProblemLabel::NormalizedCubic: return "normalized-cubic";
  }
  return "raw";
}

ProblemLabel parse_label(std::string_view text) {
  if (text == "raw") return ProblemLabel::Raw;
  if (text == "shifted-quadratic") return ProblemLabel::ShiftedQuadratic;
  if (text == "cubic") return ProblemLabel::Cubic;
  if (text == "normalized-cubic") return ProblemLabel::NormalizedCubic;
  throw Error(ErrorKind::InvalidArgument,
              "unknown problem label '" + std::string(text) + "'");
}

double GeneralProblem::force(double v) const {
  const double v2 = v * v;
  return A + B * v + C * v2 + D * (v * v2);
}

double GeneralProblem::force_slope(double v) const {
  return B + 2.0 * C * v + 3.0 * D * v * v;
}

namespace {

void require_finite(std::initializer_list<double> values, const char* where) {
  for (double x : values) {
    if (!std::isfinite(x)) {
      throw Error(ErrorKind::InvalidArgument,
                  std::string(where) + ": parameters must be finite");
    }
  }
}

}  // namespace

GeneralProblem make_quadratic_shifted(double omega, double beta, double a0) {
  require_finite({omega, beta, a0}, "make_quadratic_shifted");
  if (!(omega > 0.0)) {
    throw Error(ErrorKind::InvalidArgument,
                "make_quadratic_shifted: omega must be positive");
  }
  if (beta == 0.0) {
    throw Error(ErrorKind::DegenerateProblem,
                "make_quadratic_shifted: beta = 0 makes the shift singular; "
                "use the raw form");
  }
  const double offset = (omega * omega) / (2.0 * beta);
  GeneralProblem p;
  // beta * offset^2 equals w^4/(4 beta); written this way the equilibrium
  // v0 = -offset gives force(v0) == 0 exactly.
  p.A = beta * (offset * offset);
  p.C = -beta;
  p.v0 = a0 + offset;
  p.label = ProblemLabel::ShiftedQuadratic;
  p.shift = ShiftRecord{offset, 1.0, 1.0};
  return p;
}

GeneralProblem make_raw(double omega, double beta2, double beta3, double a0) {
  require_finite({omega, beta2, beta3, a0}, "make_raw");
  if (omega < 0.0) {
    throw Error(ErrorKind::InvalidArgument, "make_raw: omega must be >= 0");
  }
  if (omega == 0.0 && beta2 == 0.0 && beta3 == 0.0) {
    throw Error(ErrorKind::DegenerateProblem,
                "make_raw: omega, beta2 and beta3 are all zero");
  }
  GeneralProblem p;
  p.B = -omega * omega;
  p.C = -beta2;
  p.D = -beta3;
  p.v0 = a0;
  return p;
}

GeneralProblem make_cubic(double omega, double beta, double a0) {
  GeneralProblem p = make_raw(omega, 0.0, beta, a0);
  p.label = ProblemLabel::Cubic;
  return p;
}

GeneralProblem make_cubic_normalized(double omega, double beta, double a0) {
  require_finite({omega, beta, a0}, "make_cubic_normalized");
  if (!(omega > 0.0)) {
    throw Error(ErrorKind::InvalidArgument,
                "make_cubic_normalized: omega must be positive");
  }
  if (a0 == 0.0) {
    throw Error(ErrorKind::DegenerateProblem,
                "make_cubic_normalized: a0 = 0 cannot be normalized");
  }
  GeneralProblem p;
  p.B = -1.0;
  p.D = -(beta * a0 * a0 / (omega * omega));
  p.v0 = 1.0;
  p.label = ProblemLabel::NormalizedCubic;
  p.shift = ShiftRecord{0.0, a0, omega};
  return p;
}

double unshift(double value, const ShiftRecord& shift) {
  return shift.scale * value - shift.offset;
}

double physical_time(double t, const ShiftRecord& shift) {
  return t / shift.time_scale;
}

}  // namespace osc
