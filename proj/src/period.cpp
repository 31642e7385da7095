#include "osc/period.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "osc/error.hpp"
#include "osc/power_series.hpp"
#include "osc/sin_series.hpp"
#include "polynomial.hpp"

namespace osc {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// E - V(x) as ascending coefficients.
std::vector<double> energy_gap_polynomial(const GeneralProblem& p, double energy) {
  return detail::trimmed(std::array{energy, p.A, p.B / 2.0, p.C / 3.0, p.D / 4.0});
}

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussRule gauss_legendre(std::size_t n) {
  GaussRule rule{std::vector<double>(n), std::vector<double>(n)};
  const double nd = static_cast<double>(n);
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(kPi * (static_cast<double>(i) + 0.75) / (nd + 0.5));
    double dp = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0;
      double p2 = 0.0;
      for (std::size_t j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        const double jd = static_cast<double>(j);
        p1 = ((2.0 * jd - 1.0) * z * p2 - (jd - 1.0) * p3) / jd;
      }
      dp = nd * (z * p1 - p2) / (z * z - 1.0);
      const double step = p1 / dp;
      z -= step;
      if (std::abs(step) <= 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

struct CalibrationOutcome {
  double omega = 0.0;
  double width = 0.0;
};

CalibrationOutcome calibrate(const GeneralProblem& problem, std::size_t n_terms,
                             std::optional<FrequencyBracket> bracket) {
  if (n_terms < 32) {
    throw Error(ErrorKind::InvalidArgument, "calibration needs n_terms >= 32");
  }
  if (!bracket) {
    const double w = period_by_quadrature(problem).omega_pi_over_T;
    bracket = FrequencyBracket{0.5 * w, 2.0 * w};
  }
  if (!(bracket->lo > 0.0) || !(bracket->hi > bracket->lo)) {
    throw Error(ErrorKind::InvalidArgument, "frequency bracket must satisfy 0 < lo < hi");
  }

  auto objective = [&](double w) { return tail_growth_objective(problem, w, n_terms); };

  // Cell midpoints of a logarithmic partition. The bracket centre is never
  // sampled, so a default bracket built from the quadrature period does not
  // leak that period into the result.
  constexpr std::size_t kScan = 64;
  const double log_lo = std::log(bracket->lo);
  const double log_step = (std::log(bracket->hi) - log_lo) / static_cast<double>(kScan);
  std::vector<double> grid(kScan);
  std::vector<double> values(kScan);
  for (std::size_t i = 0; i < kScan; ++i) {
    grid[i] = std::exp(log_lo + log_step * (static_cast<double>(i) + 0.5));
    values[i] = objective(grid[i]);
  }
  const auto best = std::min_element(values.begin(), values.end());
  const auto i_best = static_cast<std::size_t>(best - values.begin());
  if (!std::isfinite(*best)) {
    throw Error(ErrorKind::NoMinimum, "series diverges across the whole bracket");
  }
  if (*best == 0.0) return {grid[i_best], 0.0};
  if (i_best == 0 || i_best == kScan - 1) {
    throw Error(ErrorKind::NoMinimum, "tail growth is monotone over the bracket");
  }

  // Golden-section refinement inside the neighbouring grid cells.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = grid[i_best - 1];
  double b = grid[i_best + 1];
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = objective(x1);
  double f2 = objective(x2);
  double best_x = grid[i_best];
  double best_f = *best;
  auto track = [&](double x, double f) {
    if (f < best_f) {
      best_f = f;
      best_x = x;
    }
  };
  track(x1, f1);
  track(x2, f2);
  for (int iter = 0; iter < 200 && (b - a) > 1e-10 * 0.5 * (a + b); ++iter) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = objective(x1);
      track(x1, f1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = objective(x2);
      track(x2, f2);
    }
    if (best_f == 0.0) break;
  }
  return {best_x, b - a};
}

}  // namespace

std::string_view to_string(PeriodMethod method) {
  switch (method) {
    case PeriodMethod::Quadrature: return "quadrature";
    case PeriodMethod::ClosedForm: return "closed-form";
    case PeriodMethod::Calibration: return "calibration";
  }
  return "quadrature";
}

double potential_energy(const GeneralProblem& p, double x) {
  return -(x * (p.A + x * (p.B / 2.0 + x * (p.C / 3.0 + x * (p.D / 4.0)))));
}

TurningPoints turning_points(const GeneralProblem& problem) {
  const double v0 = problem.v0;
  const double force0 = problem.force(v0);
  const double curvature0 = -problem.force_slope(v0);
  if (std::abs(force0) <= 1e-12 * (1.0 + std::abs(curvature0) * std::abs(v0))) {
    throw Error(ErrorKind::Equilibrium, "initial value is a critical point of the potential");
  }

  const std::vector<double> gap = energy_gap_polynomial(problem, potential_energy(problem, v0));
  if (gap.size() <= 2) {
    throw Error(ErrorKind::NonPeriodic, "constant force: no potential well");
  }
  const std::vector<double> rest = detail::deflate(gap, v0);
  const bool rightwards = force0 > 0.0;

  std::optional<double> other;
  for (double r : detail::real_roots(rest)) {
    if (rightwards && r > v0 && (!other || r < *other)) other = r;
    if (!rightwards && r < v0 && (!other || r > *other)) other = r;
  }
  if (!other) {
    throw Error(ErrorKind::NonPeriodic, "motion is unbounded: no turning point beyond v0");
  }
  const double x = detail::newton_polish(gap, *other);

  const std::vector<double> slope = detail::derivative(gap);
  if (std::abs(series::horner(slope, x)) <= 1e-9 * detail::magnitude(slope, x)) {
    throw Error(ErrorKind::Separatrix, "turning point is a double root: infinite period");
  }
  return rightwards ? TurningPoints{v0, x} : TurningPoints{x, v0};
}

PeriodEstimate period_by_quadrature(const GeneralProblem& problem, std::size_t nodes) {
  const TurningPoints tp = turning_points(problem);
  const std::vector<double> gap =
      energy_gap_polynomial(problem, potential_energy(problem, problem.v0));
  // E - V(x) = (x - x_minus)(x_plus - x) Q(x) with Q > 0 inside the well.
  std::vector<double> q = detail::deflate(detail::deflate(gap, tp.x_minus), tp.x_plus);
  for (double& c : q) c = -c;

  const double mid = 0.5 * (tp.x_minus + tp.x_plus);
  const double half = 0.5 * (tp.x_plus - tp.x_minus);
  auto integrate = [&](std::size_t n) {
    const GaussRule rule = gauss_legendre(n);
    series::CompensatedSum sum;
    for (std::size_t i = 0; i < n; ++i) {
      const double theta = 0.5 * kPi * rule.nodes[i];
      const double qx = series::horner(q, mid + half * std::sin(theta));
      if (!(qx > 0.0)) {
        throw Error(ErrorKind::Separatrix, "energy gap vanishes inside the well");
      }
      sum.add(rule.weights[i] / std::sqrt(2.0 * qx));
    }
    return 2.0 * 0.5 * kPi * sum.value();
  };

  std::size_t n = std::max<std::size_t>(nodes, 2);
  double previous = integrate(n);
  while (true) {
    n *= 2;
    if (n > (std::size_t{1} << 16)) {
      throw Error(ErrorKind::NoConvergence, "Gauss-Legendre doubling exceeded 65536 nodes");
    }
    const double current = integrate(n);
    const double diff = std::abs(current - previous);
    if (diff < 1e-12 * current) {
      return PeriodEstimate{current, kPi / current, tp.x_minus, tp.x_plus,
                            PeriodMethod::Quadrature, diff};
    }
    previous = current;
  }
}

double elliptic_K_agm(double k) {
  if (!(k >= 0.0 && k < 1.0)) {
    throw Error(ErrorKind::ModulusOutOfRange, "elliptic modulus must satisfy 0 <= k < 1");
  }
  double a = 1.0;
  double g = std::sqrt((1.0 - k) * (1.0 + k));
  for (int i = 0; i < 64 && std::abs(a - g) > 2.0 * kEps * a; ++i) {
    const double next = 0.5 * (a + g);
    g = std::sqrt(a * g);
    a = next;
  }
  return kPi / (2.0 * a);
}

PeriodEstimate period_duffing_closed_form(double omega, double beta, double a0) {
  if (!std::isfinite(omega) || !std::isfinite(beta) || !std::isfinite(a0)) {
    throw Error(ErrorKind::InvalidArgument, "closed form: parameters must be finite");
  }
  if (beta < 0.0) {
    throw Error(ErrorKind::OutOfBranch, "closed form covers the hardening branch beta >= 0 only");
  }
  const double lambda2 = omega * omega + beta * a0 * a0;
  if (!(lambda2 > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "closed form needs w^2 + beta a0^2 > 0");
  }
  const double lambda = std::sqrt(lambda2);
  const double k = std::sqrt(beta * a0 * a0 / (2.0 * lambda2));
  const double T = 4.0 * elliptic_K_agm(k) / lambda;
  const double amp = std::abs(a0);
  return PeriodEstimate{T, kPi / T, -amp, amp, PeriodMethod::ClosedForm, 16.0 * kEps * T};
}

double tail_growth_objective(const GeneralProblem& problem, double omega,
                             std::size_t n_terms) {
  try {
    return tail_growth(compute_sin_coefficients(problem, omega, n_terms).coeffs);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NonFinite) return std::numeric_limits<double>::infinity();
    throw;
  }
}

double calibrate_frequency(const GeneralProblem& problem, std::size_t n_terms,
                           std::optional<FrequencyBracket> bracket) {
  return calibrate(problem, n_terms, bracket).omega;
}

PeriodEstimate period_by_calibration(const GeneralProblem& problem, std::size_t n_terms,
                                     std::optional<FrequencyBracket> bracket) {
  const TurningPoints tp = turning_points(problem);
  const CalibrationOutcome c = calibrate(problem, n_terms, bracket);
  const double T = kPi / c.omega;
  return PeriodEstimate{T, kPi / T, tp.x_minus, tp.x_plus, PeriodMethod::Calibration,
                        T * c.width / c.omega};
}

}  // namespace osc
