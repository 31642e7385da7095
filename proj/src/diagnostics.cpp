#include "osc/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

#include <fmt/format.h>

#include "osc/error.hpp"
#include "osc/period.hpp"
#include "osc/power_series.hpp"
#include "osc/reference_oracle.hpp"

namespace osc::diagnostics {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr std::size_t kMaxListedViolations = 32;

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rss = 0.0;
};

LineFit least_squares(std::span<const double> x, std::span<const double> y) {
  const auto n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    fit.rss += r * r;
  }
  return fit;
}

void record(ScanReport& report, double point) {
  ++report.violation_count;
  if (report.violations.size() < kMaxListedViolations) report.violations.push_back(point);
}

CheckResult make_check(std::string name) {
  CheckResult c;
  c.name = std::move(name);
  return c;
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

bool check_positivity(const SinPowerSeries& series) {
  return std::all_of(series.coeffs.begin(), series.coeffs.end(),
                     [](double c) { return c >= 0.0; });
}

bool positivity_premise(const SinPowerSeries& series) {
  const auto& p = series.problem;
  const auto& c = series.coeffs;
  return c.size() > 2 && c[0] > 0.0 && c[2] > 0.0 && p.C > 0.0 && p.B == 0.0 && p.D == 0.0;
}

IdentityReport check_sum_identity(const SinPowerSeries& series) {
  const auto& p = series.problem;
  if (p.B != 0.0 || p.D != 0.0) {
    throw Error(ErrorKind::WrongForm, "sum identity needs a problem with B = D = 0");
  }
  const QuarterPeriodSums sums = quarter_period_sums(series);
  const double beta = -p.C;
  const double w2 = series.omega_series * series.omega_series;
  const double c0 = series.coeffs.at(0);
  const double c2 = series.coeffs.size() > 2 ? series.coeffs[2] : 0.0;
  IdentityReport out;
  out.lhs = -beta * sums.S * sums.S + w2 * sums.M;
  out.rhs = -beta * c0 * c0 - 2.0 * w2 * c2;
  out.residual = std::abs(out.lhs - out.rhs);
  out.n_terms = series.n_terms();
  return out;
}

DecayReport fit_decay(std::span<const double> coeffs) {
  std::size_t nonzero = 0;
  for (std::size_t n = 1; n < coeffs.size(); ++n) {
    if (coeffs[n] != 0.0) ++nonzero;
  }
  if (nonzero == 0) {
    throw Error(ErrorKind::AllZero, "series terminates: every c_n with n >= 1 is zero");
  }
  if (nonzero < 16) {
    throw Error(ErrorKind::InvalidArgument, "decay fit needs at least 16 nonzero coefficients");
  }
  const std::size_t n_max = coeffs.size() - 1;
  std::vector<double> log_n, n_val, log_c;
  for (std::size_t n = std::max<std::size_t>(1, n_max / 2); n <= n_max; ++n) {
    if (coeffs[n] == 0.0 || !std::isfinite(coeffs[n])) continue;
    log_n.push_back(std::log(static_cast<double>(n)));
    n_val.push_back(static_cast<double>(n));
    log_c.push_back(std::log(std::abs(coeffs[n])));
  }
  if (log_c.size() < 2) {
    throw Error(ErrorKind::InvalidArgument, "decay fit: fewer than two tail coefficients");
  }
  const LineFit power = least_squares(log_n, log_c);
  const LineFit geometric = least_squares(n_val, log_c);
  DecayReport out;
  out.alpha_fit = -power.slope;
  out.k_fit = std::exp(power.intercept);
  out.geometric_ratio = std::exp(geometric.slope);
  out.geometric_prefactor = std::exp(geometric.intercept);
  out.power_rss = power.rss;
  out.geometric_rss = geometric.rss;
  out.better = geometric.rss < power.rss ? DecayModel::Geometric : DecayModel::PowerLaw;
  out.fit_points = log_c.size();
  return out;
}

DecayReport fit_decay(const SinPowerSeries& series) { return fit_decay(series.coeffs); }

BoundCheck lemma2_bound(std::span<const double> coeffs, double epsilon, double k) {
  BoundCheck out;
  out.epsilon = epsilon;
  out.k = k;
  for (std::size_t n = 2; n < coeffs.size(); n += 2) {
    const double envelope = k * std::pow(static_cast<double>(n), -1.5 + epsilon);
    const double ratio = std::abs(coeffs[n]) / envelope;
    if (!(std::abs(coeffs[n]) < envelope)) out.holds = false;
    if (ratio > out.worst_ratio || out.worst_index == 0) {
      out.worst_ratio = ratio;
      out.worst_index = n;
    }
  }
  return out;
}

bool check_lemma2_bound(const SinPowerSeries& series, double epsilon, double k) {
  return lemma2_bound(series.coeffs, epsilon, k).holds;
}

double induction_base_constant(std::span<const double> coeffs, double epsilon,
                               std::size_t window) {
  double k = 0.0;
  for (std::size_t n = 2; n <= window && n < coeffs.size(); n += 2) {
    k = std::max(k, std::abs(coeffs[n]) * std::pow(static_cast<double>(n), 1.5 - epsilon));
  }
  return k * (1.0 + 1e-12);
}

Lemma2Constants check_lemma2_constant(double epsilon, double alpha, double beta_over_omega2) {
  Lemma2Constants out;
  out.epsilon = epsilon;
  out.alpha = alpha;
  out.beta_over_omega2 = beta_over_omega2;
  out.k_statement = beta_over_omega2 * 0.75 * epsilon * std::pow(4.0, epsilon - 0.5);
  out.k_proof = 1.5 * std::pow(4.0, 1.0 - alpha) * (3.0 - 2.0 * alpha);
  out.ratio = out.k_proof != 0.0 ? out.k_statement / out.k_proof
                                 : std::numeric_limits<double>::infinity();
  out.same_power_of_four = std::abs((epsilon - 0.5) - (1.0 - alpha)) <= 4.0 * kEps;
  out.proof_admits_positive_k = out.k_proof > 0.0;
  return out;
}

InequalitySides convolution_inequality(std::size_t p, double alpha) {
  if (p < 2) throw Error(ErrorKind::InvalidArgument, "convolution inequality needs p >= 2");
  series::CompensatedSum sum;
  for (std::size_t r = 1; r < p; ++r) {
    sum.add(std::pow(static_cast<double>(r), -alpha) *
            std::pow(static_cast<double>(p - r), -alpha));
  }
  return {sum.value(), std::pow(static_cast<double>(p - 1), 1.0 - alpha)};
}

ProofFunctions proof_functions(double p, double alpha, double beta_over_omega2, double c0) {
  if (!(p >= 2.0)) throw Error(ErrorKind::InvalidArgument, "proof functions need p >= 2");
  const double qc0 = beta_over_omega2 * c0;
  ProofFunctions out;
  out.f = ((p + 1.0) / p) * std::pow((p - 1.0) / (p + 2.0), alpha - 1.0);
  const double shrink = -qc0 / (p * p);
  if (shrink > -1.0) {
    // log of (p^2 - q c0)(p+2)^{alpha-1} / ((p+1) p^alpha)
    const double log_x = std::log1p(shrink) + (alpha - 1.0) * std::log1p(2.0 / p) -
                         std::log1p(1.0 / p);
    out.g = -std::expm1(log_x);
  } else {
    out.g = 1.0 - (p * p - qc0) * std::pow(p + 2.0, alpha - 1.0) /
                      ((p + 1.0) * std::pow(p, alpha));
  }
  out.pfg = p * out.f * out.g;
  return out;
}

InequalitySides cubic_bound_sides(double n, double alpha, double k, double c0, double c1) {
  InequalitySides out;
  out.lhs = std::pow(n, 2.0 - alpha) + (k * k + 3.0 * c0 * k) / std::pow(n - 2.0, alpha - 1.0) +
            (2.0 * c0 + 2.0 * c0 * c1) / std::pow(n - 1.0, alpha);
  out.rhs = (n + 1.0) / std::pow(n + 2.0, alpha - 1.0);
  return out;
}

bool cubic_bound_condition(double n, double alpha, double k, double c0, double c1) {
  if (!(n >= 3.0)) throw Error(ErrorKind::InvalidArgument, "cubic bound needs n >= 3");
  const InequalitySides s = cubic_bound_sides(n, alpha, k, c0, c1);
  return s.lhs < s.rhs;
}

CubicConstantSearch admissible_cubic_k(double alpha, double c0, double c1, std::size_t n_min,
                                       std::size_t n_max) {
  if (n_min < 3 || n_max < n_min) {
    throw Error(ErrorKind::InvalidArgument, "cubic scan needs 3 <= n_min <= n_max");
  }
  CubicConstantSearch out;
  out.n_min = n_min;
  out.n_max = n_max;
  // First n at which the condition fails for this k, or 0.
  auto first_failure = [&](double k) -> std::size_t {
    for (std::size_t n = n_min; n <= n_max; ++n) {
      if (!cubic_bound_condition(static_cast<double>(n), alpha, k, c0, c1)) return n;
    }
    return 0;
  };
  if (const std::size_t n = first_failure(0.0); n != 0) {
    out.worst_n = n;
    return out;
  }
  double lo = 0.0;
  double hi = 1.0;
  while (first_failure(hi) == 0) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e12) {
      out.exists = true;
      out.k_max = std::numeric_limits<double>::infinity();
      return out;
    }
  }
  for (int i = 0; i < 200 && hi - lo > 4.0 * kEps * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (first_failure(mid) == 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  out.exists = lo > 0.0;
  out.k_max = lo;
  out.worst_n = first_failure(hi);
  return out;
}

ScanReport scan_convolution_inequality(double alpha, std::size_t p_max) {
  ScanReport report;
  report.name = fmt::format("convolution_majorization(alpha={})", alpha);
  report.grid = fmt::format("p in [2, {}]", p_max);
  std::vector<double> a(p_max + 1, 0.0);
  for (std::size_t r = 1; r <= p_max; ++r) a[r] = std::pow(static_cast<double>(r), -alpha);
  for (std::size_t p = 2; p <= p_max; ++p) {
    series::CompensatedSum sum;
    for (std::size_t r = 1; 2 * r < p; ++r) sum.add(2.0 * a[r] * a[p - r]);
    if (p % 2 == 0) sum.add(a[p / 2] * a[p / 2]);
    const double lhs = sum.value();
    const double rhs = std::pow(static_cast<double>(p - 1), 1.0 - alpha);
    ++report.points;
    // p = 2 and p = 3 are equalities; allow a few ulps there.
    if (lhs > rhs * (1.0 + 8.0 * kEps)) record(report, static_cast<double>(p));
  }
  return report;
}

ScanReport scan_f_lower_bound(double alpha, std::size_t p_max) {
  ScanReport report;
  report.name = fmt::format("f_increasing_and_bounded(alpha={})", alpha);
  report.grid = fmt::format("p in [2, {}]", p_max);
  const double bound = 1.5 * std::pow(4.0, 1.0 - alpha);
  double previous = -std::numeric_limits<double>::infinity();
  for (std::size_t p = 2; p <= p_max; ++p) {
    const double f = proof_functions(static_cast<double>(p), alpha, 0.0, 0.0).f;
    ++report.points;
    if (f < bound * (1.0 - 8.0 * kEps) || !(f > previous)) record(report, static_cast<double>(p));
    previous = f;
  }
  return report;
}

ScanReport scan_pg_lower_bound(double alpha, double qc0, std::size_t p_max) {
  ScanReport report;
  report.name = fmt::format("pg_lower_bound(alpha={}, q*c0={})", alpha, qc0);
  report.grid = fmt::format("p in [2, {}]", p_max);
  const double bound = 3.0 - 2.0 * alpha;
  for (std::size_t p = 2; p <= p_max; ++p) {
    const double pd = static_cast<double>(p);
    const double pg = pd * proof_functions(pd, alpha, qc0, 1.0).g;
    ++report.points;
    if (!(pg > bound)) record(report, pd);
  }
  return report;
}

ScanReport scan_pfg_decreasing(double alpha, double qc0, double p_max, double final_below,
                               std::size_t per_decade) {
  ScanReport report;
  report.name = fmt::format("pfg_decreasing(alpha={}, q*c0={})", alpha, qc0);
  report.grid = fmt::format("log grid p in [2, {:g}], {} points per decade", p_max, per_decade);
  const double log_lo = std::log10(2.0);
  const double log_hi = std::log10(p_max);
  const auto steps = static_cast<std::size_t>(std::ceil((log_hi - log_lo) * static_cast<double>(per_decade)));
  double previous = std::numeric_limits<double>::infinity();
  double last = previous;
  for (std::size_t i = 0; i <= steps; ++i) {
    const double p = i == steps ? p_max
                                : std::pow(10.0, log_lo + (log_hi - log_lo) * static_cast<double>(i) /
                                                             static_cast<double>(steps));
    const double pfg = proof_functions(p, alpha, qc0, 1.0).pfg;
    ++report.points;
    if (!(pfg < previous)) record(report, p);
    previous = pfg;
    last = pfg;
  }
  if (!(last < final_below)) record(report, p_max);
  return report;
}

bool DiagnosticsReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

DiagnosticsReport verify_series(const SinPowerSeries& series, const VerifyOptions& options) {
  DiagnosticsReport report;
  const auto& coeffs = series.coeffs;
  const auto& problem = series.problem;
  const double w = series.omega_series;
  const double coeff_scale = max_abs(coeffs);

  {
    CheckResult parity = make_check("parity");
    for (std::size_t n = 1; n < coeffs.size(); n += 2) {
      if (coeffs[n] != 0.0) {
        parity.passed = false;
        parity.value = static_cast<double>(n);
        parity.detail = fmt::format("odd coefficient c_{} is nonzero", n);
        break;
      }
    }
    report.checks.push_back(parity);
  }

  report.positivity = check_positivity(series);
  report.positivity_premise = positivity_premise(series);
  {
    CheckResult pos = make_check("positivity");
    pos.value = report.positivity ? 1.0 : 0.0;
    if (report.positivity_premise) {
      pos.passed = report.positivity;
      pos.detail = "premise c0 > 0, c2 > 0, beta < 0 holds";
    } else {
      pos.skipped = true;
      pos.detail = "premise c0 > 0, c2 > 0, beta < 0 not met";
    }
    report.checks.push_back(pos);
  }

  if (problem.B == 0.0 && problem.D == 0.0) {
    report.identity = check_sum_identity(series);
    CheckResult id = make_check("sum_identity");
    id.value = report.identity->residual;
    id.threshold = options.identity_tol * std::max(1.0, std::abs(report.identity->rhs));
    id.passed = id.value <= id.threshold;
    report.checks.push_back(id);
  }

  {
    CheckResult tail = make_check("tail_decay");
    report.tail_growth_relative = coeff_scale > 0.0 ? tail_growth(coeffs) / coeff_scale : 0.0;
    tail.value = report.tail_growth_relative;
    tail.threshold = options.tail_tol;
    tail.passed = tail.value <= tail.threshold;
    tail.detail = "max_{N/2<=n<=N} |c_n| n^1.5 / max|c_n|";
    report.checks.push_back(tail);
  }

  try {
    report.decay = fit_decay(series);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::AllZero && e.kind() != ErrorKind::InvalidArgument) throw;
  }

  {
    const double k = induction_base_constant(coeffs, options.epsilon);
    if (k > 0.0) {
      report.bound = lemma2_bound(coeffs, options.epsilon, k);
    } else {
      report.bound.epsilon = options.epsilon;
    }
    if (report.decay) report.decay->bounds.push_back(report.bound);
    CheckResult b = make_check("decay_bound");
    b.value = report.bound.worst_ratio;
    b.threshold = 1.0;
    b.passed = report.bound.holds;
    b.detail = fmt::format("|c_n| < k n^(-1.5+{}) with k = {:.6g} from n <= 8", options.epsilon, k);
    report.checks.push_back(b);
  }

  {
    CheckResult res = make_check("ode_residual");
    const double period = std::numbers::pi / w;
    constexpr std::size_t kGrid = 257;
    double worst = 0.0;
    for (std::size_t i = 0; i < kGrid; ++i) {
      const double t = period * static_cast<double>(i) / static_cast<double>(kGrid - 1);
      worst = std::max(worst, std::abs(ode_residual(series, t)));
    }
    res.value = worst;
    res.threshold = options.residual_tol * std::max(1.0, w * w * coeff_scale);
    res.passed = worst <= res.threshold;
    report.checks.push_back(res);
  }

  if (options.run_oracle) {
    CheckResult oracle = make_check("oracle");
    try {
      turning_points(problem);
      const double period = std::numbers::pi / w;
      const Trajectory traj = integrate(problem, period, options.rk_tol, options.samples);
      double worst = 0.0;
      for (std::size_t i = 0; i < traj.times.size(); ++i) {
        worst = std::max(worst, std::abs(evaluate_sin_series(series, traj.times[i]) - traj.values[i]));
      }
      oracle.value = worst;
      oracle.threshold = options.oracle_tol * std::max(1.0, std::abs(problem.v0));
      oracle.passed = worst <= oracle.threshold;
    } catch (const Error& e) {
      oracle.skipped = true;
      oracle.detail = e.what();
    }
    report.checks.push_back(oracle);
  }

  if (options.run_scans) {
    const double alpha = 1.5 - 0.5 * options.epsilon;
    const double qc0 = (-problem.C / (w * w)) * problem.v0;
    report.scans.push_back(scan_convolution_inequality(alpha));
    report.scans.push_back(scan_f_lower_bound(alpha));
    report.scans.push_back(scan_pg_lower_bound(alpha, qc0));
    report.scans.push_back(scan_pfg_decreasing(1.5, qc0));
  }
  return report;
}

}  // namespace osc::diagnostics
