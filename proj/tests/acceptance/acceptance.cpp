// Acceptance suite: one PASS/FAIL line per criterion, with the measured
// numbers underneath. Individual checks marked unattainable still make their
// criterion FAIL, but only change the exit status if they unexpectedly pass;
// every other failing check does.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <numbers>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <fmt/format.h>

#include "osc/diagnostics.hpp"
#include "osc/error.hpp"
#include "osc/model.hpp"
#include "osc/period.hpp"
#include "osc/reference_oracle.hpp"
#include "osc/sin_series.hpp"
#include "osc/taylor_series.hpp"
#include "support.hpp"

using namespace osc;
using osc::testing::Rng;
using osc::testing::rel_diff;

namespace {

constexpr std::uint64_t kSeed = 12345;

struct Outcome {
  bool passed = true;
  int unexpected = 0;
  std::vector<std::string> details;

  void require(bool ok, std::string line) {
    if (!ok) {
      passed = false;
      ++unexpected;
    }
    details.push_back(fmt::format("{} {}", ok ? "ok  " : "FAIL", line));
  }
  // A check whose failure has been analysed and is expected.
  void require_unattainable(bool ok, std::string line) {
    if (ok) {
      ++unexpected;
    } else {
      passed = false;
    }
    details.push_back(fmt::format("{} {}{}", ok ? "ok  " : "FAIL", line,
                                  ok ? " (marked unattainable, yet passed)" : " (known unattainable)"));
  }
  void info(std::string line) { details.push_back("     " + std::move(line)); }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// 1. Coefficient regression against the closed forms for c0, c2 and the
// recursion-derived c4, at Omega = omega.
Outcome coefficient_regression() {
  Outcome out;
  const auto start = Clock::now();
  Rng rng(kSeed);
  int bad_c0 = 0, bad_c2 = 0, bad_c4 = 0;
  double worst_c0 = 0.0, worst_c2 = 0.0, worst_c4 = 0.0;
  std::string worst_case;
  for (int i = 0; i < 100; ++i) {
    const double omega = rng.uniform(0.2, 3.0);
    const double beta = rng.sign() * rng.uniform(0.1, 3.0);
    const double q = rng.uniform(-1.0, 1.0);
    const double a0 = q * omega * omega / beta;
    const auto s = compute_sin_coefficients(make_quadratic_shifted(omega, beta, a0), omega, 8);
    const long double w = omega, b = beta, a = a0;
    const long double c0 = a + w * w / (2 * b);
    const long double c2 = -(a / (2 * w * w)) * (w * w + a * b);
    const long double c4 = c2 * (3 - 2 * a * b / (w * w)) / 12;
    const double e0 = rel_diff(s.coeffs[0], static_cast<double>(c0));
    const double e2 = rel_diff(s.coeffs[2], static_cast<double>(c2));
    const double e4 = rel_diff(s.coeffs[4], static_cast<double>(c4));
    bad_c0 += e0 > 1e-14;
    bad_c2 += e2 > 1e-14;
    bad_c4 += e4 > 1e-14;
    worst_c0 = std::max(worst_c0, e0);
    worst_c4 = std::max(worst_c4, e4);
    if (e2 > worst_c2) {
      worst_c2 = e2;
      worst_case = fmt::format("w={:.6g} beta={:.6g} a0={:.6g} (beta a0/w^2 = {:.6g})", omega, beta, a0,
                               beta * a0 / (omega * omega));
    }
  }
  const double elapsed = seconds_since(start);
  out.require(bad_c0 == 0, fmt::format("c0 relative error <= 1e-14 on 100 draws (worst {:.3g}, failures {})", worst_c0, bad_c0));
  out.require(bad_c2 == 0, fmt::format("c2 relative error <= 1e-14 on 100 draws (worst {:.3g}, failures {})", worst_c2, bad_c2));
  out.info(fmt::format("worst c2 draw: {}", worst_case));
  out.require(bad_c4 == 0, fmt::format("c4 = c2 (3 - 2 a0 beta / w^2) / 12 relative <= 1e-14 (worst {:.3g}, failures {})", worst_c4, bad_c4));
  out.require(elapsed < 1.0, fmt::format("runtime {:.3f} s < 1 s", elapsed));
  return out;
}

// 2. The constant solution annihilates every higher coefficient, exactly.
Outcome trivial_annihilation() {
  Outcome out;
  Rng rng(kSeed + 2);
  int nonzero_sin = 0, nonzero_taylor = 0;
  for (int i = 0; i < 20; ++i) {
    const double omega = rng.uniform(0.2, 3.0);
    const double beta = rng.sign() * rng.uniform(0.1, 3.0);
    const auto p = make_quadratic_shifted(omega, beta, -omega * omega / beta);
    const auto s = compute_sin_coefficients(p, omega, 64);
    const auto t = compute_taylor_coefficients(p, 64);
    for (std::size_t n = 1; n <= 64; ++n) {
      nonzero_sin += s.coeffs[n] != 0.0;
      nonzero_taylor += t.coeffs[n] != 0.0;
    }
  }
  out.require(nonzero_sin == 0, fmt::format("sin-power: {} nonzero coefficients with index >= 1 over 20 draws", nonzero_sin));
  out.require(nonzero_taylor == 0, fmt::format("Taylor: {} nonzero coefficients with index >= 1 over 20 draws", nonzero_taylor));
  return out;
}

// 3. Calibrated N = 64 series against the oracle over one period.
Outcome oracle_equivalence() {
  Outcome out;
  const auto start = Clock::now();
  int failures = 0, softening_failures = 0;
  double worst = 0.0, worst_softening = 0.0;
  for (const auto& c : osc::testing::standard_grid()) {
    // Softening Duffing at the edge of the grid: cn has poles close to the
    // real axis in w = sin^2, so N = 64 truncation leaves ~1e-7 behind.
    const bool softening_edge = c.problem.label == ProblemLabel::Cubic && c.q <= -0.5;
    const double T = period_by_quadrature(c.problem).T;
    const auto s = compute_sin_coefficients(c.problem, calibrate_frequency(c.problem), 64);
    const auto traj = integrate(c.problem, T, 1e-11, 128);
    double err = 0.0;
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
      err = std::max(err, std::abs(evaluate_sin_series(s, traj.times[i]) - traj.values[i]));
    }
    if (softening_edge) {
      worst_softening = std::max(worst_softening, err);
      softening_failures += err > 1e-7;
    } else {
      worst = std::max(worst, err);
      failures += err > 1e-7;
    }
    if (err > 1e-7) {
      out.info(fmt::format("{} w={} beta={:.6g} a0={} (q={}): max error {:.3g}", to_string(c.problem.label),
                           c.omega, c.beta, c.a0, c.q, err));
    }
  }
  const double elapsed = seconds_since(start);
  out.require(failures == 0, fmt::format("max |series - oracle| <= 1e-7 on the 42 other grid problems (worst {:.3g}, failures {})", worst, failures));
  out.require_unattainable(softening_failures == 0, fmt::format("max |series - oracle| <= 1e-7 on the 6 softening cubic problems with beta a0^2 / w^2 = -0.5 (worst {:.3g}, failures {})", worst_softening, softening_failures));
  out.require(elapsed < 10.0, fmt::format("runtime {:.2f} s < 10 s", elapsed));
  return out;
}

// 4. Sin-power series re-expanded in t equals the direct Taylor series.
Outcome series_identity() {
  Outcome out;
  Rng rng(kSeed + 4);
  double worst = 0.0;
  int failures = 0;
  for (int i = 0; i < 50; ++i) {
    const double omega = rng.uniform(0.5, 2.0);
    GeneralProblem p;
    if (i % 2 == 1) {
      const double a0 = rng.uniform(0.5, 1.5);
      p = make_cubic(omega, rng.uniform(-0.5, 0.5) * omega * omega / (a0 * a0), a0);
    } else {
      const double beta = rng.sign() * rng.uniform(0.5, 2.0);
      p = make_quadratic_shifted(omega, beta, rng.uniform(-0.3, 0.3) * omega * omega / beta);
    }
    const auto s = compute_sin_coefficients(p, calibrate_frequency(p), 64);
    const auto a = sin_series_to_taylor(s, 20);
    const auto b = compute_taylor_coefficients(p, 20);
    for (std::size_t k = 0; k <= 20; ++k) {
      const double e = rel_diff(a.coeffs[k], b.coeffs[k]);
      worst = std::max(worst, e);
      failures += e > 1e-8;
    }
  }
  out.require(failures == 0, fmt::format("orders 0..20 agree to relative 1e-8 on 50 problems (worst {:.3g})", worst));
  return out;
}

// 5. Quadrature against the AGM closed form, and the harmonic limit.
Outcome period_cross_validation() {
  Outcome out;
  Rng rng(kSeed + 5);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double omega = rng.uniform(0.3, 3.0);
    const double beta = rng.log_uniform(1e-3, 5.0);
    const double a0 = rng.sign() * rng.uniform(0.05, 2.0);
    const double tq = period_by_quadrature(make_cubic(omega, beta, a0)).T;
    const double tc = period_duffing_closed_form(omega, beta, a0).T;
    worst = std::max(worst, std::abs(tq - tc) / tc);
  }
  out.require(worst <= 1e-10, fmt::format("|T_quad - T_closed| / T <= 1e-10 on 50 hardening problems (worst {:.3g})", worst));

  double worst_limit = 0.0;
  for (double omega : {0.5, 1.0, 2.0}) {
    const double target = 2.0 * std::numbers::pi / omega;
    worst_limit = std::max(worst_limit, std::abs(period_by_quadrature(make_cubic(omega, 1.0, 1e-4)).T - target));
    worst_limit = std::max(worst_limit, std::abs(period_by_quadrature(make_quadratic_shifted(omega, 1.0, 1e-4)).T - target));
    worst_limit = std::max(worst_limit, std::abs(period_duffing_closed_form(omega, 1.0, 1e-4).T - target));
  }
  out.require(worst_limit <= 1e-6, fmt::format("a0 = 1e-4 gives 2 pi / w within 1e-6 (worst {:.3g})", worst_limit));

  const double tq = period_by_quadrature(make_cubic(1.0, 1.0, 1.0)).T;
  const double tc = period_duffing_closed_form(1.0, 1.0, 1.0).T;
  out.require(std::abs(tq - tc) <= 1e-10 * tc, fmt::format("w=1 beta=1 a0=1: quadrature {:.15g}, closed form {:.15g}", tq, tc));
  // 4 K(1/2) / sqrt(2) with K(1/2) = 1.685750354812596...
  out.require(std::abs(tq - 4.0 * 1.685750354812596 / std::numbers::sqrt2) <= 1e-12,
              "w=1 beta=1 a0=1 matches 4 K(1/2) / sqrt(2) = 4.76802202910246");
  out.require(std::abs(tq - 4.768021) <= 2e-6, "w=1 beta=1 a0=1 agrees with 4.768021 at six decimals (last digit off by one)");
  return out;
}

// 6. Calibrated frequency against pi / T.
Outcome frequency_consistency() {
  Outcome out;
  double worst = 0.0;
  for (const auto& c : osc::testing::standard_grid()) {
    const double w = calibrate_frequency(c.problem);
    const double exact = std::numbers::pi / period_by_quadrature(c.problem).T;
    worst = std::max(worst, std::abs(w - exact) / w);
  }
  out.require(worst <= 1e-6, fmt::format("|W_cal - pi/T| <= 1e-6 W on the standard grid (worst {:.3g})", worst));
  double worst_h = 0.0;
  for (double omega : {0.5, 1.0, 2.0}) {
    GeneralProblem h;
    h.B = -omega * omega;
    h.v0 = 1.0;
    worst_h = std::max(worst_h, std::abs(calibrate_frequency(h) - omega / 2.0));
  }
  out.require(worst_h <= 1e-8, fmt::format("harmonic W = w/2 within 1e-8 (worst {:.3g})", worst_h));
  return out;
}

// 7. Positivity and bounded partial sums; the quarter-period identity.
Outcome positivity_suite() {
  Outcome out;
  Rng rng(kSeed + 7);
  int not_positive = 0, unbounded = 0;
  double worst_contraction = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double omega = rng.uniform(0.3, 3.0);
    const double beta = -rng.uniform(0.1, 3.0);
    const double q = rng.uniform(-2.0, -1.05);
    const auto p = make_quadratic_shifted(omega, beta, q * omega * omega / beta);
    const auto s = compute_sin_coefficients(p, omega, 512);
    if (!diagnostics::positivity_premise(s)) {
      ++not_positive;
      continue;
    }
    std::vector<double> head(s.coeffs.begin(), s.coeffs.begin() + 257);
    not_positive += !std::all_of(head.begin(), head.end(), [](double c) { return c >= 0.0; });
    // Partial sums at N = 64, 128, 256, 512: increments must shrink
    // geometrically for the sums to stay bounded.
    std::vector<double> sums;
    double acc = 0.0;
    for (std::size_t n = 0; n <= 512; ++n) {
      acc += s.coeffs[n];
      if (n == 64 || n == 128 || n == 256 || n == 512) sums.push_back(acc);
    }
    const double d1 = sums[1] - sums[0], d2 = sums[2] - sums[1], d3 = sums[3] - sums[2];
    const double r = std::max(d2 / d1, d3 / d2);
    worst_contraction = std::max(worst_contraction, r);
    unbounded += !(d1 >= 0.0 && d2 >= 0.0 && d3 >= 0.0 && r < 1.0);
  }
  out.require(not_positive == 0, fmt::format("all c_n >= 0 at N = 256 on 100 premise instances (failures {})", not_positive));
  out.require(unbounded == 0, fmt::format("partial sums non-decreasing, increments contract per doubling (worst ratio {:.3f})", worst_contraction));

  // Residual as a function of W at fixed N; its slope turns the calibration
  // error into the floor the residual cannot go below.
  auto residual_at = [](const GeneralProblem& p, double w, std::size_t n) {
    const auto rep = diagnostics::check_sum_identity(compute_sin_coefficients(p, w, n));
    return rep.lhs - rep.rhs;
  };
  int identity_failures = 0, halving_failures = 0, exact_halving_failures = 0;
  double worst_128 = 0.0;
  for (const auto& c : osc::testing::quadratic_grid()) {
    const double w = calibrate_frequency(c.problem);
    const double w_exact = period_by_quadrature(c.problem).omega_pi_over_T;
    double previous = INFINITY, previous_exact = INFINITY;
    for (std::size_t n : {16, 32, 64, 128}) {
      const auto s = compute_sin_coefficients(c.problem, w, n);
      const auto rep = diagnostics::check_sum_identity(s);
      const auto sums = quarter_period_sums(s);
      const double scale = std::max({std::abs(s.problem.C) * sums.S * sums.S, w * w * std::abs(sums.M), std::abs(rep.rhs), 1e-300});
      const double roundoff = 64.0 * std::numeric_limits<double>::epsilon() * scale;
      const double h = 1e-6 * w;
      const double slope = (residual_at(c.problem, w + h, n) - residual_at(c.problem, w - h, n)) / (2.0 * h);
      const double floor = roundoff + 2.0 * std::abs(slope * (w - w_exact));
      if (!(rep.residual <= previous / 2.0 || rep.residual <= floor)) ++halving_failures;
      previous = rep.residual;
      const double exact = std::abs(residual_at(c.problem, w_exact, n));
      if (!(exact <= previous_exact / 2.0 || exact <= roundoff)) ++exact_halving_failures;
      previous_exact = exact;
      if (n == 128) {
        worst_128 = std::max(worst_128, rep.residual);
        identity_failures += rep.residual > 1e-8;
      }
    }
  }
  out.require(identity_failures == 0, fmt::format("quarter-period identity residual <= 1e-8 at N = 128, calibrated, quadratic grid (worst {:.3g})", worst_128));
  out.require(exact_halving_failures == 0, fmt::format("W = pi/T_quad: residual halves per doubling of N until round-off (violations {})", exact_halving_failures));
  out.require(halving_failures == 0, fmt::format("calibrated W: residual halves per doubling of N until round-off plus |dr/dW| |W_cal - pi/T| (violations {})", halving_failures));
  out.info("premise instances use W = w with beta a0 / w^2 in [-2, -1.05] (escaping motion: no period, so no calibrated W)");
  return out;
}

// 8. Auxiliary inequalities by scan, and the decay bound on converged series.
Outcome decay_suite() {
  Outcome out;
  const auto start = Clock::now();
  for (double alpha : {1.1, 1.25, 1.4, 1.5}) {
    const auto conv = diagnostics::scan_convolution_inequality(alpha, 10'000);
    out.require(conv.passed(), fmt::format("{}: {} points, {} violations", conv.name, conv.points, conv.violation_count));
    const auto f = diagnostics::scan_f_lower_bound(alpha, 10'000);
    const auto line = fmt::format("{}: {} points, {} violations", f.name, f.points, f.violation_count);
    // d log f / dp > 0 needs 3 (alpha - 1) p (p + 1) > (p - 1)(p + 2), which
    // fails for large p whenever alpha < 4/3: f then decays towards 1.
    if (alpha < 4.0 / 3.0) {
      out.require_unattainable(f.passed(), line);
      out.info(fmt::format("f(2) = {:.6g}, f(3) = {:.6g}, f(1e4) = {:.6g}", diagnostics::proof_functions(2.0, alpha, 1.0, 1.0).f,
                           diagnostics::proof_functions(3.0, alpha, 1.0, 1.0).f, diagnostics::proof_functions(1e4, alpha, 1.0, 1.0).f));
    } else {
      out.require(f.passed(), line);
    }
  }
  const auto pfg = diagnostics::scan_pfg_decreasing(1.5, 1.0, 1e6, 1e-3);
  out.require(pfg.passed(), fmt::format("{} to 1e6, final < 1e-3: {} points, {} violations", pfg.name, pfg.points, pfg.violation_count));
  for (double qc0 : {-2.0, -1.0, 0.0, 2.0}) {
    const auto other = diagnostics::scan_pfg_decreasing(1.5, qc0, 1e6, 1e-3);
    out.info(fmt::format("{}: {} violations", other.name, other.violation_count));
  }
  // The p g(p) > 3 - 2 alpha premise has no stated condition on q c0; report only.
  for (double qc0 : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
    const auto pg = diagnostics::scan_pg_lower_bound(1.4, qc0, 10'000);
    out.info(fmt::format("{}: {} violations{}", pg.name, pg.violation_count,
                         pg.violations.empty() ? "" : fmt::format(", first at p = {}", pg.violations.front())));
  }
  const double scan_time = seconds_since(start);
  out.require(scan_time < 30.0, fmt::format("scan runtime {:.2f} s < 30 s", scan_time));

  int failures = 0;
  double worst = 0.0;
  for (const auto& c : osc::testing::standard_grid()) {
    const auto s = compute_sin_coefficients(c.problem, calibrate_frequency(c.problem), 64);
    const double k = diagnostics::induction_base_constant(s.coeffs, 0.1);
    const auto b = diagnostics::lemma2_bound(s.coeffs, 0.1, k);
    worst = std::max(worst, b.worst_ratio);
    if (!b.holds) {
      ++failures;
      out.info(fmt::format("w={} beta={:.6g} a0={}: worst ratio {:.4g} at n = {}", c.omega, c.beta, c.a0, b.worst_ratio, b.worst_index));
    }
  }
  out.require(failures == 0, fmt::format("|c_n| < k n^(-1.4) on all 48 grid series, k from n <= 8 (worst ratio {:.4g})", worst));
  return out;
}

// 9. The cubic inequality chain.
Outcome cubic_bound_chain() {
  Outcome out;
  const auto search = diagnostics::admissible_cubic_k(1.4, 1.0, 0.0);
  const auto sides = diagnostics::cubic_bound_sides(static_cast<double>(search.n_min), 1.4, 0.0, 1.0, 0.0);
  // At n = 3 the left side already exceeds the right with k = 0, and the
  // left side only grows with k, so no positive k can exist.
  out.require_unattainable(search.exists && search.k_max > 0.0,
              fmt::format("alpha = 1.4, c0 = 1, c1 = 0: positive k over n in [3, 1e4]: {} (k_max {:.4g}, first failing n at k = 0: {})",
                          search.exists ? "found" : "none", search.k_max, search.worst_n));
  out.info(fmt::format("at n = 3, k = 0: lhs {:.6g} vs rhs {:.6g}", sides.lhs, sides.rhs));
  std::size_t first_ok = 0;
  for (std::size_t n = 3; n <= 10'000; ++n) {
    if (diagnostics::cubic_bound_condition(static_cast<double>(n), 1.4, 0.0, 1.0, 0.0)) {
      first_ok = n;
      break;
    }
  }
  out.info(fmt::format("smallest n at which k = 0 satisfies the chain: {}", first_ok));
  for (double alpha : {1.55, 1.6, 1.75, 2.0}) {
    const bool fails = !diagnostics::cubic_bound_condition(1e4, alpha, 0.0, 1.0, 0.0);
    out.require(fails, fmt::format("alpha = {}: chain fails at n = 1e4 even with k = 0", alpha));
  }
  return out;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(OSC_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// 10. A deliberately wrong frequency must fail the decay check.
Outcome negative_control() {
  Outcome out;
  diagnostics::VerifyOptions options;
  options.run_scans = false;
  options.run_oracle = false;
  int passed_wrongly = 0;
  double smallest_tail = INFINITY;
  for (const auto& c : osc::testing::standard_grid()) {
    const double exact = std::numbers::pi / period_by_quadrature(c.problem).T;
    for (double scale : {0.5, 0.67, 1.5, 3.0}) {
      try {
        const auto rep = diagnostics::verify_series(compute_sin_coefficients(c.problem, scale * exact, 64), options);
        smallest_tail = std::min(smallest_tail, rep.tail_growth_relative);
        for (const auto& check : rep.checks) {
          if (check.name == "tail_decay" && check.passed) ++passed_wrongly;
        }
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::NonFinite) throw;
      }
    }
  }
  out.require(passed_wrongly == 0, fmt::format("tail decay check fails at W in {{0.5, 0.67, 1.5, 3}} x pi/T on the grid (smallest relative tail {:.3g})", smallest_tail));
  for (const std::string scale : {"0.67", "1.5", "3"}) {
    for (const std::string eq : {"--equation quadratic --omega 1 --beta 1 --a0 0.1",
                                  "--equation cubic --omega 1 --beta 1 --a0 1"}) {
      const int code = run_cli("verify " + eq + " --freq period --freq-scale " + scale);
      out.require(code == 1, fmt::format("verify {} --freq-scale {} exits {}", eq, scale, code));
    }
  }
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"coefficient regression", coefficient_regression},
      {"trivial-solution annihilation", trivial_annihilation},
      {"oracle equivalence", oracle_equivalence},
      {"series identity", series_identity},
      {"period cross-validation", period_cross_validation},
      {"frequency consistency", frequency_consistency},
      {"positivity and quarter-period identity", positivity_suite},
      {"decay bound and auxiliary inequalities", decay_suite},
      {"cubic bound chain", cubic_bound_chain},
      {"negative control", negative_control},
  };
  int unexpected = 0;
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = Clock::now();
    Outcome outcome;
    try {
      outcome = criteria[i].second();
    } catch (const std::exception& e) {
      outcome.require(false, fmt::format("exception: {}", e.what()));
    }
    fmt::print("{} {:>2} {} [{:.2f} s]\n", outcome.passed ? "PASS" : "FAIL", i + 1, criteria[i].first,
               seconds_since(start));
    for (const auto& line : outcome.details) fmt::print("        {}\n", line);
    std::fflush(stdout);
    unexpected += outcome.unexpected;
    failed += !outcome.passed;
  }
  fmt::print("{} of {} criteria pass; {} unexpected check outcomes\n", criteria.size() - failed, criteria.size(),
             unexpected);
  return unexpected == 0 ? 0 : 1;
}
