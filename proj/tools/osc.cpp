// osc: command-line front end for the sin-power and Taylor series solvers.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error,
// 3 numerical error. Errors are reported as JSON on stderr.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"

#include "osc/diagnostics.hpp"
#include "osc/error.hpp"
#include "osc/model.hpp"
#include "osc/period.hpp"
#include "osc/reference_oracle.hpp"
#include "osc/serialize.hpp"
#include "osc/sin_series.hpp"
#include "osc/taylor_series.hpp"

namespace {

using osc::Error;
using osc::ErrorKind;
using osc::io::Json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;
constexpr std::size_t kDefaultMaxTerms = 4096;
constexpr std::size_t kResidualGrid = 257;

struct RunConfig {
  std::string command;

  std::optional<std::string> equation;
  bool raw = false;
  std::optional<double> omega, beta, beta2, beta3, a0;
  double A = 0.0, B = 0.0, C = 0.0, D = 0.0;
  std::optional<double> v0;

  std::size_t terms = 64;
  std::size_t calibration_terms = osc::kDefaultCalibrationTerms;
  std::string freq = "period";
  double freq_scale = 1.0;
  std::optional<double> omega_series;
  std::optional<std::string> format;
  std::string out;
  double tol = 1e-11;
  std::uint64_t seed = 12345;
  bool quiet = false;

  bool taylor = false;
  std::size_t samples = 0;
  std::string samples_out;
  std::string method = "quadrature";

  std::string param;
  double from = 0.0, to = 1.0;
  std::size_t steps = 10;

  double epsilon = 0.1;
  std::vector<double> alphas{1.1, 1.25, 1.4, 1.5};
  double qc0 = 1.0;
  double c0 = 1.0, c1 = 0.0;
  std::size_t p_max = 10'000;
};

[[noreturn]] void usage(const std::string& message) {
  throw Error(ErrorKind::InvalidArgument, message);
}

std::size_t max_terms() {
  const char* env = std::getenv("OSC_MAX_TERMS");
  if (env == nullptr || *env == '\0') return kDefaultMaxTerms;
  char* end = nullptr;
  const unsigned long long value = std::strtoull(env, &end, 10);
  if (*end != '\0' || value < 2) usage(fmt::format("OSC_MAX_TERMS='{}' is not a count >= 2", env));
  return static_cast<std::size_t>(value);
}

double require(const std::optional<double>& value, const char* flag) {
  if (!value) usage(fmt::format("{} is required for this equation", flag));
  return *value;
}

osc::GeneralProblem build_problem(const RunConfig& cfg) {
  if (cfg.raw == cfg.equation.has_value()) {
    usage("give exactly one of --equation or --raw");
  }
  if (cfg.raw) {
    osc::GeneralProblem p;
    p.A = cfg.A;
    p.B = cfg.B;
    p.C = cfg.C;
    p.D = cfg.D;
    p.v0 = require(cfg.v0, "--v0");
    if (p.B == 0.0 && p.C == 0.0 && p.D == 0.0 && p.A == 0.0) {
      throw Error(ErrorKind::DegenerateProblem, "all force coefficients are zero");
    }
    return p;
  }
  const std::string& eq = *cfg.equation;
  const double omega = require(cfg.omega, "--omega");
  const double a0 = require(cfg.a0, "--a0");
  if (eq == "quadratic") return osc::make_quadratic_shifted(omega, require(cfg.beta, "--beta"), a0);
  if (eq == "quadratic-raw") return osc::make_raw(omega, require(cfg.beta, "--beta"), 0.0, a0);
  if (eq == "cubic") return osc::make_cubic(omega, require(cfg.beta, "--beta"), a0);
  if (eq == "cubic-normalized") {
    return osc::make_cubic_normalized(omega, require(cfg.beta, "--beta"), a0);
  }
  if (eq == "general") return osc::make_raw(omega, cfg.beta2.value_or(0.0), cfg.beta3.value_or(0.0), a0);
  usage(fmt::format("unknown equation '{}'", eq));
}

std::size_t calibration_order(const RunConfig& cfg) {
  if (cfg.calibration_terms < 32 || cfg.calibration_terms > max_terms()) {
    usage(fmt::format("--calibration-terms must lie in [32, OSC_MAX_TERMS], got {}", cfg.calibration_terms));
  }
  return cfg.calibration_terms;
}

// The "paper" mode takes the series frequency equal to the linear
// frequency of the equation, expressed in the problem's own time.
double linear_frequency(const RunConfig& cfg, const osc::GeneralProblem& p) {
  if (cfg.equation && cfg.omega) return *cfg.omega / p.shift.time_scale;
  if (p.B < 0.0) return std::sqrt(-p.B);
  usage("--freq paper needs --omega or a negative B");
}

double series_frequency(const RunConfig& cfg, const osc::GeneralProblem& p) {
  double w = 0.0;
  if (cfg.omega_series) {
    w = *cfg.omega_series;
  } else if (cfg.freq == "paper") {
    w = linear_frequency(cfg, p);
  } else if (cfg.freq == "period") {
    w = std::numbers::pi / osc::period_by_quadrature(p).T;
  } else if (cfg.freq == "calibrated") {
    w = osc::calibrate_frequency(p, calibration_order(cfg));
  } else {
    usage(fmt::format("unknown --freq '{}'", cfg.freq));
  }
  return w * cfg.freq_scale;
}

void check_terms(const RunConfig& cfg) {
  const std::size_t cap = max_terms();
  if (cfg.terms < 2) usage("--terms must be at least 2");
  if (cfg.terms > cap) usage(fmt::format("--terms {} exceeds OSC_MAX_TERMS = {}", cfg.terms, cap));
}

std::string output_format(const RunConfig& cfg, const char* fallback) {
  const std::string f = cfg.format.value_or(fallback);
  if (f != "json" && f != "csv") usage(fmt::format("unknown --format '{}'", f));
  return f;
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream file(cfg.out, std::ios::binary);
  if (!file) usage(fmt::format("cannot open '{}' for writing", cfg.out));
  file << text;
}

void note(const RunConfig& cfg, const std::string& message) {
  if (!cfg.quiet) std::cerr << message << '\n';
}

double max_residual(const osc::SinPowerSeries& s) {
  const double period = std::numbers::pi / s.omega_series;
  double worst = 0.0;
  for (std::size_t i = 0; i < kResidualGrid; ++i) {
    const double t = period * static_cast<double>(i) / static_cast<double>(kResidualGrid - 1);
    worst = std::max(worst, std::abs(osc::ode_residual(s, t)));
  }
  return worst;
}

osc::Trajectory sample_series(const osc::SinPowerSeries& s, std::size_t samples) {
  osc::Trajectory traj;
  const double period = std::numbers::pi / s.omega_series;
  for (std::size_t i = 0; i < samples; ++i) {
    const double t =
        samples == 1 ? 0.0 : period * static_cast<double>(i) / static_cast<double>(samples - 1);
    traj.times.push_back(t);
    traj.values.push_back(osc::evaluate_sin_series(s, t));
    traj.velocities.push_back(osc::sin_series_velocity(s, t));
  }
  return traj;
}

int cmd_solve(const RunConfig& cfg) {
  check_terms(cfg);
  const std::string format = output_format(cfg, "json");
  const osc::GeneralProblem problem = build_problem(cfg);
  if (cfg.taylor) {
    const osc::TaylorSeries ts = osc::compute_taylor_coefficients(problem, cfg.terms);
    const double radius = osc::estimate_radius(ts);
    if (std::isfinite(radius)) note(cfg, fmt::format("taylor: estimated radius of convergence {:.6g}", radius));
    emit(cfg, format == "json" ? osc::io::dump(osc::io::to_json(ts)) : osc::io::coefficients_csv(ts.coeffs));
    return kExitOk;
  }
  const osc::SinPowerSeries series =
      osc::compute_sin_coefficients(problem, series_frequency(cfg, problem), cfg.terms);
  std::optional<osc::Trajectory> traj;
  if (cfg.samples > 0) traj = sample_series(series, cfg.samples);
  if (traj && !cfg.samples_out.empty()) {
    std::ofstream file(cfg.samples_out, std::ios::binary);
    if (!file) usage(fmt::format("cannot open '{}' for writing", cfg.samples_out));
    file << osc::io::trajectory_csv(*traj);
  } else if (traj && format == "csv") {
    usage("--samples with --format csv needs --samples-out");
  }
  if (format == "csv") {
    emit(cfg, osc::io::coefficients_csv(series.coeffs));
    return kExitOk;
  }
  Json j = osc::io::to_json(series);
  if (traj && cfg.samples_out.empty()) {
    std::vector<double> u;
    for (double v : traj->values) u.push_back(osc::unshift(v, problem.shift));
    j["samples"] = {{"t", traj->times}, {"v", traj->values}, {"v_prime", traj->velocities}, {"u", u}};
  }
  emit(cfg, osc::io::dump(j));
  return kExitOk;
}

osc::PeriodEstimate closed_form_period(const RunConfig& cfg, const osc::GeneralProblem& p) {
  if (cfg.equation == "cubic") {
    return osc::period_duffing_closed_form(*cfg.omega, *cfg.beta, *cfg.a0);
  }
  if (p.A != 0.0 || p.C != 0.0 || !(p.B < 0.0)) {
    throw Error(ErrorKind::WrongForm, "closed form needs A = C = 0 and B < 0 (Duffing)");
  }
  return osc::period_duffing_closed_form(std::sqrt(-p.B), -p.D, p.v0);
}

int cmd_period(const RunConfig& cfg) {
  const std::string format = output_format(cfg, "json");
  const osc::GeneralProblem problem = build_problem(cfg);
  osc::PeriodEstimate est;
  if (cfg.method == "quadrature") {
    est = osc::period_by_quadrature(problem);
  } else if (cfg.method == "closed-form") {
    est = closed_form_period(cfg, problem);
  } else if (cfg.method == "calibrated") {
    est = osc::period_by_calibration(problem, calibration_order(cfg));
  } else {
    usage(fmt::format("unknown --method '{}'", cfg.method));
  }
  const double t_physical = est.T / problem.shift.time_scale;
  if (format == "csv") {
    emit(cfg, fmt::format("T,omega,x_minus,x_plus,method,err,T_physical\n{},{},{},{},{},{},{}\n",
                          osc::io::format_double(est.T), osc::io::format_double(est.omega_pi_over_T),
                          osc::io::format_double(est.x_minus), osc::io::format_double(est.x_plus),
                          osc::to_string(est.method), osc::io::format_double(est.err_estimate),
                          osc::io::format_double(t_physical)));
    return kExitOk;
  }
  Json j = osc::io::to_json(est);
  j["T_physical"] = t_physical;
  emit(cfg, osc::io::dump(j));
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg) {
  check_terms(cfg);
  const osc::GeneralProblem problem = build_problem(cfg);
  const osc::SinPowerSeries series =
      osc::compute_sin_coefficients(problem, series_frequency(cfg, problem), cfg.terms);
  osc::diagnostics::VerifyOptions options;
  options.epsilon = cfg.epsilon;
  options.rk_tol = cfg.tol;
  const osc::diagnostics::DiagnosticsReport report = osc::diagnostics::verify_series(series, options);
  Json j = osc::io::to_json(report);
  j["omega_series"] = series.omega_series;
  j["n_terms"] = series.n_terms();
  emit(cfg, osc::io::dump(j));
  for (const auto& c : report.checks) {
    if (!c.passed) note(cfg, fmt::format("verify: {} failed ({:.3g} > {:.3g})", c.name, c.value, c.threshold));
  }
  return report.all_passed() ? kExitOk : kExitVerifyFailed;
}

Json scan_json(const osc::diagnostics::ScanReport& s) {
  return {{"name", s.name}, {"grid", s.grid}, {"points", s.points},
          {"violation_count", s.violation_count}, {"violations", s.violations}};
}

int cmd_bounds(const RunConfig& cfg) {
  namespace dg = osc::diagnostics;
  Json j;
  j["note"] = "numerical scans over finite grids; evidence, not proof";
  j["constants"] = Json::array();
  j["scans"] = Json::array();
  j["cubic"] = Json::array();

  std::vector<std::future<dg::ScanReport>> scans;
  for (double alpha : cfg.alphas) {
    if (!(alpha > 1.0 && alpha <= 1.5)) usage(fmt::format("--alpha {} outside (1, 3/2]", alpha));
    scans.push_back(std::async(std::launch::async, dg::scan_convolution_inequality, alpha, cfg.p_max));
    scans.push_back(std::async(std::launch::async, dg::scan_f_lower_bound, alpha, cfg.p_max));
    scans.push_back(std::async(std::launch::async, dg::scan_pg_lower_bound, alpha, cfg.qc0, cfg.p_max));
  }
  scans.push_back(std::async(std::launch::async, [&] {
    return dg::scan_pfg_decreasing(1.5, cfg.qc0);
  }));
  for (auto& f : scans) j["scans"].push_back(scan_json(f.get()));

  for (double alpha : cfg.alphas) {
    const dg::Lemma2Constants k = dg::check_lemma2_constant(3.0 - 2.0 * alpha, alpha, cfg.qc0);
    j["constants"].push_back({{"epsilon", k.epsilon},
                              {"alpha", k.alpha},
                              {"beta_over_omega2", k.beta_over_omega2},
                              {"k_statement", k.k_statement},
                              {"k_proof", k.k_proof},
                              {"ratio", std::isfinite(k.ratio) ? Json(k.ratio) : Json(nullptr)},
                              {"same_power_of_four", k.same_power_of_four},
                              {"proof_admits_positive_k", k.proof_admits_positive_k}});
    const dg::CubicConstantSearch search = dg::admissible_cubic_k(alpha, cfg.c0, cfg.c1);
    j["cubic"].push_back({{"alpha", alpha},
                          {"c0", cfg.c0},
                          {"c1", cfg.c1},
                          {"n_range", {search.n_min, search.n_max}},
                          {"positive_k_exists", search.exists},
                          {"k_max", std::isfinite(search.k_max) ? Json(search.k_max) : Json(nullptr)},
                          {"binding_n", search.worst_n}});
  }
  emit(cfg, osc::io::dump(j));
  return kExitOk;
}

int cmd_compare(const RunConfig& cfg) {
  check_terms(cfg);
  const std::string format = output_format(cfg, "csv");
  const osc::GeneralProblem problem = build_problem(cfg);
  const osc::SinPowerSeries series =
      osc::compute_sin_coefficients(problem, series_frequency(cfg, problem), cfg.terms);
  const osc::TaylorSeries taylor = osc::compute_taylor_coefficients(problem, cfg.terms);
  const std::size_t samples = cfg.samples > 0 ? cfg.samples : 128;
  const osc::Trajectory oracle =
      osc::integrate(problem, std::numbers::pi / series.omega_series, cfg.tol, samples);

  std::vector<double> sin_vals, taylor_vals, sin_err, taylor_err;
  double max_sin = 0.0, max_taylor = 0.0;
  for (std::size_t i = 0; i < oracle.times.size(); ++i) {
    const double t = oracle.times[i];
    sin_vals.push_back(osc::evaluate_sin_series(series, t));
    taylor_vals.push_back(osc::evaluate_taylor(taylor, t));
    sin_err.push_back(std::abs(sin_vals.back() - oracle.values[i]));
    taylor_err.push_back(std::abs(taylor_vals.back() - oracle.values[i]));
    max_sin = std::max(max_sin, sin_err.back());
    // NaN compares false, so an overflowing Taylor value must be kept explicitly.
    if (!(taylor_err.back() <= max_taylor)) max_taylor = taylor_err.back();
  }

  if (format == "json") {
    auto arr = [](const std::vector<double>& v) {
      Json a = Json::array();
      for (double x : v) a.push_back(std::isfinite(x) ? Json(x) : Json(nullptr));
      return a;
    };
    Json j = {{"omega_series", series.omega_series},
              {"n_terms", series.n_terms()},
              {"t", oracle.times},
              {"series_value", arr(sin_vals)},
              {"taylor_value", arr(taylor_vals)},
              {"oracle_value", oracle.values},
              {"sin_err", arr(sin_err)},
              {"taylor_err", arr(taylor_err)},
              {"max_sin_err", std::isfinite(max_sin) ? Json(max_sin) : Json(nullptr)},
              {"max_taylor_err", std::isfinite(max_taylor) ? Json(max_taylor) : Json(nullptr)}};
    emit(cfg, osc::io::dump(j));
    return kExitOk;
  }
  using osc::io::format_double;
  std::string text = "t,series_value,taylor_value,oracle_value,sin_err,taylor_err\n";
  for (std::size_t i = 0; i < oracle.times.size(); ++i) {
    text += fmt::format("{},{},{},{},{},{}\n", format_double(oracle.times[i]), format_double(sin_vals[i]),
                        format_double(taylor_vals[i]), format_double(oracle.values[i]),
                        format_double(sin_err[i]), format_double(taylor_err[i]));
  }
  text += fmt::format("max,,,,{},{}\n", format_double(max_sin), format_double(max_taylor));
  emit(cfg, text);
  return kExitOk;
}

struct SweepRow {
  double value = 0.0;
  double T = std::nan("");
  double omega = std::nan("");
  double alpha_fit = std::nan("");
  double residual = std::nan("");
  std::string error;
};

void set_param(RunConfig& cfg, const std::string& name, double value) {
  static const std::map<std::string, std::function<void(RunConfig&, double)>> setters = {
      {"omega", [](RunConfig& c, double v) { c.omega = v; }},
      {"beta", [](RunConfig& c, double v) { c.beta = v; }},
      {"beta2", [](RunConfig& c, double v) { c.beta2 = v; }},
      {"beta3", [](RunConfig& c, double v) { c.beta3 = v; }},
      {"a0", [](RunConfig& c, double v) { c.a0 = v; }},
      {"A", [](RunConfig& c, double v) { c.A = v; }},
      {"B", [](RunConfig& c, double v) { c.B = v; }},
      {"C", [](RunConfig& c, double v) { c.C = v; }},
      {"D", [](RunConfig& c, double v) { c.D = v; }},
      {"v0", [](RunConfig& c, double v) { c.v0 = v; }},
  };
  const auto it = setters.find(name);
  if (it == setters.end()) usage(fmt::format("unknown --param '{}'", name));
  it->second(cfg, value);
}

SweepRow sweep_row(RunConfig cfg, double value) {
  SweepRow row;
  row.value = value;
  try {
    set_param(cfg, cfg.param, value);
    const osc::GeneralProblem problem = build_problem(cfg);
    row.T = osc::period_by_quadrature(problem).T;
    const double w = cfg.freq == "period" && !cfg.omega_series
                         ? std::numbers::pi / row.T * cfg.freq_scale
                         : series_frequency(cfg, problem);
    row.omega = w;
    const osc::SinPowerSeries series = osc::compute_sin_coefficients(problem, w, cfg.terms);
    row.residual = max_residual(series);
    try {
      row.alpha_fit = osc::diagnostics::fit_decay(series).alpha_fit;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::AllZero && e.kind() != ErrorKind::InvalidArgument) throw;
    }
  } catch (const Error& e) {
    row.error = std::string(osc::to_string(e.kind()));
  }
  return row;
}

int cmd_sweep(const RunConfig& cfg) {
  check_terms(cfg);
  const std::string format = output_format(cfg, "csv");
  if (cfg.param.empty()) usage("--param is required");
  if (cfg.steps < 1) usage("--steps must be at least 1");
  RunConfig probe = cfg;
  set_param(probe, cfg.param, 0.0);  // rejects unknown names up front

  std::vector<std::future<SweepRow>> futures;
  for (std::size_t i = 0; i < cfg.steps; ++i) {
    const double value =
        cfg.steps == 1 ? cfg.from
                       : cfg.from + (cfg.to - cfg.from) * static_cast<double>(i) /
                                        static_cast<double>(cfg.steps - 1);
    futures.push_back(std::async(std::launch::async, sweep_row, cfg, value));
  }
  std::vector<SweepRow> rows;
  for (auto& f : futures) rows.push_back(f.get());

  const bool any_ok = std::any_of(rows.begin(), rows.end(), [](const SweepRow& r) { return r.error.empty(); });
  if (format == "json") {
    Json j = Json::array();
    auto num = [](double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); };
    for (const auto& r : rows) {
      j.push_back({{"value", r.value}, {"T", num(r.T)}, {"Omega", num(r.omega)},
                   {"alpha_fit", num(r.alpha_fit)}, {"max_residual", num(r.residual)},
                   {"error", r.error.empty() ? Json(nullptr) : Json(r.error)}});
    }
    emit(cfg, osc::io::dump(j));
  } else {
    using osc::io::format_double;
    std::string text = "value,T,Omega,alpha_fit,max_residual,error\n";
    for (const auto& r : rows) {
      text += fmt::format("{},{},{},{},{},{}\n", format_double(r.value), format_double(r.T),
                          format_double(r.omega), format_double(r.alpha_fit),
                          format_double(r.residual), r.error);
    }
    emit(cfg, text);
  }
  return any_ok ? kExitOk : kExitNumerical;
}

// Fills options not given on the command line from a JSON object whose keys
// are the long option names.
void apply_config_file(const std::string& path, CLI::App& app) {
  std::ifstream file(path);
  if (!file) usage(fmt::format("cannot read config '{}'", path));
  Json j;
  try {
    file >> j;
  } catch (const nlohmann::json::exception& e) {
    usage(fmt::format("config '{}': {}", path, e.what()));
  }
  if (!j.is_object()) usage("config must be a JSON object");
  std::vector<CLI::App*> scopes{&app};
  for (CLI::App* sub : app.get_subcommands()) scopes.push_back(sub);
  for (const auto& [key, value] : j.items()) {
    CLI::Option* opt = nullptr;
    for (CLI::App* scope : scopes) {
      try {
        opt = scope->get_option("--" + key);
        break;
      } catch (const CLI::OptionNotFound&) {
      }
    }
    if (opt == nullptr) usage(fmt::format("config: unknown key '{}'", key));
    if (opt->count() > 0) continue;
    std::vector<std::string> args;
    auto as_text = [](const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
    if (value.is_array()) {
      for (const Json& v : value) args.push_back(as_text(v));
    } else if (value.is_boolean()) {
      if (!value.get<bool>()) continue;
      args.push_back("true");
    } else {
      args.push_back(as_text(value));
    }
    opt->add_result(args);
    opt->run_callback();
  }
}

int run(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Sin-power and Taylor series solutions of anharmonic oscillators"};
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--equation", cfg.equation, "quadratic | quadratic-raw | cubic | cubic-normalized | general");
  app.add_flag("--raw", cfg.raw, "Raw coefficients v'' = A + B v + C v^2 + D v^3");
  app.add_option("--omega", cfg.omega, "Linear frequency");
  app.add_option("--beta", cfg.beta, "Nonlinear strength");
  app.add_option("--beta2", cfg.beta2, "Quadratic strength (general)");
  app.add_option("--beta3", cfg.beta3, "Cubic strength (general)");
  app.add_option("--a0", cfg.a0, "Initial amplitude");
  app.add_option("--A", cfg.A);
  app.add_option("--B", cfg.B);
  app.add_option("--C", cfg.C);
  app.add_option("--D", cfg.D);
  app.add_option("--v0", cfg.v0, "Initial value (raw)");
  app.add_option("--terms", cfg.terms, "Truncation order N")->capture_default_str();
  app.add_option("--calibration-terms", cfg.calibration_terms,
                 "Order at which the tail-growth objective is minimised")
      ->capture_default_str();
  app.add_option("--freq", cfg.freq, "paper | period | calibrated")->capture_default_str();
  app.add_option("--freq-scale", cfg.freq_scale, "Multiply the series frequency")->capture_default_str();
  app.add_option("--omega-series", cfg.omega_series, "Explicit series frequency");
  app.add_option("--format", cfg.format, "json | csv");
  app.add_option("--out", cfg.out, "Output file (default stdout)");
  app.add_option("--tol", cfg.tol, "Oracle tolerance")->capture_default_str();
  app.add_option("--seed", cfg.seed)->capture_default_str();
  app.add_flag("--quiet", cfg.quiet);
  app.add_option("--epsilon", cfg.epsilon, "Decay-bound epsilon")->capture_default_str();
  std::string config_path;
  app.add_option("--config", config_path, "JSON file with option defaults");

  auto* solve = app.add_subcommand("solve", "Sin-power (or Taylor) coefficients");
  solve->add_flag("--taylor", cfg.taylor);
  solve->add_option("--samples", cfg.samples, "Sample the series over one period");
  solve->add_option("--samples-out", cfg.samples_out, "CSV path for samples");

  auto* period = app.add_subcommand("period", "Period of the oscillation");
  period->add_option("--method", cfg.method, "quadrature | closed-form | calibrated")->capture_default_str();

  app.add_subcommand("verify", "Run every applicable check; exit 1 on failure");

  auto* bounds = app.add_subcommand("bounds", "Decay-bound constants and inequality scans");
  bounds->add_option("--alpha", cfg.alphas)->capture_default_str();
  bounds->add_option("--qc0", cfg.qc0, "(beta / omega^2) c0 for g(p)")->capture_default_str();
  bounds->add_option("--c0", cfg.c0)->capture_default_str();
  bounds->add_option("--c1", cfg.c1)->capture_default_str();
  bounds->add_option("--p-max", cfg.p_max)->capture_default_str();

  auto* compare = app.add_subcommand("compare", "Series and Taylor values against the oracle");
  compare->add_option("--samples", cfg.samples, "Sample count (default 128)");

  auto* sweep = app.add_subcommand("sweep", "Sweep one parameter over a linear grid");
  sweep->add_option("--param", cfg.param)->required();
  sweep->add_option("--from", cfg.from)->required();
  sweep->add_option("--to", cfg.to)->required();
  sweep->add_option("--steps", cfg.steps)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << Json{{"error", "Usage"}, {"message", e.what()}}.dump() << '\n';
    return kExitUsage;
  }
  if (!config_path.empty()) {
    try {
      apply_config_file(config_path, app);
    } catch (const CLI::ParseError& e) {
      usage(fmt::format("config: {}", e.what()));
    }
  }

  cfg.command = app.get_subcommands().front()->get_name();
  if (cfg.command == "solve") return cmd_solve(cfg);
  if (cfg.command == "period") return cmd_period(cfg);
  if (cfg.command == "verify") return cmd_verify(cfg);
  if (cfg.command == "bounds") return cmd_bounds(cfg);
  if (cfg.command == "compare") return cmd_compare(cfg);
  return cmd_sweep(cfg);
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Error& e) {
    std::cerr << osc::io::to_json(e).dump() << '\n';
    return osc::is_usage_error(e.kind()) ? kExitUsage : kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << Json{{"error", "Internal"}, {"message", e.what()}}.dump() << '\n';
    return kExitNumerical;
  }
}
