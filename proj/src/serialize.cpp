#include "osc/serialize.hpp"

#include <cmath>

#include <fmt/format.h>

namespace osc::io {

namespace {

Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json numbers(std::span<const double> xs) {
  Json out = Json::array();
  for (double x : xs) out.push_back(number(x));
  return out;
}

double read_double(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorKind::InvalidArgument, fmt::format("missing field '{}'", key));
  }
  const Json& v = j.at(key);
  if (v.is_null()) return std::nan("");
  if (!v.is_number()) {
    throw Error(ErrorKind::InvalidArgument, fmt::format("field '{}' is not a number", key));
  }
  return v.get<double>();
}

std::vector<double> read_coefficients(const Json& j) {
  if (!j.contains("coefficients") || !j.at("coefficients").is_array()) {
    throw Error(ErrorKind::InvalidArgument, "missing array 'coefficients'");
  }
  std::vector<double> out;
  for (const Json& v : j.at("coefficients")) {
    if (v.is_null()) {
      out.push_back(std::nan(""));
    } else if (v.is_number()) {
      out.push_back(v.get<double>());
    } else {
      throw Error(ErrorKind::InvalidArgument, "non-numeric coefficient");
    }
  }
  return out;
}

void expect_type(const Json& j, const char* type) {
  if (!j.is_object() || !j.contains("type") || j.at("type") != type) {
    throw Error(ErrorKind::InvalidArgument, fmt::format("expected a '{}' series", type));
  }
}

Json scan_json(const diagnostics::ScanReport& scan) {
  return {{"name", scan.name},
          {"grid", scan.grid},
          {"points", scan.points},
          {"violation_count", scan.violation_count},
          {"violations", numbers(scan.violations)},
          {"note", "numerical scan over a finite grid; evidence, not proof"}};
}

Json bound_json(const diagnostics::BoundCheck& b) {
  return {{"epsilon", number(b.epsilon)},
          {"k", number(b.k)},
          {"holds", b.holds},
          {"worst_index", b.worst_index},
          {"worst_ratio", number(b.worst_ratio)}};
}

}  // namespace

std::string format_double(double x) { return fmt::format("{:.17g}", x); }

Json to_json(const ShiftRecord& shift) {
  return {{"offset", number(shift.offset)},
          {"scale", number(shift.scale)},
          {"time_scale", number(shift.time_scale)}};
}

Json to_json(const GeneralProblem& p) {
  return {{"A", number(p.A)}, {"B", number(p.B)},   {"C", number(p.C)},
          {"D", number(p.D)}, {"v0", number(p.v0)}, {"label", std::string(to_string(p.label))},
          {"shift", to_json(p.shift)}};
}

Json to_json(const SinPowerSeries& s) {
  return {{"type", "sin_power"},
          {"omega_series", number(s.omega_series)},
          {"n_terms", s.n_terms()},
          {"coefficients", numbers(s.coeffs)},
          {"problem", to_json(s.problem)}};
}

Json to_json(const TaylorSeries& s) {
  return {{"type", "taylor"},
          {"n_terms", s.n_terms()},
          {"coefficients", numbers(s.coeffs)},
          {"problem", to_json(s.problem)}};
}

Json to_json(const PeriodEstimate& e) {
  return {{"T", number(e.T)},
          {"omega", number(e.omega_pi_over_T)},
          {"turning_points", numbers(std::vector<double>{e.x_minus, e.x_plus})},
          {"method", std::string(to_string(e.method))},
          {"err", number(e.err_estimate)}};
}

Json to_json(const diagnostics::DiagnosticsReport& r) {
  Json out;
  out["positivity"] = r.positivity;
  out["positivity_premise"] = r.positivity_premise;
  if (r.identity) {
    out["identity"] = {{"lhs", number(r.identity->lhs)},
                       {"rhs", number(r.identity->rhs)},
                       {"residual", number(r.identity->residual)},
                       {"n_terms", r.identity->n_terms}};
  } else {
    out["identity"] = nullptr;
  }
  if (r.decay) {
    out["decay"] = {{"alpha_fit", number(r.decay->alpha_fit)},
                    {"k_fit", number(r.decay->k_fit)},
                    {"R_fit", number(r.decay->geometric_ratio)},
                    {"better_model", r.decay->better == diagnostics::DecayModel::Geometric
                                         ? "geometric"
                                         : "power"},
                    {"bound", bound_json(r.bound)}};
  } else {
    out["decay"] = {{"terminates", true}, {"bound", bound_json(r.bound)}};
  }
  out["tail_growth_relative"] = number(r.tail_growth_relative);
  out["scans"] = Json::array();
  for (const auto& scan : r.scans) out["scans"].push_back(scan_json(scan));
  out["checks"] = Json::array();
  for (const auto& c : r.checks) {
    out["checks"].push_back({{"name", c.name},
                             {"passed", c.passed},
                             {"skipped", c.skipped},
                             {"value", number(c.value)},
                             {"threshold", number(c.threshold)},
                             {"detail", c.detail}});
  }
  out["passed"] = r.all_passed();
  return out;
}

Json to_json(const Error& error) {
  Json out = {{"error", std::string(to_string(error.kind()))}, {"message", error.what()}};
  if (error.index()) out["index"] = *error.index();
  return out;
}

GeneralProblem problem_from_json(const Json& j) {
  GeneralProblem p;
  p.A = read_double(j, "A");
  p.B = read_double(j, "B");
  p.C = read_double(j, "C");
  p.D = read_double(j, "D");
  p.v0 = read_double(j, "v0");
  if (j.contains("label")) {
    if (!j.at("label").is_string()) throw Error(ErrorKind::InvalidArgument, "label is not a string");
    p.label = parse_label(j.at("label").get<std::string>());
  }
  if (j.contains("shift")) {
    const Json& s = j.at("shift");
    p.shift.offset = read_double(s, "offset");
    p.shift.scale = read_double(s, "scale");
    p.shift.time_scale = read_double(s, "time_scale");
  }
  return p;
}

SinPowerSeries sin_series_from_json(const Json& j) {
  expect_type(j, "sin_power");
  SinPowerSeries s;
  s.omega_series = read_double(j, "omega_series");
  s.coeffs = read_coefficients(j);
  if (!j.contains("problem")) throw Error(ErrorKind::InvalidArgument, "missing field 'problem'");
  s.problem = problem_from_json(j.at("problem"));
  return s;
}

TaylorSeries taylor_from_json(const Json& j) {
  expect_type(j, "taylor");
  TaylorSeries s;
  s.coeffs = read_coefficients(j);
  if (!j.contains("problem")) throw Error(ErrorKind::InvalidArgument, "missing field 'problem'");
  s.problem = problem_from_json(j.at("problem"));
  return s;
}

std::string coefficients_csv(std::span<const double> coeffs) {
  std::string out = "index,coefficient\n";
  for (std::size_t n = 0; n < coeffs.size(); ++n) {
    out += fmt::format("{},{}\n", n, format_double(coeffs[n]));
  }
  return out;
}

std::string trajectory_csv(const Trajectory& traj) {
  std::string out = "t,v,v_prime\n";
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    out += fmt::format("{},{},{}\n", format_double(traj.times[i]), format_double(traj.values[i]),
                       format_double(traj.velocities[i]));
  }
  return out;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace osc::io
