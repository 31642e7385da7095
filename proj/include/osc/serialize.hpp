#pragma once

#include <span>
#include <string>

#include "json.hpp"

#include "osc/diagnostics.hpp"
#include "osc/error.hpp"
#include "osc/model.hpp"
#include "osc/period.hpp"
#include "osc/reference_oracle.hpp"
#include "osc/sin_series.hpp"
#include "osc/taylor_series.hpp"

// JSON and CSV forms of the library types. JSON numbers use the shortest
// representation that round-trips exactly; CSV fields use 17 significant
// digits. Non-finite doubles become null in JSON.
namespace osc::io {

using Json = nlohmann::json;

std::string format_double(double x);

Json to_json(const ShiftRecord& shift);
Json to_json(const GeneralProblem& problem);
Json to_json(const SinPowerSeries& series);
Json to_json(const TaylorSeries& series);
Json to_json(const PeriodEstimate& estimate);
Json to_json(const diagnostics::DiagnosticsReport& report);
Json to_json(const Error& error);

/// Loaders throw InvalidArgument on missing or mistyped fields.
GeneralProblem problem_from_json(const Json& j);
SinPowerSeries sin_series_from_json(const Json& j);
TaylorSeries taylor_from_json(const Json& j);

/// "index,coefficient" rows.
std::string coefficients_csv(std::span<const double> coeffs);
/// "t,v,v_prime" rows.
std::string trajectory_csv(const Trajectory& traj);

/// Pretty-printed JSON text ending in a newline.
std::string dump(const Json& j);

}  // namespace osc::io
