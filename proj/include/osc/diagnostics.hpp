#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "osc/sin_series.hpp"

// Numerical checks of the convergence claims for sin-power series: the
// positivity and sum identity behind absolute convergence, the power-law
// decay bound on the coefficients, and the auxiliary inequalities used to
// prove it. Scans are evidence over a finite grid, not proofs.
namespace osc::diagnostics {

/// True iff every computed coefficient is >= 0.
bool check_positivity(const SinPowerSeries& series);

/// Holds when c_0 > 0, c_2 > 0, C > 0 and B = D = 0; then every coefficient
/// must be non-negative.
bool positivity_premise(const SinPowerSeries& series);

struct IdentityReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;  // |lhs - rhs|
  std::size_t n_terms = 0;
};

/// The quadratic ODE evaluated at the quarter period s = 1, written with
/// beta = -C and W the series frequency:
///   lhs = -beta S^2 + W^2 M,  rhs = -beta c_0^2 - 2 W^2 c_2,
/// where S = sum c_n and M = sum n c_n. Throws WrongForm unless B = D = 0.
IdentityReport check_sum_identity(const SinPowerSeries& series);

enum class DecayModel { PowerLaw, Geometric };

/// Pointwise test of |c_n| < k n^{-3/2 + epsilon} over even n in [2, N].
struct BoundCheck {
  double epsilon = 0.0;
  double k = 0.0;
  bool holds = true;
  std::size_t worst_index = 0;
  double worst_ratio = 0.0;  // max |c_n| / (k n^{-3/2+eps}); holds iff < 1
};

struct DecayReport {
  double alpha_fit = 0.0;        // |c_n| ~ k n^{-alpha}
  double k_fit = 0.0;
  double geometric_ratio = 0.0;  // |c_n| ~ g R^n
  double geometric_prefactor = 0.0;
  double power_rss = 0.0;
  double geometric_rss = 0.0;
  DecayModel better = DecayModel::PowerLaw;
  std::size_t fit_points = 0;
  std::vector<BoundCheck> bounds;
};

/// Least-squares fits of log|c_n| over the nonzero coefficients in the tail
/// half [N/2, N], against both -alpha log n + log k and n log R + log g.
/// Throws AllZero when c_n = 0 for every n >= 1 (the series terminates) and
/// InvalidArgument with fewer than 16 nonzero coefficients.
DecayReport fit_decay(std::span<const double> coeffs);
DecayReport fit_decay(const SinPowerSeries& series);

BoundCheck lemma2_bound(std::span<const double> coeffs, double epsilon, double k);
bool check_lemma2_bound(const SinPowerSeries& series, double epsilon, double k);

/// Induction base for the decay bound: the smallest k (times 1 + 1e-12) for
/// which the bound holds on the even indices 2..window. Whether the remaining
/// coefficients stay under the same envelope is what lemma2_bound then tests.
double induction_base_constant(std::span<const double> coeffs, double epsilon,
                               std::size_t window = 8);

/// The two printed forms of the decay-bound constant, side by side:
///   statement: k < (beta/w^2) (3/4) eps 4^{eps - 1/2}
///   proof:     k <= (3/2) 4^{1 - alpha} (3 - 2 alpha)
struct Lemma2Constants {
  double epsilon = 0.0;
  double alpha = 0.0;
  double beta_over_omega2 = 0.0;
  double k_statement = 0.0;
  double k_proof = 0.0;
  double ratio = 0.0;               // k_statement / k_proof (inf if k_proof == 0)
  bool same_power_of_four = false;  // eps - 1/2 == 1 - alpha
  bool proof_admits_positive_k = false;
};

Lemma2Constants check_lemma2_constant(double epsilon, double alpha,
                                      double beta_over_omega2);

struct InequalitySides {
  double lhs = 0.0;
  double rhs = 0.0;
};

/// lhs = sum_{0<r<p} 1/(r^alpha (p-r)^alpha), rhs = 1/(p-1)^{alpha-1}.
InequalitySides convolution_inequality(std::size_t p, double alpha);

struct ProofFunctions {
  double f = 0.0;
  double g = 0.0;
  double pfg = 0.0;
};

/// f(p) = ((p+1)/p) ((p-1)/(p+2))^{alpha-1}
/// g(p) = 1 - (p^2 - q c0) (p+2)^{alpha-1} / ((p+1) p^alpha), q = beta/w^2
/// pfg  = p f(p) g(p)
/// g is evaluated through log1p/expm1 so that p g(p) keeps its digits for
/// large p.
ProofFunctions proof_functions(double p, double alpha, double beta_over_omega2,
                               double c0);

/// 1/n^{alpha-2} + (k^2 + 3 c0 k)/(n-2)^{alpha-1} + (2 c0 + 2 c0 c1)/(n-1)^alpha
///   < (n+1)/(n+2)^{alpha-1}
bool cubic_bound_condition(double n, double alpha, double k, double c0, double c1);
InequalitySides cubic_bound_sides(double n, double alpha, double k, double c0, double c1);

inline constexpr std::size_t kCubicScanMin = 3;
inline constexpr std::size_t kCubicScanMax = 10'000;

struct CubicConstantSearch {
  bool exists = false;        // some k > 0 satisfies every n in range
  double k_max = 0.0;         // largest admissible k (bisection)
  std::size_t worst_n = 0;    // first n failing at k = 0 when !exists, else binding n at k_max
  std::size_t n_min = kCubicScanMin;
  std::size_t n_max = kCubicScanMax;
};

/// Bisection on k with a worst-n inner loop over [n_min, n_max].
CubicConstantSearch admissible_cubic_k(double alpha, double c0, double c1,
                                       std::size_t n_min = kCubicScanMin,
                                       std::size_t n_max = kCubicScanMax);

struct ScanReport {
  std::string name;
  std::string grid;
  std::size_t points = 0;
  std::size_t violation_count = 0;
  std::vector<double> violations;  // first few violating grid points
  bool passed() const { return violation_count == 0; }
};

ScanReport scan_convolution_inequality(double alpha, std::size_t p_max = 10'000);
/// f increasing and f(p) >= (3/2) 4^{1-alpha} on p in [2, p_max].
ScanReport scan_f_lower_bound(double alpha, std::size_t p_max = 10'000);
/// p g(p) > 3 - 2 alpha on p in [2, p_max].
ScanReport scan_pg_lower_bound(double alpha, double beta_over_omega2_c0,
                               std::size_t p_max = 10'000);
/// p f g strictly decreasing on a logarithmic grid up to p_max, ending below
/// `final_below`.
ScanReport scan_pfg_decreasing(double alpha, double beta_over_omega2_c0,
                               double p_max = 1e6, double final_below = 1e-3,
                               std::size_t per_decade = 20);

struct CheckResult {
  std::string name;
  bool passed = true;
  bool skipped = false;
  double value = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct VerifyOptions {
  double epsilon = 0.1;
  double tail_tol = 1e-6;      // tail_growth / max|c_n|
  double identity_tol = 1e-8;  // times max(1, |rhs|)
  double residual_tol = 1e-6;  // times max(1, W^2 max|c_n|)
  double oracle_tol = 1e-7;    // times max(1, |v0|)
  double rk_tol = 1e-11;
  std::size_t samples = 128;
  bool run_oracle = true;
  bool run_scans = true;
};

struct DiagnosticsReport {
  bool positivity = false;
  bool positivity_premise = false;
  std::optional<IdentityReport> identity;
  std::optional<DecayReport> decay;  // empty when the series terminates
  double tail_growth_relative = 0.0;
  BoundCheck bound{};
  std::vector<ScanReport> scans;
  std::vector<CheckResult> checks;

  bool all_passed() const;
};

/// Runs every applicable check on one series. Scans are informational and
/// do not affect all_passed().
DiagnosticsReport verify_series(const SinPowerSeries& series,
                                const VerifyOptions& options = {});

}  // namespace osc::diagnostics
