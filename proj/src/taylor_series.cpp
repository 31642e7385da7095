#include "osc/taylor_series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "osc/error.hpp"
#include "osc/power_series.hpp"
#include "recursion.hpp"

namespace osc {

TaylorSeries compute_taylor_coefficients(const GeneralProblem& problem,
                                         std::size_t n_terms) {
  if (n_terms < 2) {
    throw Error(ErrorKind::InvalidArgument, "n_terms must be at least 2");
  }
  return TaylorSeries{detail::solve_recursion(problem, n_terms, 0.0, 1.0),
                      problem};
}

TaylorSeries sin_series_to_taylor(const SinPowerSeries& series,
                                  std::size_t n_terms) {
  for (std::size_t n = 1; n < series.coeffs.size(); n += 2) {
    if (series.coeffs[n] != 0.0) {
      throw Error(ErrorKind::InvalidArgument,
                  "sin-power series has a nonzero odd coefficient", n);
    }
  }
  // sin^2(W t) = (1 - cos 2Wt) / 2 = sum_{k>=1} (-1)^{k+1} (2W t)^{2k} / (2 (2k)!)
  std::vector<double> w(n_terms + 1, 0.0);
  const double two_w_sq = 4.0 * series.omega_series * series.omega_series;
  double term = 0.5;  // (2W)^{2k} / (2 (2k)!)
  for (std::size_t k = 1; 2 * k <= n_terms; ++k) {
    term *= two_w_sq / static_cast<double>((2 * k - 1) * (2 * k));
    w[2 * k] = (k % 2 == 1) ? term : -term;
  }

  // w^m starts at t^{2m}, so c_{2m} with 2m > n_terms cannot contribute.
  const std::size_t m_max =
      std::min(series.coeffs.empty() ? 0 : (series.coeffs.size() - 1) / 2,
               n_terms / 2);
  std::vector<double> acc(n_terms + 1, 0.0);
  if (!series.coeffs.empty()) acc[0] = series.coeffs[2 * m_max];
  for (std::size_t m = m_max; m-- > 0;) {
    acc = series::multiply(acc, w, n_terms);
    acc[0] += series.coeffs[2 * m];
  }
  return TaylorSeries{std::move(acc), series.problem};
}

double evaluate_taylor(const TaylorSeries& series, double t) {
  return series::horner(series.coeffs, t);
}

double estimate_radius(const TaylorSeries& series) {
  const auto& b = series.coeffs;
  std::vector<double> ratios;
  const std::size_t k_max = b.empty() ? 0 : (b.size() - 1) / 2;
  for (std::size_t k = k_max / 2; k + 1 <= k_max; ++k) {
    const double hi = b[2 * k + 2];
    const double lo = b[2 * k];
    if (hi != 0.0 && lo != 0.0) ratios.push_back(std::sqrt(std::abs(lo / hi)));
  }
  if (ratios.empty()) return std::numeric_limits<double>::infinity();
  const auto mid = ratios.begin() + static_cast<std::ptrdiff_t>(ratios.size() / 2);
  std::nth_element(ratios.begin(), mid, ratios.end());
  return *mid;
}

}  // namespace osc
