#pragma once

#include <cstddef>
#include <vector>

#include "osc/model.hpp"
#include "osc/sin_series.hpp"

namespace osc {

/// v(t) = sum_k b_k t^k, coefficients b_0..b_M.
struct TaylorSeries {
  std::vector<double> coeffs;
  GeneralProblem problem{};

  std::size_t n_terms() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
};

/// (k+1)(k+2) b_{k+2} = A [k = 0] + B b_k + C (b*b)_k + D (b*b*b)_k,
/// b_0 = v0, b_1 = 0.
TaylorSeries compute_taylor_coefficients(const GeneralProblem& problem,
                                         std::size_t n_terms);

/// Re-expands sum c_{2m} w^m with w = sin^2(W t) as a power series in t,
/// truncated at order n_terms. Requires all odd c_n to be zero.
TaylorSeries sin_series_to_taylor(const SinPowerSeries& series,
                                  std::size_t n_terms);

double evaluate_taylor(const TaylorSeries& series, double t);

/// Median over the tail half of |b_{2k} / b_{2k+2}|^{1/2}. Infinite when the
/// tail is exactly zero. Only meant for warnings.
double estimate_radius(const TaylorSeries& series);

}  // namespace osc
