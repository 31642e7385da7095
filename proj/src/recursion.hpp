#pragma once

#include <cstddef>
#include <vector>

#include "osc/model.hpp"

namespace osc::detail {

// Solves (n+1)(n+2) x_{n+2} = diag n^2 x_n
//     + (A [n = 0] + B x_n + C (x*x)_n + D (x*x*x)_n) / freq2
// with x_0 = v0, x_1 = 0, for orders 0..n_terms.
//
// diag = 1, freq2 = Omega^2 gives the sin-power coefficients; diag = 0,
// freq2 = 1 gives the Taylor coefficients.
std::vector<double> solve_recursion(const GeneralProblem& problem,
                                    std::size_t n_terms, double diag,
                                    double freq2);

// Orders above this use compensated convolutions.
inline constexpr std::size_t kCompensatedAbove = 128;

}  // namespace osc::detail
