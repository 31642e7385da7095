#include "recursion.hpp"

#include <cmath>
#include <span>

#include "osc/error.hpp"
#include "osc/power_series.hpp"

namespace osc::detail {

std::vector<double> solve_recursion(const GeneralProblem& problem,
                                    std::size_t n_terms, double diag,
                                    double freq2) {
  if (!std::isfinite(problem.v0)) {
    throw Error(ErrorKind::NonFinite, "initial value is not finite", 0);
  }
  const bool compensated = n_terms > kCompensatedAbove;
  const bool need_square = problem.C != 0.0 || problem.D != 0.0;
  const bool need_cube = problem.D != 0.0;

  std::vector<double> x(n_terms + 1, 0.0);
  std::vector<double> sq(n_terms + 1, 0.0);    // (x*x)_n
  std::vector<double> cube(n_terms + 1, 0.0);  // (x*x*x)_n
  x[0] = problem.v0;

  const std::span<const double> xs{x};
  const std::span<const double> sqs{sq};
  for (std::size_t n = 0; n + 2 <= n_terms; ++n) {
    if (need_square) sq[n] = series::cauchy_term(xs.first(n + 1), xs.first(n + 1), n, compensated);
    if (need_cube) cube[n] = series::cauchy_term(xs.first(n + 1), sqs.first(n + 1), n, compensated);

    const double nn = static_cast<double>(n);
    double value;
    if (n == 0) {
      value = (problem.A + problem.B * x[0] + problem.C * sq[0] + problem.D * cube[0]) / freq2;
    } else {
      const double nonlinear = problem.B * x[n] + problem.C * sq[n] + problem.D * cube[n];
      value = diag * nn * nn * x[n] + nonlinear / freq2;
    }
    x[n + 2] = value / ((nn + 1.0) * (nn + 2.0));
    if (!std::isfinite(x[n + 2])) {
      throw Error(ErrorKind::NonFinite, "series coefficient overflowed", n + 2);
    }
  }
  return x;
}

}  // namespace osc::detail
