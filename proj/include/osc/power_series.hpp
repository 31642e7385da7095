#pragma once

#include <cstddef>
#include <span>
#include <vector>

// Truncated power-series arithmetic shared by the sin-power and Taylor
// solvers. Coefficients are stored in ascending order.
namespace osc::series {

/// Running sum with Neumaier compensation.
class CompensatedSum {
 public:
  void add(double x);
  double value() const { return sum_ + correction_; }

 private:
  double sum_ = 0.0;
  double correction_ = 0.0;
};

/// (a * b)_n = sum_{r=0}^{n} a_r b_{n-r}. Entries past the end of either
/// span are treated as zero.
double cauchy_term(std::span<const double> a, std::span<const double> b,
                   std::size_t n, bool compensated = false);

/// Product of a and b truncated to n_terms + 1 coefficients (orders 0..n_terms).
std::vector<double> multiply(std::span<const double> a,
                             std::span<const double> b, std::size_t n_terms);

/// sum_n coeffs[n] x^n.
double horner(std::span<const double> coeffs, double x);

}  // namespace osc::series
