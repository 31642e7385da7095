#include "osc/power_series.hpp"

#include <algorithm>
#include <cmath>

namespace osc::series {

void CompensatedSum::add(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    correction_ += (sum_ - t) + x;
  } else {
    correction_ += (x - t) + sum_;
  }
  sum_ = t;
}

double cauchy_term(std::span<const double> a, std::span<const double> b,
                   std::size_t n, bool compensated) {
  if (a.empty() || b.empty()) return 0.0;
  // r ranges over indices valid for both a_r and b_{n-r}.
  const std::size_t r_lo = n >= b.size() ? n - (b.size() - 1) : 0;
  const std::size_t r_hi = std::min(n, a.size() - 1);
  if (r_lo > r_hi) return 0.0;
  if (compensated) {
    CompensatedSum sum;
    for (std::size_t r = r_lo; r <= r_hi; ++r) sum.add(a[r] * b[n - r]);
    return sum.value();
  }
  double sum = 0.0;
  for (std::size_t r = r_lo; r <= r_hi; ++r) sum += a[r] * b[n - r];
  return sum;
}

std::vector<double> multiply(std::span<const double> a,
                             std::span<const double> b, std::size_t n_terms) {
  std::vector<double> out(n_terms + 1, 0.0);
  for (std::size_t n = 0; n <= n_terms; ++n) out[n] = cauchy_term(a, b, n);
  return out;
}

double horner(std::span<const double> coeffs, double x) {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

}  // namespace osc::series
