#pragma once

#include <span>
#include <vector>

// Small dense real polynomials, ascending coefficients.
namespace osc::detail {

std::vector<double> trimmed(std::span<const double> p);
std::vector<double> derivative(std::span<const double> p);

// Divides p by (x - root) and drops the remainder.
std::vector<double> deflate(std::span<const double> p, double root);

// Sum of |p_i| |x|^i, the scale against which p(x) ~ 0 is judged.
double magnitude(std::span<const double> p, double x);

// Real roots in ascending order. Roots of odd multiplicity are found by
// bisection on the monotone pieces between critical points; a critical point
// where |p| is within round-off of zero is reported as a (double) root.
std::vector<double> real_roots(std::span<const double> p);

double newton_polish(std::span<const double> p, double x, int iterations = 8);

}  // namespace osc::detail
