#include "polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "osc/power_series.hpp"

namespace osc::detail {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double eval(std::span<const double> p, double x) { return series::horner(p, x); }

double bisect(std::span<const double> p, double lo, double hi) {
  double f_lo = eval(p, lo);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = eval(p, mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::vector<double> trimmed(std::span<const double> p) {
  std::vector<double> out(p.begin(), p.end());
  while (!out.empty() && out.back() == 0.0) out.pop_back();
  return out;
}

std::vector<double> derivative(std::span<const double> p) {
  if (p.size() <= 1) return {};
  std::vector<double> out(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) out[i - 1] = static_cast<double>(i) * p[i];
  return out;
}

std::vector<double> deflate(std::span<const double> p, double root) {
  if (p.size() <= 1) return {};
  std::vector<double> q(p.size() - 1);
  double carry = p.back();
  for (std::size_t i = p.size() - 1; i-- > 0;) {
    q[i] = carry;
    carry = p[i] + carry * root;
  }
  return q;
}

double magnitude(std::span<const double> p, double x) {
  double acc = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * std::abs(x) + std::abs(*it);
  return acc;
}

std::vector<double> real_roots(std::span<const double> coeffs) {
  const std::vector<double> p = trimmed(coeffs);
  if (p.size() <= 1) return {};
  if (p.size() == 2) return {-p[0] / p[1]};

  double bound = 0.0;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) bound = std::max(bound, std::abs(p[i] / p.back()));
  bound += 1.0;

  const std::vector<double> dp = derivative(p);
  std::vector<double> breaks{-bound};
  for (double c : real_roots(dp)) {
    if (c > -bound && c < bound) breaks.push_back(c);
  }
  breaks.push_back(bound);
  std::sort(breaks.begin(), breaks.end());

  std::vector<double> roots;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double a = breaks[i];
    const double b = breaks[i + 1];
    const double fa = eval(p, a);
    const double fb = eval(p, b);
    if (fa == 0.0 || fb == 0.0) continue;  // handled as critical points below
    if ((fa < 0.0) != (fb < 0.0)) roots.push_back(newton_polish(p, bisect(p, a, b), 2));
  }
  for (std::size_t i = 1; i + 1 < breaks.size(); ++i) {
    const double c = breaks[i];
    if (std::abs(eval(p, c)) <= 64.0 * kEps * magnitude(p, c)) roots.push_back(c);
  }
  std::sort(roots.begin(), roots.end());
  std::vector<double> unique;
  for (double r : roots) {
    if (unique.empty() || std::abs(r - unique.back()) > 1e-12 * std::max(1.0, std::abs(r))) {
      unique.push_back(r);
    }
  }
  return unique;
}

double newton_polish(std::span<const double> p, double x, int iterations) {
  const std::vector<double> dp = derivative(p);
  for (int i = 0; i < iterations; ++i) {
    const double f = eval(p, x);
    const double df = eval(dp, x);
    if (f == 0.0 || df == 0.0) break;
    const double step = f / df;
    const double next = x - step;
    if (!std::isfinite(next)) break;
    // Reject steps that make the residual worse (near-double roots).
    if (std::abs(eval(p, next)) > std::abs(f)) break;
    x = next;
    if (std::abs(step) <= kEps * std::abs(x)) break;
  }
  return x;
}

}  // namespace osc::detail
