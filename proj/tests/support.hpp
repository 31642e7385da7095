#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "osc/model.hpp"

namespace osc::testing {

struct GridCase {
  double omega = 0.0;
  double beta = 0.0;
  double a0 = 0.0;
  double q = 0.0;  // beta a0 / omega^2 (quadratic) or beta a0^2 / omega^2 (cubic)
  GeneralProblem problem{};
};

// Quadratic: omega in {0.5, 1, 2}, beta in {1, -2}, beta a0 / omega^2 in {+-0.1, +-0.3}.
inline std::vector<GridCase> quadratic_grid() {
  std::vector<GridCase> out;
  for (double omega : {0.5, 1.0, 2.0}) {
    for (double beta : {1.0, -2.0}) {
      for (double q : {-0.3, -0.1, 0.1, 0.3}) {
        const double a0 = q * omega * omega / beta;
        out.push_back({omega, beta, a0, q, make_quadratic_shifted(omega, beta, a0)});
      }
    }
  }
  return out;
}

// Cubic (raw form): omega in {0.5, 1, 2}, beta a0^2 / omega^2 in {+-0.25, +-0.5},
// amplitudes a0 in {0.5, 1}.
inline std::vector<GridCase> cubic_grid() {
  std::vector<GridCase> out;
  for (double omega : {0.5, 1.0, 2.0}) {
    for (double a0 : {0.5, 1.0}) {
      for (double q : {-0.5, -0.25, 0.25, 0.5}) {
        const double beta = q * omega * omega / (a0 * a0);
        out.push_back({omega, beta, a0, q, make_cubic(omega, beta, a0)});
      }
    }
  }
  return out;
}

inline std::vector<GridCase> standard_grid() {
  auto out = quadratic_grid();
  for (auto& c : cubic_grid()) out.push_back(c);
  return out;
}

inline double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
  double sign() { return uniform(0.0, 1.0) < 0.5 ? -1.0 : 1.0; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace osc::testing
