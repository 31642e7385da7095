#include "osc/reference_oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "osc/error.hpp"
#include "osc/period.hpp"

namespace osc {

namespace {

using State = std::array<double, 2>;  // (v, v')

// Dormand & Prince (1980), as tabulated by Hairer, Norsett & Wanner.
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                 a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
// Continuous extension.
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

struct Rhs {
  const GeneralProblem& problem;
  std::size_t* evaluations;
  State operator()(const State& y) const {
    ++*evaluations;
    return {y[1], problem.force(y[0])};
  }
};

State axpy(const State& y, double h, std::initializer_list<std::pair<double, const State*>> terms) {
  State out = y;
  for (const auto& [coef, k] : terms) {
    out[0] += h * coef * (*k)[0];
    out[1] += h * coef * (*k)[1];
  }
  return out;
}

double error_norm(const State& err, const State& y0, const State& y1, double tol) {
  double acc = 0.0;
  for (int i = 0; i < 2; ++i) {
    const double sc = tol + tol * std::max(std::abs(y0[i]), std::abs(y1[i]));
    acc += (err[i] / sc) * (err[i] / sc);
  }
  return std::sqrt(acc / 2.0);
}

double initial_step(const Rhs& f, const State& y0, const State& f0, double tol, double t_end) {
  auto norm = [&](const State& v) {
    double acc = 0.0;
    for (int i = 0; i < 2; ++i) {
      const double sc = tol + tol * std::abs(y0[i]);
      acc += (v[i] / sc) * (v[i] / sc);
    }
    return std::sqrt(acc / 2.0);
  };
  const double dn0 = norm(y0);
  const double dn1 = norm(f0);
  double h0 = (dn0 <= 1e-10 || dn1 <= 1e-10) ? 1e-6 : 0.01 * dn0 / dn1;
  h0 = std::min(h0, t_end);
  const State y1 = axpy(y0, h0, {{1.0, &f0}});
  const State f1 = f(y1);
  const double dn2 = norm(State{f1[0] - f0[0], f1[1] - f0[1]}) / h0;
  const double dmax = std::max(dn1, dn2);
  const double h1 = dmax <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dmax, 0.2);
  return std::min({100.0 * h0, h1, t_end});
}

}  // namespace

Trajectory integrate(const GeneralProblem& problem, double t_end, double tol,
                     std::size_t samples) {
  if (!(t_end > 0.0) || !std::isfinite(t_end)) {
    throw Error(ErrorKind::InvalidArgument, "integrate: t_end must be positive");
  }
  if (!(tol >= 1e-13 && tol <= 1e-3)) {
    throw Error(ErrorKind::InvalidArgument, "integrate: tol must lie in [1e-13, 1e-3]");
  }
  if (samples < 2) {
    throw Error(ErrorKind::InvalidArgument, "integrate: need at least 2 samples");
  }

  Trajectory traj;
  traj.tol = tol;
  traj.times.resize(samples);
  traj.values.resize(samples);
  traj.velocities.resize(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    traj.times[i] = i + 1 == samples
                        ? t_end
                        : t_end * static_cast<double>(i) / static_cast<double>(samples - 1);
  }
  traj.values[0] = problem.v0;
  traj.velocities[0] = 0.0;
  std::size_t next_sample = 1;

  const Rhs f{problem, &traj.stats.rhs_evaluations};
  State y{problem.v0, 0.0};
  State k1 = f(y);
  double t = 0.0;
  double h = initial_step(f, y, k1, tol, t_end);

  constexpr double kSafety = 0.9;
  constexpr double kBeta = 0.04;
  constexpr double kExpo = 0.2 - kBeta * 0.75;
  double fac_old = 1e-4;
  bool last_rejected = false;
  constexpr std::size_t kMaxSteps = 10'000'000;

  while (next_sample < samples) {
    if (traj.stats.accepted + traj.stats.rejected > kMaxSteps) {
      throw Error(ErrorKind::StepUnderflow, "integrate: step budget exhausted");
    }
    if (h < 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t))) {
      throw Error(ErrorKind::StepUnderflow, "integrate: step size underflow");
    }
    // Land on the next sample exactly: the interpolant is one order below
    // the step itself.
    const double target = traj.times[next_sample];
    const bool landing = h >= target - t;
    const double h_try = h;
    if (landing) h = target - t;

    const State k2 = f(axpy(y, h, {{a21, &k1}}));
    const State k3 = f(axpy(y, h, {{a31, &k1}, {a32, &k2}}));
    const State k4 = f(axpy(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
    const State k5 = f(axpy(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
    const State k6 = f(axpy(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
    const State y_new = axpy(y, h, {{a71, &k1}, {a73, &k3}, {a74, &k4}, {a75, &k5}, {a76, &k6}});
    const State k7 = f(y_new);
    if (!std::isfinite(y_new[0]) || !std::isfinite(y_new[1])) {
      throw Error(ErrorKind::NonFinite, "integrate: state overflowed");
    }

    State err{};
    for (int i = 0; i < 2; ++i) {
      err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
    }
    const double en = error_norm(err, y, y_new, tol);
    const double fac11 = std::pow(std::max(en, 1e-300), kExpo);

    if (en <= 1.0) {
      // Dense output on [t, t + h].
      std::array<State, 5> cont{};
      for (int i = 0; i < 2; ++i) {
        const double ydiff = y_new[i] - y[i];
        const double bspl = h * k1[i] - ydiff;
        cont[0][i] = y[i];
        cont[1][i] = ydiff;
        cont[2][i] = bspl;
        cont[3][i] = ydiff - h * k7[i] - bspl;
        cont[4][i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
      }
      const double t_new = landing ? target : t + h;
      while (next_sample < samples && traj.times[next_sample] <= t_new) {
        const double theta = (traj.times[next_sample] - t) / h;
        const double theta1 = 1.0 - theta;
        State out{};
        for (int i = 0; i < 2; ++i) {
          out[i] = cont[0][i] +
                   theta * (cont[1][i] + theta1 * (cont[2][i] + theta * (cont[3][i] + theta1 * cont[4][i])));
        }
        if (traj.times[next_sample] == t_new) out = y_new;
        traj.values[next_sample] = out[0];
        traj.velocities[next_sample] = out[1];
        ++next_sample;
      }

      ++traj.stats.accepted;
      double fac = fac11 / std::pow(fac_old, kBeta);
      fac = std::clamp(fac / kSafety, 0.1, 5.0);
      double h_new = h / fac;
      if (last_rejected) h_new = std::min(h_new, h);
      // A shortened landing step says nothing about the step size that the
      // error estimate would allow.
      if (landing) h_new = std::max(h_new, h_try);
      fac_old = std::max(en, 1e-4);
      last_rejected = false;
      y = y_new;
      k1 = k7;
      t = t_new;
      h = h_new;
    } else {
      ++traj.stats.rejected;
      h /= std::min(5.0, fac11 / kSafety);
      last_rejected = true;
    }
  }
  return traj;
}

std::vector<double> detect_turning_points(const Trajectory& traj) {
  std::vector<double> out;
  const auto& t = traj.times;
  const auto& v = traj.values;
  const auto& dv = traj.velocities;
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    if (i > 0 && dv[i] == 0.0) out.push_back(v[i]);
    const double va = dv[i];
    const double vb = dv[i + 1];
    if (va == 0.0 || vb == 0.0 || (va < 0.0) == (vb < 0.0)) continue;
    // Cubic Hermite on [0, 1]: p(s) with p(0) = v_a, p'(0) = h va, p(1) = v_b,
    // p'(1) = h vb. Its derivative is a quadratic with a sign change on [0, 1].
    const double h = t[i + 1] - t[i];
    const double y0 = v[i];
    const double y1 = v[i + 1];
    const double m0 = h * va;
    const double m1 = h * vb;
    auto hermite = [&](double s) {
      const double s2 = s * s;
      const double s3 = s2 * s;
      return (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * m0 + (-2 * s3 + 3 * s2) * y1 +
             (s3 - s2) * m1;
    };
    auto slope = [&](double s) {
      const double s2 = s * s;
      return (6 * s2 - 6 * s) * y0 + (3 * s2 - 4 * s + 1) * m0 + (-6 * s2 + 6 * s) * y1 +
             (3 * s2 - 2 * s) * m1;
    };
    double lo = 0.0;
    double hi = 1.0;
    const bool lo_negative = slope(lo) < 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      const double mid = 0.5 * (lo + hi);
      if ((slope(mid) < 0.0) == lo_negative) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    out.push_back(hermite(0.5 * (lo + hi)));
  }
  if (out.empty()) {
    throw Error(ErrorKind::NoTurning, "velocity never changes sign");
  }
  return out;
}

double energy_drift(const GeneralProblem& problem, const Trajectory& traj) {
  const double e0 = potential_energy(problem, problem.v0);
  double worst = 0.0;
  for (std::size_t i = 0; i < traj.values.size(); ++i) {
    const double e = 0.5 * traj.velocities[i] * traj.velocities[i] +
                     potential_energy(problem, traj.values[i]);
    worst = std::max(worst, std::abs(e - e0));
  }
  return worst;
}

}  // namespace osc
