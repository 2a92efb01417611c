#ifndef CPPM_TESTS_ORACLES_HPP_
#define CPPM_TESTS_ORACLES_HPP_

// Independent reference computations used by the tests.

#include <cmath>
#include <random>
#include <vector>

#include "cppm/model.hpp"

namespace testing_oracles {

// phi'(x) = c phi(x - tau), phi = 1 on [-tau, 0], integrated by Simpson steps
// whose delayed midpoints come from cubic Hermite interpolation.
inline double MethodOfSteps(double c, double tau, double t, double h_target = 1e-4) {
  const int n_delay = static_cast<int>(std::ceil(tau / h_target));
  const double h = tau / n_delay;
  const int steps = static_cast<int>(std::floor(t / h));
  std::vector<double> f(n_delay + steps + 2, 1.0), d(n_delay + steps + 2, 0.0);
  // index n_delay corresponds to x = 0
  auto delayed = [&](int i, double frac) {
    // value at x_i + frac*h via Hermite on [x_i, x_{i+1}]
    if (i + 1 <= n_delay) return f[i];
    const double p0 = f[i], p1 = f[i + 1], m0 = d[i] * h, m1 = d[i + 1] * h;
    const double s = frac, s2 = s * s, s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * p0 + (s3 - 2 * s2 + s) * m0 + (-2 * s3 + 3 * s2) * p1 + (s3 - s2) * m1;
  };
  for (int n = 0; n < steps; ++n) {
    const int cur = n_delay + n;
    const int lag = n;  // x - tau = x_n - tau = x_{n - n_delay}
    if (n == 0) d[cur] = c * f[lag];
    const double fa = c * f[lag];
    const double fm = c * delayed(lag, 0.5);
    const double fb = c * f[lag + 1];
    f[cur + 1] = f[cur] + h / 6.0 * (fa + 4.0 * fm + fb);
    d[cur + 1] = fb;
  }
  const double rem = t - steps * h;
  const int cur = n_delay + steps;
  if (rem <= 0.0) return f[cur];
  const double fa = c * f[steps];
  const double fm = c * delayed(steps, 0.5 * rem / h);
  const double fb = c * delayed(steps, rem / h);
  return f[cur] + rem / 6.0 * (fa + 4.0 * fm + fb);
}

// T uniform in [1, 3k], valuations log-uniform on [L, U].
inline cppm::Instance RandomInstance(std::mt19937_64& gen, double L, double U, int k) {
  std::uniform_int_distribution<int> len(1, 3 * k);
  std::uniform_real_distribution<double> u(std::log(L), std::log(U));
  cppm::Instance inst;
  const int n = len(gen);
  for (int i = 0; i < n; ++i) inst.valuations.push_back(std::min(U, std::max(L, std::exp(u(gen)))));
  return inst;
}

}  // namespace testing_oracles

#endif  // CPPM_TESTS_ORACLES_HPP_
