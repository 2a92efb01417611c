#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "cppm/pricing.hpp"

namespace cppm {

double DelayExponential(double c, double tau, double t) {
  if (!(tau > 0.0)) throw std::invalid_argument("delay exponential needs tau > 0");
  if (c < 0.0 || t < 0.0) throw std::invalid_argument("delay exponential needs c >= 0 and t >= 0");
  // On [(n-1)tau, n tau): 1 + sum_{j=1}^{n} c^j (t - (j-1)tau)^j / j!
  const long n = static_cast<long>(std::floor(t / tau)) + 1;
  double sum = 1.0;
  for (long j = 1; j <= n; ++j) {
    const double s = t - (j - 1) * tau;
    if (s <= 0.0 || c == 0.0) break;
    const double log_term = j * std::log(c * s) - std::lgamma(j + 1.0);
    const double term = std::exp(log_term);
    sum += term;
    // terms decrease geometrically once c*s < (j+1)/2
    if (term < 1e-18 * sum && 2.0 * c * s < j + 1.0) break;
  }
  return sum;
}

GridFunction SolveForwardDelayIntegral(const DelayRecursion& rec, int grid_size) {
  if (grid_size < 1) throw std::invalid_argument("grid size must be positive");
  const int m = grid_size;
  const double h = 1.0 / m;
  const double tau = 1.0 - rec.window;
  std::vector<double> f(m + 1, 0.0);
  std::vector<double> cum(m + 1, 0.0);  // int_0^{x_n} of the interpolant of f
  auto self_primitive = [&](double s, int known) {
    // s <= x_known
    if (s <= 0.0) return 0.0;
    int i = std::min(static_cast<int>(s * m), known - 1);
    if (i < 0) i = 0;
    const double d = s - i * h;
    const double fs = f[i] + (d / h) * (f[i + 1] - f[i]);
    return cum[i] + 0.5 * d * (f[i] + fs);
  };

  for (int n = 0; n <= m; ++n) {
    const double x = n * h;
    if (x <= rec.floor_until) {
      f[n] = rec.floor_value;
    } else {
      const double s = std::max(0.0, x - tau);
      double rest = rec.base;
      if (rec.backward) rest += rec.backward->Integral(x, std::min(1.0, x + rec.window));
      if (rec.prefix) rest += rec.prefix->Primitive(s);
      const double xp = (n - 1) * h;
      if (rec.self_weight == 0.0 || s <= 0.0) {
        f[n] = rec.scale * rest;
      } else if (n > 0 && s <= xp) {
        f[n] = rec.scale * (rest + rec.self_weight * self_primitive(s, n - 1));
      } else if (n == 0) {
        f[n] = rec.scale * rest;
      } else {
        // s in (x_{n-1}, x_n]: int_0^s f = a + b * f[n]
        const double d = s - xp;
        const double theta = d / h;
        const double a = cum[n - 1] + 0.5 * d * (2.0 - theta) * f[n - 1];
        const double b = 0.5 * d * theta;
        const double coeff = 1.0 - rec.scale * rec.self_weight * b;
        if (!(coeff > 0.0))
          throw NumericalError("nonpositive coefficient in implicit sliver solve at x=" + std::to_string(x));
        f[n] = rec.scale * (rest + rec.self_weight * a) / coeff;
      }
    }
    if (n > 0) cum[n] = cum[n - 1] + 0.5 * h * (f[n - 1] + f[n]);
  }
  return GridFunction(std::move(f));
}

double DefaultAlphaCeiling(double L, double U) { return 64.0 * (1.0 + std::log(U / L)); }

namespace {

struct Probe {
  double alpha;
  double top;
};

AlphaSearch Bisect(const std::function<double(double)>& top, double U, double lo, double hi, double tol,
                   std::vector<Probe>& probes) {
  AlphaSearch out;
  out.alpha = hi;
  out.top = std::numeric_limits<double>::quiet_NaN();
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    const double t = top(mid);
    probes.push_back({mid, t});
    if (std::abs(t - U) <= tol * U) {
      out.alpha = mid;
      out.top = t;
      return out;
    }
    if (t >= U) {
      hi = mid;
      out.top = t;
    } else {
      lo = mid;
    }
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) break;
  }
  out.alpha = hi;
  if (std::isnan(out.top)) out.top = top(hi);
  return out;
}

}  // namespace

AlphaSearch CalibrateAlpha(const std::function<double(double)>& top, double U, double hi, double tol) {
  const double lo = 1.0;
  std::vector<Probe> probes;
  const double t_lo = top(lo);
  probes.push_back({lo, t_lo});
  if (t_lo >= U * (1.0 - tol)) return {lo, t_lo, 1, false};
  const double t_hi = top(hi);
  probes.push_back({hi, t_hi});
  if (!(t_hi >= U)) {
    throw NumericalError("boundary not bracketed: top(" + std::to_string(lo) + ")=" + std::to_string(t_lo) +
                         ", top(" + std::to_string(hi) + ")=" + std::to_string(t_hi) +
                         " vs U=" + std::to_string(U));
  }
  AlphaSearch res = Bisect(top, U, lo, hi, tol, probes);
  std::vector<Probe> sorted = probes;
  std::sort(sorted.begin(), sorted.end(), [](const Probe& a, const Probe& b) { return a.alpha < b.alpha; });
  bool monotone = true;
  for (size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i].top < sorted[i - 1].top - 1e-9 * U) monotone = false;
  if (monotone) {
    res.probes = static_cast<int>(probes.size());
    return res;
  }
  // Uniform scan for the first crossing, then bisect inside that cell.
  const int kScan = 128;
  double prev = lo;
  double first = hi;
  for (int j = 1; j <= kScan; ++j) {
    const double a = lo + (hi - lo) * j / kScan;
    const double t = top(a);
    probes.push_back({a, t});
    if (t >= U * (1.0 - tol)) {
      first = a;
      break;
    }
    prev = a;
  }
  AlphaSearch refined = Bisect(top, U, prev, first, tol, probes);
  refined.probes = static_cast<int>(probes.size());
  refined.scanned = true;
  return refined;
}

}  // namespace cppm
