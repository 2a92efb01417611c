#include <algorithm>
#include <limits>
#include <stdexcept>

#include "cppm/pricing.hpp"

namespace cppm {

LbReport CheckStaticLbConstraints(const PricingProfile& profile, double alpha, int n_probe) {
  if (profile.num_levels() != 1) throw std::invalid_argument("lower-bound check needs a single-level profile");
  if (n_probe < 2) throw std::invalid_argument("n_probe must be at least 2");
  const MarketParams& p = profile.params;
  const GridFunction& phi = profile.levels.front();
  const double delta = p.delta_risk;
  LbReport rep;
  const double psi_l = phi.UpperInverse(p.L);
  rep.floor_violation = (1.0 - delta + delta / alpha) - psi_l;
  rep.integral_violation = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < n_probe; ++j) {
    const double v = p.L + (p.U - p.L) * j / (n_probe - 1);
    const double s = delta - 1.0 + phi.UpperInverse(v);
    double lhs = (p.L / delta) * std::min(s, psi_l);
    if (s > psi_l) lhs += phi.Integral(psi_l, s) / delta;
    const double target = v / alpha;
    const double viol = delta * (target - lhs) / p.L;
    if (viol > rep.integral_violation) {
      rep.integral_violation = viol;
      rep.worst_v = v;
    }
  }
  rep.max_violation = std::max(rep.floor_violation, rep.integral_violation);
  return rep;
}

}  // namespace cppm
