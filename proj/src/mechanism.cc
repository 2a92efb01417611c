#include "cppm/mechanism.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cppm/pricing.hpp"

namespace cppm {

namespace {

// thresholds[j] = sum_{l<j} q_l for 0-based level j.
std::vector<int> Thresholds(const PricingProfile& profile) {
  std::vector<int> th(profile.reservation.size(), 0);
  for (size_t j = 1; j < th.size(); ++j) th[j] = th[j - 1] + profile.reservation[j - 1];
  return th;
}

std::vector<double> PricesAt(const PricingProfile& profile, double r) {
  std::vector<double> p(profile.levels.size());
  for (size_t j = 0; j < p.size(); ++j) p[j] = profile.levels[j](r);
  return p;
}

void CheckSeed(double r) {
  if (!(r >= 0.0 && r <= 1.0)) throw std::invalid_argument("seed must lie in [0, 1]");
}

}  // namespace

SeedOutcome RunCppm(const PricingProfile& profile, const Instance& instance, double r) {
  CheckSeed(r);
  const int k = profile.params.k;
  const int top = profile.num_levels() - 1;
  const std::vector<int> th = Thresholds(profile);
  const std::vector<double> price = PricesAt(profile, r);
  const size_t n = instance.valuations.size();
  SeedOutcome out;
  out.seed = r;
  out.allocations.assign(n, 0);
  out.posted_prices.assign(n, 0.0);
  out.levels.assign(n, 0);
  out.units_by_level.assign(profile.num_levels(), 0);
  int y = 0;
  int j = 0;
  for (size_t t = 0; t < n; ++t) {
    while (j < top && y >= th[j + 1]) ++j;
    const double v = instance.valuations[t];
    out.posted_prices[t] = price[j];
    out.levels[t] = j + 1;
    if (y < k && v >= price[j]) {
      out.allocations[t] = 1;
      out.welfare += v;
      out.revenue += price[j];
      ++out.units_by_level[j];
      ++y;
    }
  }
  return out;
}

double CppmWelfare(const PricingProfile& profile, const std::vector<double>& valuations, double r) {
  const int k = profile.params.k;
  const int top = profile.num_levels() - 1;
  const std::vector<int> th = Thresholds(profile);
  const std::vector<double> price = PricesAt(profile, r);
  double welfare = 0.0;
  int y = 0;
  int j = 0;
  for (double v : valuations) {
    if (y >= k) break;
    while (j < top && y >= th[j + 1]) ++j;
    if (v >= price[j]) {
      welfare += v;
      ++y;
    }
  }
  return welfare;
}

void CppmPrefixWelfare(const PricingProfile& profile, const std::vector<double>& valuations, double r,
                       const std::vector<size_t>& ends, std::vector<double>& out) {
  const int k = profile.params.k;
  const int top = profile.num_levels() - 1;
  const std::vector<int> th = Thresholds(profile);
  const std::vector<double> price = PricesAt(profile, r);
  out.assign(ends.size(), 0.0);
  double welfare = 0.0;
  int y = 0;
  int j = 0;
  size_t t = 0;
  for (size_t e = 0; e < ends.size(); ++e) {
    const size_t end = std::min(ends[e], valuations.size());
    for (; t < end && y < k; ++t) {
      while (j < top && y >= th[j + 1]) ++j;
      const double v = valuations[t];
      if (v >= price[j]) {
        welfare += v;
        ++y;
      }
    }
    if (y >= k) t = std::max(t, end);
    out[e] = welfare;
  }
}

std::vector<int> CppmUtilization(const PricingProfile& profile, const std::vector<double>& valuations, double r) {
  const int k = profile.params.k;
  const int top = profile.num_levels() - 1;
  const std::vector<int> th = Thresholds(profile);
  const std::vector<double> price = PricesAt(profile, r);
  std::vector<int> y_after(valuations.size());
  int y = 0;
  int j = 0;
  for (size_t t = 0; t < valuations.size(); ++t) {
    while (j < top && y >= th[j + 1]) ++j;
    if (y < k && valuations[t] >= price[j]) ++y;
    y_after[t] = y;
  }
  return y_after;
}

double MarginalInverse(const PricingProfile& profile, double v) {
  const int n = profile.num_levels();
  // last unit whose price curve starts at or below v
  int lo = -1;
  for (int b = 1 << 20; b > 0; b >>= 1)
    if (lo + b < n && profile.levels[lo + b].front() <= v) lo += b;
  if (lo < 0) return 0.0;
  return lo + profile.levels[lo].UpperInverse(v);
}

FractionalTrace RunFractional(const PricingProfile& profile, const Instance& instance) {
  const int k = profile.params.k;
  if (profile.num_levels() != k ||
      std::any_of(profile.reservation.begin(), profile.reservation.end(), [](int q) { return q != 1; }))
    throw std::invalid_argument("fractional allocation needs a per-unit profile");
  FractionalTrace tr;
  double y = 0.0;
  for (double v : instance.valuations) {
    tr.kappa.push_back(std::min(k, static_cast<int>(std::floor(y)) + 1));
    const double cap = std::min(1.0, k - y);
    const double x = std::clamp(MarginalInverse(profile, v) - y, 0.0, std::max(0.0, cap));
    y += x;
    tr.x_hat.push_back(x);
    tr.y_hat.push_back(y);
  }
  return tr;
}

PricingProfile BaselineProfile(const MarketParams& params, int delta_cap, int grid_size) {
  DesignRequest req;
  req.params = params;
  req.params.delta_cap = delta_cap;
  req.params.delta_risk = 1.0;
  req.grid_size = grid_size;
  return DesignRiskNeutral(req);
}

std::vector<double> DDynamicPrices(const MarketParams& params) {
  const double alpha = RiskNeutralAlpha(params.L, params.U);
  std::vector<double> prices(params.k);
  for (int i = 0; i < params.k; ++i) {
    const double x = static_cast<double>(i) / params.k;
    prices[i] = x < 1.0 / alpha ? params.L : params.L * std::exp(alpha * x - 1.0);
  }
  return prices;
}

SeedOutcome RunPriceSequence(const std::vector<double>& prices, const Instance& instance) {
  const int k = static_cast<int>(prices.size());
  const size_t n = instance.valuations.size();
  SeedOutcome out;
  out.allocations.assign(n, 0);
  out.posted_prices.assign(n, 0.0);
  out.levels.assign(n, 0);
  out.units_by_level.assign(k, 0);
  int y = 0;
  for (size_t t = 0; t < n; ++t) {
    const int u = std::min(y, k - 1);
    const double v = instance.valuations[t];
    out.posted_prices[t] = prices[u];
    out.levels[t] = u + 1;
    if (y < k && v >= prices[u]) {
      out.allocations[t] = 1;
      out.welfare += v;
      out.revenue += prices[u];
      ++out.units_by_level[u];
      ++y;
    }
  }
  return out;
}

SeedOutcome RunDDynamic(const MarketParams& params, const Instance& instance) {
  return RunPriceSequence(DDynamicPrices(params), instance);
}

SeedOutcome RunRStatic(const MarketParams& params, const Instance& instance, double r) {
  return RunCppm(BaselineProfile(params, 0), instance, r);
}

SeedOutcome RunRDynamic(const PricingProfile& per_unit, const Instance& instance, const std::vector<double>& seeds) {
  const int k = per_unit.params.k;
  if (static_cast<int>(seeds.size()) != k) throw std::invalid_argument("r-dynamic needs exactly k seeds");
  if (per_unit.num_levels() != k) throw std::invalid_argument("r-dynamic needs a per-unit profile");
  std::vector<double> prices(k);
  for (int i = 0; i < k; ++i) {
    CheckSeed(seeds[i]);
    prices[i] = per_unit.levels[i](seeds[i]);
  }
  return RunPriceSequence(prices, instance);
}

SeedOutcome RunRDynamic(const MarketParams& params, const Instance& instance, const std::vector<double>& seeds) {
  return RunRDynamic(BaselineProfile(params, params.k - 1), instance, seeds);
}

}  // namespace cppm
