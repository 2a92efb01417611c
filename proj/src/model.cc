#include "cppm/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cppm {

std::optional<std::string> Validate(const MarketParams& p) {
  if (!(p.L > 0.0)) return "L must be positive";
  if (p.L > p.U) return "L > U";
  if (!std::isfinite(p.U)) return "U must be finite";
  if (p.k < 1) return "k must be at least 1";
  if (p.delta_cap < 0 || p.delta_cap > p.k - 1) return "delta_cap outside [0, k-1]";
  if (!(p.delta_risk > 0.0 && p.delta_risk <= 1.0)) return "delta_risk outside (0, 1]";
  return std::nullopt;
}

std::optional<std::string> Validate(const MarketParams& p, const Instance& instance) {
  if (auto v = Validate(p)) return v;
  for (size_t t = 0; t < instance.valuations.size(); ++t) {
    const double v = instance.valuations[t];
    if (std::isnan(v)) return "valuation " + std::to_string(t + 1) + " is NaN";
    if (v < p.L) return "valuation below L at buyer " + std::to_string(t + 1);
    if (v > p.U) return "valuation above U at buyer " + std::to_string(t + 1);
  }
  return std::nullopt;
}

std::optional<std::string> Validate(const PricingProfile& profile, double rel_tol) {
  const MarketParams& p = profile.params;
  if (auto v = Validate(p)) return v;
  const int n = p.delta_cap + 1;
  if (profile.num_levels() != n) return "expected delta_cap+1 levels";
  if (static_cast<int>(profile.reservation.size()) != n) return "expected delta_cap+1 reservation entries";
  if (std::any_of(profile.reservation.begin(), profile.reservation.end(), [](int q) { return q < 0; }))
    return "negative reservation entry";
  if (std::accumulate(profile.reservation.begin(), profile.reservation.end(), 0) != p.k)
    return "reservation does not sum to k";
  if (!(profile.alpha >= 1.0) || !std::isfinite(profile.alpha)) return "alpha must be finite and >= 1";
  const double tol = rel_tol * p.U;
  const int m = profile.levels.front().grid_size();
  for (int i = 0; i < n; ++i) {
    const GridFunction& f = profile.levels[i];
    if (f.grid_size() != m) return "levels have different grid sizes";
    for (double s : f.samples())
      if (!std::isfinite(s)) return "level " + std::to_string(i + 1) + " has a non-finite sample";
    if (!f.IsNondecreasing()) return "level " + std::to_string(i + 1) + " is not nondecreasing";
    if (i + 1 < n && f.back() > profile.levels[i + 1].front() + tol)
      return "level " + std::to_string(i + 1) + " does not dominate-order with level " + std::to_string(i + 2);
  }
  if (profile.levels.front().front() < p.L - tol) return "lowest price below L";
  if (profile.levels.back().back() > p.U + tol) return "highest price above U";
  return std::nullopt;
}

std::optional<std::string> Validate(const WelfareDistribution& dist) {
  if (dist.atoms.empty()) return "distribution has no atoms";
  for (size_t i = 0; i < dist.atoms.size(); ++i) {
    if (!(dist.atoms[i].measure > 0.0 && dist.atoms[i].measure <= 1.0)) return "atom measure outside (0, 1]";
    if (i > 0 && dist.atoms[i].welfare < dist.atoms[i - 1].welfare) return "atoms not sorted by welfare";
  }
  if (std::abs(dist.TotalMeasure() - 1.0) > 1e-12) return "measures do not sum to 1";
  return std::nullopt;
}

WelfareDistribution WelfareDistribution::FromSamples(std::vector<double> welfare) {
  WelfareDistribution dist;
  if (welfare.empty()) return dist;
  std::sort(welfare.begin(), welfare.end());
  const double n = static_cast<double>(welfare.size());
  size_t i = 0;
  while (i < welfare.size()) {
    size_t j = i;
    while (j < welfare.size() && welfare[j] == welfare[i]) ++j;
    dist.atoms.push_back({static_cast<double>(j - i) / n, welfare[i]});
    i = j;
  }
  return dist;
}

double WelfareDistribution::Mean() const {
  double s = 0.0;
  for (const auto& a : atoms) s += a.measure * a.welfare;
  return s;
}

double WelfareDistribution::TotalMeasure() const {
  double s = 0.0;
  for (const auto& a : atoms) s += a.measure;
  return s;
}

double WelfareDistribution::Cdf(double w) const {
  double s = 0.0;
  for (const auto& a : atoms) {
    if (a.welfare > w) break;
    s += a.measure;
  }
  return s;
}

}  // namespace cppm
