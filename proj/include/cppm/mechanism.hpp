#ifndef CPPM_MECHANISM_HPP_
#define CPPM_MECHANISM_HPP_

#include <cstddef>
#include <vector>

#include "cppm/model.hpp"

namespace cppm {

struct FractionalTrace {
  std::vector<double> x_hat;
  std::vector<double> y_hat;  // cumulative after each buyer
  std::vector<int> kappa;     // 1-based unit being filled when the buyer arrives
};

SeedOutcome RunCppm(const PricingProfile& profile, const Instance& instance, double r);

// Welfare only; stops at the first buyer after inventory runs out.
double CppmWelfare(const PricingProfile& profile, const std::vector<double>& valuations, double r);

// Welfare after each prefix valuations[0, ends[j]) in one pass; ends must be nondecreasing.
void CppmPrefixWelfare(const PricingProfile& profile, const std::vector<double>& valuations, double r,
                       const std::vector<size_t>& ends, std::vector<double>& out);

// Units sold after each buyer.
std::vector<int> CppmUtilization(const PricingProfile& profile, const std::vector<double>& valuations, double r);

// sup{z in [0, k] : marginal price at z <= v} for a per-unit profile.
double MarginalInverse(const PricingProfile& profile, double v);

FractionalTrace RunFractional(const PricingProfile& profile, const Instance& instance);

// Baselines. Their pricing comes from the risk-neutral exponential design.
PricingProfile BaselineProfile(const MarketParams& params, int delta_cap, int grid_size = 10000);
std::vector<double> DDynamicPrices(const MarketParams& params);
SeedOutcome RunDDynamic(const MarketParams& params, const Instance& instance);
SeedOutcome RunRStatic(const MarketParams& params, const Instance& instance, double r);
SeedOutcome RunRDynamic(const MarketParams& params, const Instance& instance, const std::vector<double>& seeds);
// per_unit must be a q_i = 1 profile; unit i is offered at levels[i](seeds[i]).
SeedOutcome RunRDynamic(const PricingProfile& per_unit, const Instance& instance, const std::vector<double>& seeds);
// Unit i is offered at prices[i] until sold.
SeedOutcome RunPriceSequence(const std::vector<double>& prices, const Instance& instance);

}  // namespace cppm

#endif  // CPPM_MECHANISM_HPP_
