#ifndef CPPM_MODEL_HPP_
#define CPPM_MODEL_HPP_

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cppm/grid_function.hpp"

namespace cppm {

struct MarketParams {
  double L = 1.0;
  double U = 1.0;
  int k = 1;
  int delta_cap = 0;
  double delta_risk = 1.0;
};

struct Instance {
  std::vector<double> valuations;
};

struct PricingProfile {
  MarketParams params;
  std::vector<GridFunction> levels;  // delta_cap + 1 levels
  std::vector<int> reservation;      // q_1..q_{delta_cap+1}
  double alpha = 1.0;

  int grid_size() const { return levels.empty() ? 0 : levels.front().grid_size(); }
  int num_levels() const { return static_cast<int>(levels.size()); }
};

struct SeedOutcome {
  double seed = 0.0;
  std::vector<int> allocations;
  std::vector<double> posted_prices;
  std::vector<int> levels;  // 1-based level index active for each buyer
  double welfare = 0.0;
  double revenue = 0.0;
  std::vector<int> units_by_level;
};

struct WelfareAtom {
  double measure;
  double welfare;
};

struct WelfareDistribution {
  std::vector<WelfareAtom> atoms;

  // Equal-weight samples; equal welfare values are merged into one atom.
  static WelfareDistribution FromSamples(std::vector<double> welfare);
  double Mean() const;
  double TotalMeasure() const;
  // P(W <= w).
  double Cdf(double w) const;
};

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::optional<std::string> Validate(const MarketParams& params);
std::optional<std::string> Validate(const MarketParams& params, const Instance& instance);
// Relative tolerance applies to dominance and the U ceiling, scaled by U.
std::optional<std::string> Validate(const PricingProfile& profile, double rel_tol = 1e-7);
std::optional<std::string> Validate(const WelfareDistribution& dist);

}  // namespace cppm

#endif  // CPPM_MODEL_HPP_
