#ifndef CPPM_PRICING_HPP_
#define CPPM_PRICING_HPP_

#include <functional>
#include <vector>

#include "cppm/grid_function.hpp"
#include "cppm/model.hpp"

namespace cppm {

enum class ReservationPolicy { kEvenSplit, kExplicit, kCeilFirst };

struct DesignRequest {
  MarketParams params;
  ReservationPolicy policy = ReservationPolicy::kEvenSplit;
  std::vector<int> reservation;  // used with kExplicit
  int grid_size = 10000;
  double alpha_tolerance = 1e-8;  // relative boundary tolerance |phi_top(1) - U| <= tol * U
};

// k split into `parts` near-equal nondecreasing parts.
std::vector<int> EvenSplit(int k, int parts);
// q_1 = ceil(k / alpha), remainder near-even and nondecreasing over parts-1 levels.
// Returns an empty vector when ceil(k / alpha) > k.
std::vector<int> CeilFirstSplit(int k, int parts, double alpha);

double RiskNeutralAlpha(double L, double U);

PricingProfile DesignRiskNeutral(const DesignRequest& req);

// E_c(t) for phi'(x) = c * phi(x - tau) with history 1 on [-tau, 0].
double DelayExponential(double c, double tau, double t);

double SolveStaticAlpha(const MarketParams& params);
PricingProfile DesignStaticRisk(const DesignRequest& req);
PricingProfile DesignFullyDynamic(const DesignRequest& req);
PricingProfile DesignDeltaDynamic(const DesignRequest& req);

// Uncalibrated levels at a fixed alpha. The fully-dynamic builder runs the
// recursion even at delta = 1.
PricingProfile StaticRiskAt(const DesignRequest& req, double alpha);
PricingProfile FullyDynamicAt(const DesignRequest& req, double alpha);
PricingProfile DeltaDynamicAt(const DesignRequest& req, double alpha);

// phi(x) = scale * (base + sum_back(x) + sum_prefix(x) + self_weight * int_0^s phi)
// with sum_back(x) = int_x^{min(1, x + window)} backward,
// sum_prefix(x) = int_0^s prefix, s = max(0, x - (1 - window)).
// Nodes with x <= floor_until take floor_value.
struct DelayRecursion {
  double scale = 1.0;
  double base = 0.0;
  double window = 1.0;
  const GridFunction* backward = nullptr;
  const GridFunction* prefix = nullptr;
  double self_weight = 0.0;
  double floor_until = -1.0;
  double floor_value = 0.0;
};

GridFunction SolveForwardDelayIntegral(const DelayRecursion& rec, int grid_size);

struct AlphaSearch {
  double alpha = 1.0;
  double top = 0.0;  // boundary value at alpha
  int probes = 0;
  bool scanned = false;  // non-monotone probes triggered the scan fallback
};

// Smallest alpha in [1, hi] with top(alpha) >= U, to relative tolerance tol.
// Throws NumericalError when the bracket does not contain the boundary.
AlphaSearch CalibrateAlpha(const std::function<double(double)>& top, double U, double hi, double tol);
double DefaultAlphaCeiling(double L, double U);

struct LbReport {
  double max_violation = 0.0;
  double floor_violation = 0.0;     // (1 - delta + delta/alpha) - psi(L)
  double integral_violation = 0.0;  // max over v of delta * (v/alpha - lhs(v)) / L
  double worst_v = 0.0;
};

LbReport CheckStaticLbConstraints(const PricingProfile& profile, double alpha, int n_probe);

}  // namespace cppm

#endif  // CPPM_PRICING_HPP_
