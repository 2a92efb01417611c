#ifndef CPPM_EVALUATION_HPP_
#define CPPM_EVALUATION_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cppm/model.hpp"

namespace cppm {

double OfflineOpt(const Instance& instance, int k);

// Welfare at the midpoints (i + 0.5) / m_seeds, in seed order.
std::vector<double> SeedGridWelfare(const PricingProfile& profile, const Instance& instance, int m_seeds);
WelfareDistribution ComputeWelfareDistribution(const PricingProfile& profile, const Instance& instance,
                                               int m_seeds);

double Cvar(const WelfareDistribution& dist, double delta_risk);

struct RatioRow {
  std::string instance_id;
  double opt = 0.0;
  double cvar = 0.0;
  double ratio = 0.0;
  bool flagged = false;
};

struct RatioReport {
  std::vector<RatioRow> rows;
  double worst_ratio = 0.0;
  double designed_alpha = 0.0;
  double tolerance = 0.0;  // rows with ratio > alpha * (1 + tolerance) are flagged
  int flagged = 0;
  std::string label = "empirical worst case";
};

struct NamedInstance {
  std::string id;
  Instance instance;
};

RatioReport CvarCr(const PricingProfile& profile, const std::vector<NamedInstance>& instances, double delta_risk,
                   int m_seeds, double tolerance);

Instance HardInstance(const MarketParams& params, double epsilon, double stop_value);
// Number of lattice stages L, L + eps, ..., not exceeding U.
int HardStages(const MarketParams& params, double epsilon);

// Ratio report over every truncation of the hard family, one simulation pass per seed.
RatioReport HardFamilyCvarCr(const PricingProfile& profile, double delta_risk, double epsilon, int m_seeds,
                             double tolerance);

struct MultiSeedRunner {
  int seeds_per_run = 1;
  std::function<SeedOutcome(const Instance&, const std::vector<double>&)> run;
};

MultiSeedRunner RStaticRunner(const MarketParams& params);
MultiSeedRunner RDynamicRunner(const MarketParams& params);
MultiSeedRunner DDynamicRunner(const MarketParams& params);

// Welfare per run in run order.
std::vector<double> MonteCarloWelfare(const MultiSeedRunner& runner, const Instance& instance, int n_runs,
                                      uint64_t rng_seed);
WelfareDistribution MonteCarloDistribution(const MultiSeedRunner& runner, const Instance& instance, int n_runs,
                                           uint64_t rng_seed);

enum class Lemma { kMonotonicity, kFloor, kRounding };

struct LemmaReport {
  Lemma which = Lemma::kMonotonicity;
  bool passed = true;
  long checks = 0;
  std::string counterexample;
};

LemmaReport VerifyLemma(const PricingProfile& profile, const Instance& instance, Lemma which, int resolution);

}  // namespace cppm

#endif  // CPPM_EVALUATION_HPP_
