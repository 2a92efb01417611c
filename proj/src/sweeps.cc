#include "cppm/sweeps.hpp"

#include <cmath>
#include <limits>
#include <ostream>

#include "cppm/evaluation.hpp"
#include "cppm/pricing.hpp"
#include "parallel.hpp"

namespace cppm {

namespace {

struct Point {
  MarketParams params;
  bool fully_dynamic;
};

SweepResult RunSweep(const std::vector<Point>& points, const SweepOptions& opt) {
  SweepResult res;
  res.rows.resize(points.size());
  std::vector<std::string> errors(points.size());
  ParallelFor(points.size(), [&](size_t i) {
    const MarketParams& p = points[i].params;
    SweepRow& row = res.rows[i];
    row.k = p.k;
    row.delta_cap = p.delta_cap;
    row.delta_risk = p.delta_risk;
    row.alpha = std::numeric_limits<double>::quiet_NaN();
    row.worst_ratio = std::numeric_limits<double>::quiet_NaN();
    try {
      DesignRequest req;
      req.params = p;
      req.grid_size = opt.grid_size;
      req.policy = points[i].fully_dynamic ? ReservationPolicy::kEvenSplit : ReservationPolicy::kCeilFirst;
      const PricingProfile prof = points[i].fully_dynamic ? DesignFullyDynamic(req) : DesignDeltaDynamic(req);
      row.alpha = prof.alpha;
      if (opt.ratio_seeds > 0) {
        const double eps = (p.U - p.L) / opt.epsilon_divisor;
        row.worst_ratio = HardFamilyCvarCr(prof, p.delta_risk, eps, opt.ratio_seeds, 1e-2).worst_ratio;
      }
    } catch (const std::exception& e) {
      errors[i] = "k=" + std::to_string(p.k) + " delta_cap=" + std::to_string(p.delta_cap) +
                  " delta_risk=" + FormatDouble(p.delta_risk) + ": " + e.what();
    }
  });
  for (auto& e : errors)
    if (!e.empty()) res.errors.push_back(e);
  return res;
}

}  // namespace

SweepResult Fig3Sweep(const SweepOptions& opt) {
  std::vector<Point> pts;
  for (double d : {0.2, 0.6, 0.9})
    for (int k = 3; k <= 100; ++k) pts.push_back({{1.0, 100.0, k, k - 1, d}, true});
  return RunSweep(pts, opt);
}

SweepResult Fig4Sweep(const SweepOptions& opt) {
  std::vector<Point> pts;
  for (double d : {0.2, 0.4, 0.8})
    for (int cap = 1; cap <= 39; ++cap) pts.push_back({{1.0, 100.0, 40, cap, d}, false});
  return RunSweep(pts, opt);
}

MarketParams Fig1Params() { return {1.0, 100.0, 10, 0, 1.0}; }

Instance Fig1Instance() {
  const MarketParams p = Fig1Params();
  return HardInstance(p, (p.U - p.L) / 20.0, p.L + 4 * (p.U - p.L) / 20.0);
}

std::vector<Fig1Run> Fig1Runs(int n_runs, uint64_t rng_seed) {
  const MarketParams p = Fig1Params();
  const Instance inst = Fig1Instance();
  std::vector<Fig1Run> out;
  const std::pair<const char*, MultiSeedRunner> algos[] = {
      {"r-static", RStaticRunner(p)}, {"d-dynamic", DDynamicRunner(p)}, {"r-dynamic", RDynamicRunner(p)}};
  for (const auto& [name, runner] : algos) {
    const std::vector<double> w = MonteCarloWelfare(runner, inst, n_runs, rng_seed);
    for (int i = 0; i < n_runs; ++i) out.push_back({name, i + 1, w[i]});
  }
  return out;
}

void WriteFig1Csv(std::ostream& os, const std::vector<Fig1Run>& runs) {
  os << "algo,run,welfare\n";
  for (const Fig1Run& r : runs) os << r.algo << "," << r.run << "," << FormatDouble(r.welfare) << "\n";
}

}  // namespace cppm
