#include "cppm/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "cppm/mechanism.hpp"
#include "cppm/rng.hpp"
#include "parallel.hpp"

namespace cppm {

double OfflineOpt(const Instance& instance, int k) {
  std::vector<double> v = instance.valuations;
  const size_t take = std::min<size_t>(std::max(k, 0), v.size());
  std::nth_element(v.begin(), v.begin() + take, v.end(), std::greater<double>());
  return std::accumulate(v.begin(), v.begin() + take, 0.0);
}

std::vector<double> SeedGridWelfare(const PricingProfile& profile, const Instance& instance, int m_seeds) {
  if (m_seeds < 2) throw std::invalid_argument("m_seeds must be at least 2");
  std::vector<double> w(m_seeds);
  ParallelFor(m_seeds, [&](size_t i) {
    w[i] = CppmWelfare(profile, instance.valuations, (i + 0.5) / m_seeds);
  });
  return w;
}

WelfareDistribution ComputeWelfareDistribution(const PricingProfile& profile, const Instance& instance,
                                               int m_seeds) {
  return WelfareDistribution::FromSamples(SeedGridWelfare(profile, instance, m_seeds));
}

double Cvar(const WelfareDistribution& dist, double delta_risk) {
  if (!(delta_risk > 0.0 && delta_risk <= 1.0)) throw std::invalid_argument("delta_risk must lie in (0, 1]");
  if (dist.atoms.empty()) throw std::invalid_argument("empty distribution");
  double mass = 0.0;
  double sum = 0.0;
  for (const WelfareAtom& a : dist.atoms) {
    const double take = std::min(a.measure, delta_risk - mass);
    if (take <= 0.0) break;
    sum += take * a.welfare;
    mass += take;
  }
  return sum / delta_risk;
}

namespace {

RatioRow MakeRow(std::string id, double opt, double cvar, double alpha, double tolerance) {
  RatioRow row;
  row.instance_id = std::move(id);
  row.opt = opt;
  row.cvar = cvar;
  row.ratio = cvar > 0.0 ? opt / cvar : std::numeric_limits<double>::infinity();
  row.flagged = row.ratio > alpha * (1.0 + tolerance);
  return row;
}

void Summarize(RatioReport& rep) {
  rep.worst_ratio = 0.0;
  rep.flagged = 0;
  for (const RatioRow& r : rep.rows) {
    rep.worst_ratio = std::max(rep.worst_ratio, r.ratio);
    rep.flagged += r.flagged;
  }
}

}  // namespace

RatioReport CvarCr(const PricingProfile& profile, const std::vector<NamedInstance>& instances, double delta_risk,
                   int m_seeds, double tolerance) {
  if (instances.empty()) throw std::invalid_argument("instance set is empty");
  RatioReport rep;
  rep.designed_alpha = profile.alpha;
  rep.tolerance = tolerance;
  for (const NamedInstance& ni : instances) {
    const double opt = OfflineOpt(ni.instance, profile.params.k);
    const double c = Cvar(ComputeWelfareDistribution(profile, ni.instance, m_seeds), delta_risk);
    rep.rows.push_back(MakeRow(ni.id, opt, c, profile.alpha, tolerance));
  }
  Summarize(rep);
  return rep;
}

int HardStages(const MarketParams& params, double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  return static_cast<int>(std::floor((params.U - params.L) / epsilon + 1e-9)) + 1;
}

Instance HardInstance(const MarketParams& params, double epsilon, double stop_value) {
  if (auto v = Validate(params)) throw std::invalid_argument(*v);
  const int stages = HardStages(params, epsilon);
  const double j = std::round((stop_value - params.L) / epsilon);
  const double on_lattice = params.L + j * epsilon;
  if (j < 0 || j >= stages || std::abs(on_lattice - stop_value) > 1e-9 * std::max(1.0, std::abs(stop_value))) {
    std::ostringstream msg;
    msg << "stop value " << stop_value << " is not on the lattice L + j*epsilon";
    throw std::invalid_argument(msg.str());
  }
  Instance inst;
  for (int s = 0; s <= static_cast<int>(j); ++s) {
    const double v = std::min(params.U, params.L + s * epsilon);
    inst.valuations.insert(inst.valuations.end(), params.k, v);
  }
  return inst;
}

RatioReport HardFamilyCvarCr(const PricingProfile& profile, double delta_risk, double epsilon, int m_seeds,
                             double tolerance) {
  if (m_seeds < 2) throw std::invalid_argument("m_seeds must be at least 2");
  const MarketParams& p = profile.params;
  const int stages = HardStages(p, epsilon);
  const double top = std::min(p.U, p.L + (stages - 1) * epsilon);
  const Instance full = HardInstance(p, epsilon, p.L + (stages - 1) * epsilon);
  std::vector<size_t> ends(stages);
  for (int s = 0; s < stages; ++s) ends[s] = static_cast<size_t>(s + 1) * p.k;
  std::vector<std::vector<double>> by_seed(m_seeds);
  ParallelFor(m_seeds, [&](size_t i) {
    CppmPrefixWelfare(profile, full.valuations, (i + 0.5) / m_seeds, ends, by_seed[i]);
  });
  RatioReport rep;
  rep.designed_alpha = profile.alpha;
  rep.tolerance = tolerance;
  std::vector<double> column(m_seeds);
  for (int s = 0; s < stages; ++s) {
    for (int i = 0; i < m_seeds; ++i) column[i] = by_seed[i][s];
    const double v = s + 1 == stages ? top : p.L + s * epsilon;
    const double c = Cvar(WelfareDistribution::FromSamples(column), delta_risk);
    std::ostringstream id;
    id.precision(17);
    id << "v=" << v;
    rep.rows.push_back(MakeRow(id.str(), p.k * v, c, profile.alpha, tolerance));
  }
  Summarize(rep);
  return rep;
}

MultiSeedRunner RStaticRunner(const MarketParams& params) {
  auto profile = std::make_shared<PricingProfile>(BaselineProfile(params, 0));
  return {1, [profile](const Instance& inst, const std::vector<double>& s) { return RunCppm(*profile, inst, s[0]); }};
}

MultiSeedRunner RDynamicRunner(const MarketParams& params) {
  auto profile = std::make_shared<PricingProfile>(BaselineProfile(params, params.k - 1));
  return {params.k,
          [profile](const Instance& inst, const std::vector<double>& s) { return RunRDynamic(*profile, inst, s); }};
}

MultiSeedRunner DDynamicRunner(const MarketParams& params) {
  auto prices = std::make_shared<std::vector<double>>(DDynamicPrices(params));
  return {0, [prices](const Instance& inst, const std::vector<double>&) { return RunPriceSequence(*prices, inst); }};
}

std::vector<double> MonteCarloWelfare(const MultiSeedRunner& runner, const Instance& instance, int n_runs,
                                      uint64_t rng_seed) {
  if (n_runs < 1) throw std::invalid_argument("n_runs must be at least 1");
  std::vector<double> w(n_runs);
  ParallelFor(n_runs, [&](size_t i) {
    CounterRng rng(rng_seed, i);
    std::vector<double> seeds(runner.seeds_per_run);
    for (double& s : seeds) s = rng.NextDouble();
    w[i] = runner.run(instance, seeds).welfare;
  });
  return w;
}

WelfareDistribution MonteCarloDistribution(const MultiSeedRunner& runner, const Instance& instance, int n_runs,
                                           uint64_t rng_seed) {
  return WelfareDistribution::FromSamples(MonteCarloWelfare(runner, instance, n_runs, rng_seed));
}

LemmaReport VerifyLemma(const PricingProfile& profile, const Instance& instance, Lemma which, int resolution) {
  if (resolution < 2) throw std::invalid_argument("resolution must be at least 2");
  LemmaReport rep;
  rep.which = which;
  const std::vector<double>& v = instance.valuations;
  const size_t n = v.size();
  std::ostringstream msg;
  msg.precision(17);
  if (which == Lemma::kMonotonicity) {
    std::vector<int> prev = CppmUtilization(profile, v, 0.0);
    for (int i = 1; i < resolution && rep.passed; ++i) {
      const double r1 = static_cast<double>(i - 1) / (resolution - 1);
      const double r2 = static_cast<double>(i) / (resolution - 1);
      std::vector<int> cur = CppmUtilization(profile, v, r2);
      for (size_t t = 0; t < n; ++t) {
        ++rep.checks;
        if (cur[t] > prev[t]) {
          rep.passed = false;
          msg << "buyer " << t + 1 << ": y(r1=" << r1 << ")=" << prev[t] << " < y(r2=" << r2 << ")=" << cur[t];
          break;
        }
      }
      prev = std::move(cur);
    }
  } else if (which == Lemma::kFloor) {
    std::vector<int> finals(resolution, 0);
    for (int i = 0; i < resolution; ++i) {
      const std::vector<int> y = CppmUtilization(profile, v, static_cast<double>(i) / (resolution - 1));
      finals[i] = y.empty() ? 0 : y.back();
    }
    const int y_star = *std::max_element(finals.begin(), finals.end());
    int i_star = 0;
    int acc = 0;
    for (int i = 0; i < profile.num_levels(); ++i) {
      acc += profile.reservation[i];
      if (y_star >= acc) i_star = i + 1;
    }
    if (i_star >= 2) {
      int need = 0;
      for (int i = 0; i < i_star - 1; ++i) need += profile.reservation[i];
      for (int i = 0; i < resolution; ++i) {
        ++rep.checks;
        if (finals[i] < need) {
          rep.passed = false;
          msg << "r=" << static_cast<double>(i) / (resolution - 1) << ": y=" << finals[i] << " < " << need
              << " (i*=" << i_star << ")";
          break;
        }
      }
    }
  } else {
    const FractionalTrace tr = RunFractional(profile, instance);
    std::vector<int> served(n, 0);
    for (int i = 0; i < resolution; ++i) {
      const std::vector<int> y = CppmUtilization(profile, v, (i + 0.5) / resolution);
      for (size_t t = 0; t < n; ++t) served[t] += y[t] - (t ? y[t - 1] : 0);
    }
    const double tol = 2.0 / resolution;
    for (size_t t = 0; t < n; ++t) {
      ++rep.checks;
      const double measure = static_cast<double>(served[t]) / resolution;
      if (measure < tr.x_hat[t] - tol) {
        rep.passed = false;
        msg << "buyer " << t + 1 << ": served measure " << measure << " < x_hat " << tr.x_hat[t];
        break;
      }
    }
  }
  rep.counterexample = msg.str();
  return rep;
}

}  // namespace cppm
