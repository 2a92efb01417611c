#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "cppm/pricing.hpp"

namespace cppm {

namespace {

void CheckParams(const MarketParams& p) {
  if (auto v = Validate(p)) throw std::invalid_argument(*v);
}

void CheckGrid(const DesignRequest& req) {
  if (req.grid_size < 2) throw std::invalid_argument("grid_size must be at least 2");
  if (!(req.alpha_tolerance > 0.0)) throw std::invalid_argument("alpha_tolerance must be positive");
}

std::vector<int> ExplicitReservation(const DesignRequest& req, bool nondecreasing_from_first) {
  const MarketParams& p = req.params;
  const std::vector<int>& q = req.reservation;
  if (static_cast<int>(q.size()) != p.delta_cap + 1)
    throw std::invalid_argument("reservation must have delta_cap+1 entries");
  if (std::any_of(q.begin(), q.end(), [](int x) { return x < 0; }))
    throw std::invalid_argument("reservation entries must be nonnegative");
  if (std::accumulate(q.begin(), q.end(), 0) != p.k) throw std::invalid_argument("reservation must sum to k");
  const size_t start = nondecreasing_from_first ? 1 : 2;
  for (size_t i = start; i < q.size(); ++i)
    if (q[i] < q[i - 1]) throw std::invalid_argument("reservation must be nondecreasing");
  return q;
}

GridFunction SampleRiskNeutral(double L, double alpha, int k, int before, int q, int m) {
  std::vector<double> f(m + 1);
  for (int n = 0; n <= m; ++n) {
    const double x = static_cast<double>(n) / m;
    const double s = (before + q * x) / k;
    f[n] = s < 1.0 / alpha ? L : L * std::exp(alpha * s - 1.0);
  }
  return GridFunction(std::move(f));
}

// Lifts rounding-level dips; anything larger is a solver failure.
GridFunction CleanMonotone(GridFunction f, const char* what) {
  if (f.IsNondecreasing()) return f;
  std::vector<double> s = f.samples();
  for (size_t n = 1; n < s.size(); ++n) {
    if (s[n] < s[n - 1]) {
      if (s[n - 1] - s[n] > 1e-12 * std::abs(s[n - 1]))
        throw NumericalError(std::string(what) + " level decreases at node " + std::to_string(n));
      s[n] = s[n - 1];
    }
  }
  return GridFunction(std::move(s));
}

void FloorAt(GridFunction& f, double L) {
  if (f.front() >= L) return;
  std::vector<double> s = f.samples();
  for (double& x : s) x = std::max(x, L);
  f = GridFunction(std::move(s));
}

PricingProfile ConstantProfile(const MarketParams& p, std::vector<int> q, int m) {
  PricingProfile out;
  out.params = p;
  out.alpha = 1.0;
  out.reservation = std::move(q);
  out.levels.assign(p.delta_cap + 1, GridFunction::Constant(p.L, m));
  return out;
}

}  // namespace

double RiskNeutralAlpha(double L, double U) { return 1.0 + std::log(U / L); }

PricingProfile DesignRiskNeutral(const DesignRequest& req) {
  const MarketParams& p = req.params;
  CheckParams(p);
  CheckGrid(req);
  if (p.delta_risk != 1.0) throw std::invalid_argument("risk-neutral design requires delta_risk = 1");
  std::vector<int> q;
  switch (req.policy) {
    case ReservationPolicy::kEvenSplit:
      q = EvenSplit(p.k, p.delta_cap + 1);
      break;
    case ReservationPolicy::kExplicit:
      q = ExplicitReservation(req, true);
      break;
    case ReservationPolicy::kCeilFirst:
      throw std::invalid_argument("ceil-first reservation applies to the delta-dynamic design only");
  }
  PricingProfile out;
  out.params = p;
  out.alpha = RiskNeutralAlpha(p.L, p.U);
  out.reservation = q;
  int before = 0;
  for (int j = 0; j <= p.delta_cap; ++j) {
    out.levels.push_back(SampleRiskNeutral(p.L, out.alpha, p.k, before, q[j], req.grid_size));
    before += q[j];
  }
  return out;
}

double SolveStaticAlpha(const MarketParams& p) {
  CheckParams(p);
  if (p.L == p.U) return 1.0;
  const double delta = p.delta_risk;
  if (delta == 1.0) return RiskNeutralAlpha(p.L, p.U);
  const double tau = 1.0 - delta;
  auto top = [&](double a) { return p.L * DelayExponential(a / delta, tau, delta * (1.0 - 1.0 / a)); };
  return CalibrateAlpha(top, p.U, DefaultAlphaCeiling(p.L, p.U), 1e-13).alpha;
}

PricingProfile StaticRiskAt(const DesignRequest& req, double alpha) {
  const MarketParams& p = req.params;
  const double delta = p.delta_risk;
  const double tau = 1.0 - delta;
  const double c = alpha / delta;
  const double b = 1.0 - delta + delta / alpha;
  const int m = req.grid_size;
  std::vector<double> f(m + 1);
  for (int n = 0; n <= m; ++n) {
    const double x = static_cast<double>(n) / m;
    // E_c(0) = 1, so a node within rounding of b is exactly L
    f[n] = x <= b + 1e-12 ? p.L : p.L * DelayExponential(c, tau, x - b);
  }
  PricingProfile out;
  out.params = p;
  out.alpha = alpha;
  out.reservation = {p.k};
  out.levels.emplace_back(std::move(f));
  return out;
}

PricingProfile DesignStaticRisk(const DesignRequest& req) {
  const MarketParams& p = req.params;
  CheckParams(p);
  CheckGrid(req);
  if (p.delta_cap != 0) throw std::invalid_argument("static design requires delta_cap = 0");
  if (p.delta_risk == 1.0) {
    DesignRequest neutral = req;
    neutral.policy = ReservationPolicy::kEvenSplit;
    return DesignRiskNeutral(neutral);
  }
  if (p.L == p.U) return ConstantProfile(p, {p.k}, req.grid_size);
  return StaticRiskAt(req, SolveStaticAlpha(p));
}

PricingProfile FullyDynamicAt(const DesignRequest& req, double alpha) {
  const MarketParams& p = req.params;
  const int k = p.k;
  const int mgrid = req.grid_size;
  const double delta = p.delta_risk;
  PricingProfile out;
  out.params = p;
  out.alpha = alpha;
  out.reservation.assign(k, 1);
  const int flat = std::min(k, static_cast<int>(std::floor(k / alpha)));
  const double frac = k / alpha - flat;
  std::vector<double> lower(mgrid + 1, 0.0);  // sum of levels below the current one
  for (int i = 0; i < k; ++i) {
    GridFunction level;
    if (i < flat) {
      level = GridFunction::Constant(p.L, mgrid);
    } else {
      GridFunction agg(lower);
      DelayRecursion rec;
      rec.scale = alpha / (k * delta);
      rec.window = delta;
      rec.backward = &agg;
      rec.prefix = &agg;
      rec.self_weight = 1.0;
      if (i == flat) {
        rec.floor_until = 1.0 - delta + frac * delta;
        rec.floor_value = p.L;
      }
      level = CleanMonotone(SolveForwardDelayIntegral(rec, mgrid), "fully-dynamic");
    }
    for (int n = 0; n <= mgrid; ++n) lower[n] += level.samples()[n];
    out.levels.push_back(std::move(level));
  }
  return out;
}

PricingProfile DesignFullyDynamic(const DesignRequest& req) {
  const MarketParams& p = req.params;
  CheckParams(p);
  CheckGrid(req);
  if (p.delta_cap != p.k - 1) throw std::invalid_argument("fully-dynamic design requires delta_cap = k-1");
  if (req.policy == ReservationPolicy::kExplicit &&
      std::any_of(req.reservation.begin(), req.reservation.end(), [](int q) { return q != 1; }))
    throw std::invalid_argument("fully-dynamic design requires q_i = 1");
  if (p.delta_risk == 1.0) {
    DesignRequest neutral = req;
    neutral.policy = ReservationPolicy::kEvenSplit;
    return DesignRiskNeutral(neutral);
  }
  if (p.L == p.U) return ConstantProfile(p, std::vector<int>(p.k, 1), req.grid_size);
  auto top = [&](double a) { return FullyDynamicAt(req, a).levels.back().back(); };
  const AlphaSearch s = CalibrateAlpha(top, p.U, DefaultAlphaCeiling(p.L, p.U), req.alpha_tolerance);
  return FullyDynamicAt(req, s.alpha);
}

namespace {

// Raw levels; the recursion's own level 2 may start below L.
PricingProfile DeltaDynamicRaw(const DesignRequest& req, double alpha) {
  const MarketParams& p = req.params;
  const int k = p.k;
  const int mgrid = req.grid_size;
  const double delta = p.delta_risk;
  const int levels = p.delta_cap + 1;
  PricingProfile out;
  out.params = p;
  out.alpha = alpha;
  if (req.policy == ReservationPolicy::kExplicit) {
    out.reservation = req.reservation;
  } else {
    out.reservation = CeilFirstSplit(k, levels, alpha);
    if (out.reservation.empty()) throw NumericalError("infeasible reservation at alpha=" + std::to_string(alpha));
  }
  const double q1 = std::ceil(k / alpha);
  out.levels.push_back(GridFunction::Constant(p.L, mgrid));
  std::vector<double> lower(mgrid + 1, 0.0);  // sum_{2 <= j < i} q_j phi_j
  for (int i = 1; i < levels; ++i) {
    GridFunction agg(lower);
    DelayRecursion rec;
    rec.scale = alpha / (2.0 * k * delta);
    rec.base = q1 * p.L * delta;
    rec.window = delta;
    rec.backward = &agg;
    rec.prefix = &agg;
    rec.self_weight = out.reservation[i];
    GridFunction level = CleanMonotone(SolveForwardDelayIntegral(rec, mgrid), "delta-dynamic");
    for (int n = 0; n <= mgrid; ++n) lower[n] += out.reservation[i] * level.samples()[n];
    out.levels.push_back(std::move(level));
  }
  return out;
}

}  // namespace

PricingProfile DeltaDynamicAt(const DesignRequest& req, double alpha) {
  PricingProfile out = DeltaDynamicRaw(req, alpha);
  for (GridFunction& f : out.levels) FloorAt(f, req.params.L);
  return out;
}

PricingProfile DesignDeltaDynamic(const DesignRequest& req) {
  const MarketParams& p = req.params;
  CheckParams(p);
  CheckGrid(req);
  if (p.delta_cap < 1) throw std::invalid_argument("delta-dynamic design requires delta_cap >= 1");
  if (req.policy == ReservationPolicy::kEvenSplit)
    throw std::invalid_argument("delta-dynamic design uses ceil-first or explicit reservation");
  if (req.policy == ReservationPolicy::kExplicit) ExplicitReservation(req, false);
  if (p.L == p.U) {
    std::vector<int> q = req.policy == ReservationPolicy::kExplicit ? req.reservation
                                                                     : CeilFirstSplit(p.k, p.delta_cap + 1, 1.0);
    return ConstantProfile(p, q, req.grid_size);
  }
  auto top = [&](double a) { return DeltaDynamicRaw(req, a).levels.back().back(); };
  const AlphaSearch s = CalibrateAlpha(top, p.U, DefaultAlphaCeiling(p.L, p.U), req.alpha_tolerance);
  PricingProfile out = DeltaDynamicAt(req, s.alpha);
  if (req.policy == ReservationPolicy::kExplicit && out.reservation[0] != static_cast<int>(std::ceil(p.k / s.alpha)))
    throw NumericalError("explicit q_1 differs from ceil(k/alpha) at the calibrated alpha " +
                         std::to_string(s.alpha));
  return out;
}

}  // namespace cppm
