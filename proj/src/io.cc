#include "cppm/io.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace cppm {

std::string FormatDouble(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void WriteProfile(std::ostream& os, const PricingProfile& profile) {
  const MarketParams& p = profile.params;
  os << "{\"L\":" << FormatDouble(p.L) << ",\"U\":" << FormatDouble(p.U) << ",\"k\":" << p.k
     << ",\"delta_cap\":" << p.delta_cap << ",\"delta_risk\":" << FormatDouble(p.delta_risk)
     << ",\"alpha\":" << FormatDouble(profile.alpha) << ",\"grid_size\":" << profile.grid_size()
     << ",\"reservation\":[";
  for (size_t i = 0; i < profile.reservation.size(); ++i) os << (i ? "," : "") << profile.reservation[i];
  os << "],\"levels\":[";
  for (size_t j = 0; j < profile.levels.size(); ++j) {
    os << (j ? ",\n[" : "\n[");
    const auto& s = profile.levels[j].samples();
    for (size_t n = 0; n < s.size(); ++n) os << (n ? "," : "") << FormatDouble(s[n]);
    os << "]";
  }
  os << "]}\n";
}

PricingProfile ReadProfile(std::istream& is) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(is);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("profile is not valid JSON: ") + e.what());
  }
  PricingProfile out;
  try {
    out.params.L = j.at("L").get<double>();
    out.params.U = j.at("U").get<double>();
    out.params.k = j.at("k").get<int>();
    out.params.delta_cap = j.at("delta_cap").get<int>();
    out.params.delta_risk = j.at("delta_risk").get<double>();
    out.alpha = j.at("alpha").get<double>();
    const int m = j.at("grid_size").get<int>();
    out.reservation = j.at("reservation").get<std::vector<int>>();
    for (const auto& level : j.at("levels")) {
      std::vector<double> s = level.get<std::vector<double>>();
      if (static_cast<int>(s.size()) != m + 1)
        throw FormatError("level " + std::to_string(out.levels.size() + 1) + " has " + std::to_string(s.size()) +
                          " samples, expected grid_size+1");
      out.levels.emplace_back(std::move(s));
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("profile field error: ") + e.what());
  }
  if (auto v = Validate(out)) throw FormatError("invalid profile: " + *v);
  return out;
}

Instance ReadInstance(std::istream& is, std::vector<int>* lines) {
  Instance inst;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    const size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    const size_t b = line.find_last_not_of(" \t\r");
    const std::string tok = line.substr(a, b - a + 1);
    size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size() || !std::isfinite(v))
      throw FormatError("line " + std::to_string(lineno) + ": expected one number, got '" + tok + "'");
    inst.valuations.push_back(v);
    if (lines) lines->push_back(lineno);
  }
  return inst;
}

void WriteInstance(std::ostream& os, const Instance& instance) {
  for (double v : instance.valuations) os << FormatDouble(v) << "\n";
}

void WriteTraceCsv(std::ostream& os, const Instance& instance, const SeedOutcome& outcome, bool header) {
  if (header) os << "t,v_t,level,price,accepted,y_after\n";
  int y = 0;
  for (size_t t = 0; t < instance.valuations.size(); ++t) {
    y += outcome.allocations[t];
    os << t + 1 << "," << FormatDouble(instance.valuations[t]) << "," << outcome.levels[t] << ","
       << FormatDouble(outcome.posted_prices[t]) << "," << outcome.allocations[t] << "," << y << "\n";
  }
}

void WriteDistributionCsv(std::ostream& os, const std::vector<double>& seed_welfare) {
  os << "seed_mid,welfare\n";
  const size_t m = seed_welfare.size();
  for (size_t i = 0; i < m; ++i) os << FormatDouble((i + 0.5) / m) << "," << FormatDouble(seed_welfare[i]) << "\n";
}

void WriteRatioCsv(std::ostream& os, const RatioReport& report) {
  os << "instance_id,opt,cvar,ratio\n";
  for (const RatioRow& r : report.rows)
    os << r.instance_id << "," << FormatDouble(r.opt) << "," << FormatDouble(r.cvar) << "," << FormatDouble(r.ratio)
       << "\n";
}

void WriteSweepCsv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "k,delta_cap,delta_risk,alpha,worst_ratio\n";
  for (const SweepRow& r : rows)
    os << r.k << "," << r.delta_cap << "," << FormatDouble(r.delta_risk) << "," << FormatDouble(r.alpha) << ","
       << FormatDouble(r.worst_ratio) << "\n";
}

void WritePricingSweepCsv(std::ostream& os, const std::vector<PricingSweepRow>& rows) {
  os << "k,delta_cap,delta_risk,L,U,alpha,grid_size\n";
  for (const PricingSweepRow& r : rows)
    os << r.params.k << "," << r.params.delta_cap << "," << FormatDouble(r.params.delta_risk) << ","
       << FormatDouble(r.params.L) << "," << FormatDouble(r.params.U) << "," << FormatDouble(r.alpha) << ","
       << r.grid_size << "\n";
}

}  // namespace cppm
