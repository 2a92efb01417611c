#ifndef CPPM_IO_HPP_
#define CPPM_IO_HPP_

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "cppm/evaluation.hpp"
#include "cppm/model.hpp"

namespace cppm {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One JSON object; every number written with 17 significant digits.
void WriteProfile(std::ostream& os, const PricingProfile& profile);
PricingProfile ReadProfile(std::istream& is);

// One valuation per line; '#' starts a comment; blank lines are skipped.
// lines, when given, receives the 1-based source line of each valuation.
Instance ReadInstance(std::istream& is, std::vector<int>* lines = nullptr);
void WriteInstance(std::ostream& os, const Instance& instance);

std::string FormatDouble(double x);

// t,v_t,level,price,accepted,y_after
void WriteTraceCsv(std::ostream& os, const Instance& instance, const SeedOutcome& outcome, bool header = true);
// seed_mid,welfare
void WriteDistributionCsv(std::ostream& os, const std::vector<double>& seed_welfare);
// instance_id,opt,cvar,ratio
void WriteRatioCsv(std::ostream& os, const RatioReport& report);

struct SweepRow {
  int k = 0;
  int delta_cap = 0;
  double delta_risk = 0.0;
  double alpha = 0.0;
  double worst_ratio = 0.0;
};
// k,delta_cap,delta_risk,alpha,worst_ratio
void WriteSweepCsv(std::ostream& os, const std::vector<SweepRow>& rows);

struct PricingSweepRow {
  MarketParams params;
  double alpha = 0.0;
  int grid_size = 0;
};
// k,delta_cap,delta_risk,L,U,alpha,grid_size
void WritePricingSweepCsv(std::ostream& os, const std::vector<PricingSweepRow>& rows);

}  // namespace cppm

#endif  // CPPM_IO_HPP_
