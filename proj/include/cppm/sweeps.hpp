#ifndef CPPM_SWEEPS_HPP_
#define CPPM_SWEEPS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "cppm/io.hpp"
#include "cppm/model.hpp"

namespace cppm {

struct SweepOptions {
  int grid_size = 4000;
  int ratio_seeds = 4001;      // 0 skips the hard-family ratio
  double epsilon_divisor = 200;  // epsilon = (U - L) / divisor
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<std::string> errors;  // one entry per failed row, empty on success
};

// Fully-dynamic design, delta in {0.2, 0.6, 0.9}, k = 3..100, L = 1, U = 100.
SweepResult Fig3Sweep(const SweepOptions& opt);
// Delta-dynamic design, delta in {0.2, 0.4, 0.8}, Delta = 1..39, k = 40, L = 1, U = 100.
SweepResult Fig4Sweep(const SweepOptions& opt);

// Staircase 1, 5.95, ..., 20.8 with ten buyers per step, L = 1, U = 100, k = 10.
MarketParams Fig1Params();
Instance Fig1Instance();

struct Fig1Run {
  std::string algo;
  int run;
  double welfare;
};
std::vector<Fig1Run> Fig1Runs(int n_runs, uint64_t rng_seed);
void WriteFig1Csv(std::ostream& os, const std::vector<Fig1Run>& runs);

}  // namespace cppm

#endif  // CPPM_SWEEPS_HPP_
