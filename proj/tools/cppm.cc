// Command-line driver: design, simulate, evaluate, verify, reproduce.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cppm/evaluation.hpp"
#include "cppm/io.hpp"
#include "cppm/mechanism.hpp"
#include "cppm/pricing.hpp"
#include "cppm/sweeps.hpp"

namespace {

using namespace cppm;

constexpr int kUsageError = 1;
constexpr int kNumericalError = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Output {
  std::ofstream file;
  std::ostream* os = &std::cout;
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file.open(path);
    if (!file) throw UsageError("cannot open " + path + " for writing");
    os = &file;
  }
};

PricingProfile LoadProfile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open profile " + path);
  return ReadProfile(in);
}

Instance LoadInstance(const std::string& path, const MarketParams& params) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open instance " + path);
  std::vector<int> lines;
  Instance inst = ReadInstance(in, &lines);
  for (size_t t = 0; t < inst.valuations.size(); ++t) {
    const double v = inst.valuations[t];
    if (v < params.L || v > params.U) {
      std::ostringstream msg;
      msg << path << ": line " << lines[t] << ": valuation " << v << " outside [" << params.L << ", " << params.U
          << "]";
      throw FormatError(msg.str());
    }
  }
  return inst;
}

struct ParamFlags {
  double L = 1.0;
  double U = 100.0;
  int k = 1;
  std::optional<int> cap;
  double delta = 1.0;

  void Add(CLI::App* app) {
    app->add_option("--L", L, "price lower bound");
    app->add_option("--U", U, "price upper bound");
    app->add_option("--k", k, "inventory");
    app->add_option("--cap", cap, "allowed price changes");
    app->add_option("--delta", delta, "CVaR tail probability");
  }
  MarketParams Params(int default_cap) const { return {L, U, k, cap.value_or(default_cap), delta}; }
};

std::vector<int> ParseIntList(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      out.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw UsageError("bad reservation entry '" + tok + "'");
    }
  }
  return out;
}

int Run(int argc, char** argv) {
  CLI::App app{"Correlated posted-price mechanisms for online k-selection"};
  app.require_subcommand(1);

  // design
  auto* design = app.add_subcommand("design", "build a pricing profile");
  ParamFlags dflags;
  dflags.Add(design);
  std::string mode;
  std::string dout = "profile.json";
  std::string policy;
  std::string reservation;
  int dgrid = 10000;
  double dtol = 1e-8;
  design->add_option("--mode", mode, "neutral|static|fully-dynamic|delta-dynamic")
      ->required()
      ->check(CLI::IsMember({"neutral", "static", "fully-dynamic", "delta-dynamic"}));
  design->add_option("--out", dout, "profile path");
  design->add_option("--grid", dgrid, "grid size M");
  design->add_option("--alpha-tol", dtol, "relative boundary tolerance");
  design->add_option("--policy", policy, "even-split|ceil-first|explicit")
      ->check(CLI::IsMember({"even-split", "ceil-first", "explicit"}));
  design->add_option("--reservation", reservation, "comma-separated q vector for --policy explicit");

  // simulate
  auto* simulate = app.add_subcommand("simulate", "run the mechanism or a baseline");
  ParamFlags sflags;
  sflags.Add(simulate);
  std::string sprofile, sinstance, sout, algo = "cppm";
  std::optional<double> seed;
  int seed_grid = 0, runs = 0;
  std::optional<uint64_t> srng;
  bool trace = false;
  simulate->add_option("--profile", sprofile, "profile path");
  simulate->add_option("--instance", sinstance, "instance path")->required();
  simulate->add_option("--algo", algo, "cppm|r-static|d-dynamic|r-dynamic")
      ->check(CLI::IsMember({"cppm", "r-static", "d-dynamic", "r-dynamic"}));
  simulate->add_option("--seed", seed, "single seed r in [0,1]");
  simulate->add_option("--seed-grid", seed_grid, "number of midpoint seed cells");
  simulate->add_option("--runs", runs, "Monte Carlo runs for baselines");
  simulate->add_option("--rng", srng, "generator seed for Monte Carlo");
  simulate->add_flag("--trace", trace, "per-buyer trace at --seed");
  simulate->add_option("--out", sout, "output CSV (default stdout)");

  // evaluate
  auto* evaluate = app.add_subcommand("evaluate", "CVaR competitive ratios");
  std::string eprofile, eout;
  std::vector<std::string> einstances;
  bool hard_family = false;
  int m_seeds = 4001;
  std::optional<double> edelta, eeps;
  double etol = 1e-2;
  evaluate->add_option("--profile", eprofile, "profile path")->required();
  evaluate->add_option("--instance", einstances, "instance paths");
  evaluate->add_flag("--hard-family", hard_family, "all truncations of the staircase family");
  evaluate->add_option("--eps", eeps, "staircase step (default (U-L)/200)");
  evaluate->add_option("--m-seeds", m_seeds, "seed cells");
  evaluate->add_option("--delta", edelta, "tail probability (default: profile's)");
  evaluate->add_option("--tolerance", etol, "flag ratios above alpha*(1+tolerance)");
  evaluate->add_option("--out", eout, "ratio CSV (default stdout)");

  // verify
  auto* verify = app.add_subcommand("verify", "lemma property checks");
  std::string vprofile, vinstance, lemma = "all";
  int resolution = 2001;
  verify->add_option("--profile", vprofile, "profile path")->required();
  verify->add_option("--instance", vinstance, "instance path")->required();
  verify->add_option("--lemma", lemma, "monotonicity|floor|rounding|all")
      ->check(CLI::IsMember({"monotonicity", "floor", "rounding", "all"}));
  verify->add_option("--resolution", resolution, "seed grid resolution");

  // reproduce
  auto* reproduce = app.add_subcommand("reproduce", "figure CSV bundles");
  std::string figure, out_dir = ".";
  SweepOptions sweep;
  int fig_runs = 10000;
  std::optional<uint64_t> frng;
  reproduce->add_option("figure", figure, "fig1|fig3|fig4")->required()->check(CLI::IsMember({"fig1", "fig3", "fig4"}));
  reproduce->add_option("--out-dir", out_dir, "output directory");
  reproduce->add_option("--grid", sweep.grid_size, "grid size M for the designs");
  reproduce->add_option("--ratio-seeds", sweep.ratio_seeds, "seed cells for worst_ratio (0 skips)");
  reproduce->add_option("--runs", fig_runs, "Monte Carlo runs for fig1");
  reproduce->add_option("--rng", frng, "generator seed for fig1");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsageError;
  }

  if (design->parsed()) {
    MarketParams p;
    DesignRequest req;
    if (mode == "neutral") {
      p = dflags.Params(0);
      req.policy = ReservationPolicy::kEvenSplit;
    } else if (mode == "static") {
      p = dflags.Params(0);
    } else if (mode == "fully-dynamic") {
      p = dflags.Params(dflags.k - 1);
    } else {
      if (!dflags.cap) throw UsageError("--cap is required for delta-dynamic");
      p = dflags.Params(0);
      req.policy = ReservationPolicy::kCeilFirst;
    }
    req.params = p;
    req.grid_size = dgrid;
    req.alpha_tolerance = dtol;
    if (policy == "even-split") req.policy = ReservationPolicy::kEvenSplit;
    if (policy == "ceil-first") req.policy = ReservationPolicy::kCeilFirst;
    if (policy == "explicit" || !reservation.empty()) {
      req.policy = ReservationPolicy::kExplicit;
      req.reservation = ParseIntList(reservation);
    }
    PricingProfile prof;
    if (mode == "neutral") prof = DesignRiskNeutral(req);
    else if (mode == "static") prof = DesignStaticRisk(req);
    else if (mode == "fully-dynamic") prof = DesignFullyDynamic(req);
    else prof = DesignDeltaDynamic(req);
    if (auto v = Validate(prof)) throw NumericalError("designed profile fails validation: " + *v);
    Output out(dout);
    WriteProfile(*out.os, prof);
    std::cout << "alpha=" << FormatDouble(prof.alpha) << "\n";
    return 0;
  }

  if (simulate->parsed()) {
    std::optional<PricingProfile> prof;
    if (!sprofile.empty()) prof = LoadProfile(sprofile);
    const MarketParams params = prof ? prof->params : sflags.Params(0);
    if (auto v = Validate(params)) throw UsageError(*v);
    const Instance inst = LoadInstance(sinstance, params);
    Output out(sout);
    if (algo == "cppm") {
      if (!prof) throw UsageError("--profile is required for cppm");
      if (seed_grid > 0 && (seed || trace)) throw UsageError("--seed-grid excludes --seed and --trace");
      if (seed_grid > 0) {
        WriteDistributionCsv(*out.os, SeedGridWelfare(*prof, inst, seed_grid));
      } else if (seed) {
        const SeedOutcome o = RunCppm(*prof, inst, *seed);
        if (trace) {
          WriteTraceCsv(*out.os, inst, o);
        } else {
          *out.os << "seed,welfare,revenue\n"
                  << FormatDouble(o.seed) << "," << FormatDouble(o.welfare) << "," << FormatDouble(o.revenue) << "\n";
        }
      } else {
        throw UsageError("cppm needs --seed or --seed-grid");
      }
      return 0;
    }
    if (algo == "d-dynamic" && runs == 0) {
      const SeedOutcome o = RunDDynamic(params, inst);
      if (trace) WriteTraceCsv(*out.os, inst, o);
      else *out.os << "welfare,revenue\n" << FormatDouble(o.welfare) << "," << FormatDouble(o.revenue) << "\n";
      return 0;
    }
    if (runs < 1) throw UsageError("--runs is required for " + algo);
    if (!srng) throw UsageError("--rng is required for Monte Carlo runs");
    const MultiSeedRunner runner = algo == "r-static"    ? RStaticRunner(params)
                                   : algo == "r-dynamic" ? RDynamicRunner(params)
                                                         : DDynamicRunner(params);
    const std::vector<double> w = MonteCarloWelfare(runner, inst, runs, *srng);
    *out.os << "run,welfare\n";
    for (int i = 0; i < runs; ++i) *out.os << i + 1 << "," << FormatDouble(w[i]) << "\n";
    return 0;
  }

  if (evaluate->parsed()) {
    const PricingProfile prof = LoadProfile(eprofile);
    const double delta = edelta.value_or(prof.params.delta_risk);
    RatioReport rep;
    if (hard_family) {
      const double eps = eeps.value_or((prof.params.U - prof.params.L) / 200.0);
      rep = HardFamilyCvarCr(prof, delta, eps, m_seeds, etol);
    } else {
      if (einstances.empty()) throw UsageError("give --instance paths or --hard-family");
      std::vector<NamedInstance> set;
      for (const auto& path : einstances) set.push_back({path, LoadInstance(path, prof.params)});
      rep = CvarCr(prof, set, delta, m_seeds, etol);
    }
    Output out(eout);
    WriteRatioCsv(*out.os, rep);
    std::cerr << rep.label << ": worst_ratio=" << FormatDouble(rep.worst_ratio)
              << " alpha=" << FormatDouble(rep.designed_alpha) << " flagged=" << rep.flagged << "\n";
    return 0;
  }

  if (verify->parsed()) {
    const PricingProfile prof = LoadProfile(vprofile);
    const Instance inst = LoadInstance(vinstance, prof.params);
    const std::map<std::string, Lemma> names = {
        {"monotonicity", Lemma::kMonotonicity}, {"floor", Lemma::kFloor}, {"rounding", Lemma::kRounding}};
    bool all_passed = true;
    for (const auto& [name, which] : names) {
      if (lemma != "all" && lemma != name) continue;
      if (which == Lemma::kRounding && lemma == "all" && prof.num_levels() != prof.params.k) continue;
      const LemmaReport rep = VerifyLemma(prof, inst, which, resolution);
      std::cout << "lemma=" << name << " " << (rep.passed ? "passed" : "FAILED") << " checks=" << rep.checks;
      if (!rep.passed) std::cout << " counterexample: " << rep.counterexample;
      std::cout << "\n";
      all_passed = all_passed && rep.passed;
    }
    return all_passed ? 0 : kNumericalError;
  }

  if (reproduce->parsed()) {
    std::filesystem::create_directories(out_dir);
    const std::string path = (std::filesystem::path(out_dir) / (figure + ".csv")).string();
    if (figure == "fig1") {
      if (!frng) throw UsageError("--rng is required for fig1");
      Output out(path);
      WriteFig1Csv(*out.os, Fig1Runs(fig_runs, *frng));
    } else {
      const SweepResult res = figure == "fig3" ? Fig3Sweep(sweep) : Fig4Sweep(sweep);
      Output out(path);
      WriteSweepCsv(*out.os, res.rows);
      for (const auto& e : res.errors) std::cerr << "row failed: " << e << "\n";
    }
    std::cout << "wrote " << path << "\n";
    return 0;
  }
  return kUsageError;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return Run(argc, argv);
  } catch (const cppm::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumericalError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  }
}
