#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gmlab/group_model.hpp"
#include "gmlab/report.hpp"
#include "gmlab/spectral.hpp"
#include "gmlab/verifiers.hpp"

namespace gmlab {

// Runs fn(0..n-1) on a worker pool. Results must be written to
// trial-indexed slots; aggregation stays order-independent so reports are
// identical for any worker count.
void parallel_for(int n, int workers, const std::function<void(int)>& fn);

int default_workers();

// ---- aggregated trial drivers (max-ratio over per-trial reports) ----

VerificationReport sweep_plancherel(const GroupModel& m, int trials, std::uint64_t seed,
                                    int workers);
VerificationReport sweep_hyp(const GroupModel& m, const WeightFn& phi, double p, double b,
                             int trials, std::uint64_t seed, int workers);
VerificationReport sweep_nikolskii(const GroupModel& m, double p, double q, int trials,
                                   std::uint64_t seed, int workers);

struct ScanResult {
  std::vector<int> sizes;
  std::vector<double> constants;  // empirical max(lhs/rhs) per rung
  bool pass = false;              // final/first <= 1.10 (vacuous for one rung)
  std::string inequality_id;
};

// Constant-stability scan over a ladder of cyclic-model sizes. inequality is
// "hyp" (params p, b + weight) or "hormander" (params p, q + symbol kind).
ScanResult scan_constant_stability(const std::vector<int>& ladder,
                                   const std::string& inequality, double p, double second,
                                   const WeightFn& phi, const std::string& symbol_kind,
                                   int trials, std::uint64_t seed, int workers);

// ---- configuration-driven experiments ----

struct RunOptions {
  std::string out_dir = ".";
  std::optional<ReportFormat> format;
  int workers = 0;  // 0 = hardware
  std::optional<std::uint64_t> seed_override;
};

// Executes the experiment described by the JSON config. Exit code semantics:
// 0 all pass, 1 any verifier fail, 2 usage/config error.
int run_config(const std::string& config_path, const RunOptions& opt);
int run_fit(const std::string& series_csv_path);

}  // namespace gmlab
