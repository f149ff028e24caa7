#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fgd/hurst.hpp"
#include "fgd/types.hpp"

namespace fgd {

/// Monte Carlo sweep description. Cells are the cross product of
/// h_values x sigma_values x n_values; every estimator in `estimators` is
/// evaluated on every cell with `replicates` independent paths.
///
/// Estimator ids: "h1".."h4", "s1_h1".."s3_h3" (sigma estimator with the
/// plug-in Hurst estimator), "s1_true".."s3_true" (true H supplied), "s4".
struct ExperimentSpec {
  std::vector<double> h_values{0.75};
  std::vector<double> sigma_values{1.5};
  std::vector<int> n_values{1024};
  double x0 = 3.0;
  double alpha = 0.5;
  double beta = 2.0;
  double horizon = 1.0;
  int replicates = 300;
  std::uint64_t seed = 424243;
  std::vector<std::string> estimators{"h1", "h2", "h3", "h4"};
  std::vector<int> schedule_r{1, 2, 4, 8};
  ScheduleConvention convention = ScheduleConvention::divisive;
  int oversample = 1;
};

/// Throws INVALID_SPEC with a field-level message on the first violation.
void validate(const ExperimentSpec& spec);

struct SummaryRow {
  std::string estimator;
  double hurst;
  double sigma;
  int n;
  double mean_abs_err;
  double se_abs;
  double mean_rel_err;
  double se_rel;
  double std_stat_var;  // NaN when fewer than 2 successes
  double var_ratio;     // NaN when the estimator has no stated limit variance
  int oor_count;
  int fail_count;
};

struct SummaryTable {
  std::vector<SummaryRow> rows;
};

/// Runs the sweep. Replicates are farmed out to `threads` workers
/// (0 = machine parallelism); results are merged in replicate order, so the
/// table is identical for any thread count.
SummaryTable run_experiment(const ExperimentSpec& spec, int threads = 0);

struct NormalityDiagnostic {
  int count;
  double sample_var;   // variance of rate * (estimate - center)
  double ratio;        // sample_var / target_var
  double ks_distance;  // KS distance to N(0, target_var)
};

NormalityDiagnostic normality_diagnostic(const std::vector<double>& estimates,
                                         double center, double rate,
                                         double target_var);

/// Log-log decay of the second-increment residual
/// max_k |D2 X_k - sigma X_{k-1} D2 B_k| across nested grid refinements of a
/// single simulated path.
struct SlopeRecord {
  bool ok;          // >= 3 usable grids and a finite fit
  double slope;
  double slope_se;  // OLS standard error (NaN below 3 points)
  std::vector<double> log_spacing;
  std::vector<double> log_residual;
};

SlopeRecord increment_residual_scan(const GompertzParams& params,
                                    std::uint64_t seed,
                                    const std::vector<int>& grids);

/// Canned sweeps mirroring the four comparison figures:
///   fig1: Hurst-estimator error vs H      (n = 1024)
///   fig2: Hurst-estimator error vs n      (H = 0.75)
///   fig3: diffusion-estimator error vs sigma (n = 1024)
///   fig4: diffusion-estimator error vs n  (sigma = 1)
ExperimentSpec preset(const std::string& name);

}  // namespace fgd
