#include "fgd/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>

#include "fgd/diffusion.hpp"
#include "fgd/fgn.hpp"
#include "fgd/gompertz.hpp"
#include "fgd/rng.hpp"
#include "fgd/theory.hpp"
#include "fgd/variation.hpp"

namespace fgd {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

enum class SigmaKind { none, s1, s2, s3, s4 };
enum class HurstKind { none, h1, h2, h3, h4 };
enum class HSource { none, h1, h2, h3, true_h };

struct EstimatorId {
  std::string label;
  HurstKind hurst = HurstKind::none;
  SigmaKind sigma = SigmaKind::none;
  HSource h_source = HSource::none;
};

EstimatorId parse_estimator(const std::string& label) {
  EstimatorId id;
  id.label = label;
  if (label == "h1") id.hurst = HurstKind::h1;
  else if (label == "h2") id.hurst = HurstKind::h2;
  else if (label == "h3") id.hurst = HurstKind::h3;
  else if (label == "h4") id.hurst = HurstKind::h4;
  else if (label == "s4") id.sigma = SigmaKind::s4;
  else if (label.size() >= 4 && label[0] == 's' && label[2] == '_') {
    switch (label[1]) {
      case '1': id.sigma = SigmaKind::s1; break;
      case '2': id.sigma = SigmaKind::s2; break;
      case '3': id.sigma = SigmaKind::s3; break;
      default: raise(ErrorCode::invalid_spec, "unknown estimator " + label);
    }
    const std::string source = label.substr(3);
    if (source == "h1") id.h_source = HSource::h1;
    else if (source == "h2") id.h_source = HSource::h2;
    else if (source == "h3") id.h_source = HSource::h3;
    else if (source == "true") id.h_source = HSource::true_h;
    else raise(ErrorCode::invalid_spec, "unknown estimator " + label);
  } else {
    raise(ErrorCode::invalid_spec, "unknown estimator " + label);
  }
  return id;
}

struct CellNeeds {
  bool h1 = false, h2 = false, h3 = false, h4 = false;
  bool sigma_at_n = false, s4 = false;
};

CellNeeds needs_of(const std::vector<EstimatorId>& ids) {
  CellNeeds needs;
  for (const auto& id : ids) {
    if (id.hurst == HurstKind::h1 || id.h_source == HSource::h1) needs.h1 = true;
    if (id.hurst == HurstKind::h2 || id.h_source == HSource::h2) needs.h2 = true;
    if (id.hurst == HurstKind::h3 || id.h_source == HSource::h3) needs.h3 = true;
    if (id.hurst == HurstKind::h4) needs.h4 = true;
    if (id.sigma == SigmaKind::s4) {
      needs.s4 = true;
      needs.h3 = true;
    }
    if (id.sigma == SigmaKind::s1 || id.sigma == SigmaKind::s2 ||
        id.sigma == SigmaKind::s3) {
      needs.sigma_at_n = true;
    }
  }
  return needs;
}

long lcm_long(long a, long b) { return a / std::gcd(a, b) * b; }

/// Finest grid shared by h1/h3/sigma estimators of a cell (times oversample).
long shared_grid_size(const CellNeeds& needs, const ExperimentSpec& spec,
                      int n) {
  long m = n;
  if (needs.h1) m = lcm_long(m, 2L * n);
  if (needs.h3 || needs.s4) {
    RatioSchedule schedule(spec.schedule_r, n, spec.convention);
    for (int size : schedule.grid_sizes()) m = lcm_long(m, size);
  }
  return m * spec.oversample;
}

struct ReplicateRecord {
  std::vector<double> value;  // per estimator, NaN when failed
  std::vector<bool> oor;
  std::vector<bool> failed;
};

/// One (cell, replicate) evaluation. Pure given the derived seed.
ReplicateRecord run_replicate(const ExperimentSpec& spec,
                              const std::vector<EstimatorId>& ids,
                              const CellNeeds& needs, double h_true,
                              double sigma_true, int n,
                              std::uint64_t cell_seed) {
  const HurstIndex hurst(h_true);
  const GompertzParams params(spec.x0, spec.alpha, spec.beta, sigma_true,
                              hurst, spec.horizon);

  const long shared_m = shared_grid_size(needs, spec, n);
  const FbmPath fbm = sample_fbm_circulant(
      hurst, GridSpec(spec.horizon, static_cast<int>(shared_m)),
      split_seed(cell_seed, 0));
  const ProcessPath path = solve_explicit(params, fbm);

  // Optional sub-estimates shared by all ids of this replicate.
  double est_h1 = kNaN, est_h2 = kNaN, est_h3 = kNaN, est_h4 = kNaN;
  bool oor_h1 = false, oor_h2 = false, oor_h3 = false, oor_h4 = false;

  if (needs.h1) {
    try {
      const HurstEstimate e = h1(subsample(path, n), subsample(path, 2 * n));
      est_h1 = e.value;
      oor_h1 = e.out_of_range;
    } catch (const Error&) {
    }
  }

  std::vector<ProcessPath> schedule_paths;
  RatioSchedule schedule(spec.schedule_r, n, spec.convention);
  if (needs.h3 || needs.s4) {
    for (int size : schedule.grid_sizes()) {
      schedule_paths.push_back(subsample(path, size));
    }
    try {
      const HurstEstimate e = h3(schedule_paths, schedule);
      est_h3 = e.value;
      oor_h3 = e.out_of_range;
    } catch (const Error&) {
    }
  }

  if (needs.h2) {
    try {
      const int n2 = h2_base_from_budget(n);
      const long m2 = static_cast<long>(n2) * n2 * n2;
      const FbmPath fbm2 = sample_fbm_circulant(
          hurst, GridSpec(spec.horizon, static_cast<int>(m2)),
          split_seed(cell_seed, 1));
      const HurstEstimate e = h2(solve_explicit(params, fbm2), n2);
      est_h2 = e.value;
      oor_h2 = e.out_of_range;
    } catch (const Error&) {
    }
  }

  if (needs.h4) {
    try {
      const int n4 = h4_base_from_budget(n);
      const long m4 = static_cast<long>(n4) * n4 * n4 * n4;
      const FbmPath fbm4 = sample_fbm_circulant(
          hurst, GridSpec(spec.horizon, static_cast<int>(m4)),
          split_seed(cell_seed, 2));
      const HurstEstimate e = h4(solve_explicit(params, fbm4));
      est_h4 = e.value;
      oor_h4 = e.out_of_range;
    } catch (const Error&) {
    }
  }

  ProcessPath path_at_n = needs.sigma_at_n ? subsample(path, n)
                                           : ProcessPath{path};

  ReplicateRecord record;
  record.value.assign(ids.size(), kNaN);
  record.oor.assign(ids.size(), false);
  record.failed.assign(ids.size(), false);

  for (std::size_t i = 0; i < ids.size(); ++i) {
    const EstimatorId& id = ids[i];
    try {
      if (id.hurst != HurstKind::none) {
        double v = kNaN;
        bool oor = false;
        switch (id.hurst) {
          case HurstKind::h1: v = est_h1; oor = oor_h1; break;
          case HurstKind::h2: v = est_h2; oor = oor_h2; break;
          case HurstKind::h3: v = est_h3; oor = oor_h3; break;
          case HurstKind::h4: v = est_h4; oor = oor_h4; break;
          default: break;
        }
        if (std::isnan(v)) {
          record.failed[i] = true;
        } else {
          record.value[i] = v;
          record.oor[i] = oor;
        }
        continue;
      }

      if (id.sigma == SigmaKind::s4) {
        if (std::isnan(est_h3)) {
          record.failed[i] = true;
        } else {
          record.value[i] = sigma4(schedule_paths, schedule, est_h3);
        }
        continue;
      }

      double plug_in = h_true;
      switch (id.h_source) {
        case HSource::h1: plug_in = est_h1; break;
        case HSource::h2: plug_in = est_h2; break;
        case HSource::h3: plug_in = est_h3; break;
        default: break;
      }
      if (std::isnan(plug_in)) {
        record.failed[i] = true;
        continue;
      }
      switch (id.sigma) {
        case SigmaKind::s1: record.value[i] = sigma2_1(path_at_n, plug_in); break;
        case SigmaKind::s2: record.value[i] = sigma2_2(path_at_n, plug_in); break;
        case SigmaKind::s3: record.value[i] = sigma2_3(path_at_n, plug_in); break;
        default: break;
      }
    } catch (const Error&) {
      record.failed[i] = true;
      record.value[i] = kNaN;
    }
  }
  return record;
}

double sample_mean(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / v.size();
}

double sample_variance(const std::vector<double>& v, double mean) {
  if (v.size() < 2) return kNaN;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return ss / (v.size() - 1);
}

/// Stated limit variance of the standardized statistic, when the theory
/// provides one; NaN otherwise.
double limit_variance_target(const EstimatorId& id, double h_true,
                             double sigma_true,
                             const ExperimentSpec& spec) {
  const HurstIndex hurst(h_true);
  switch (id.hurst) {
    case HurstKind::h1:
      return limit_var_h1(hurst);
    case HurstKind::h2:
      return sigma_sq(hurst);
    case HurstKind::h3: {
      if (spec.convention != ScheduleConvention::multiplicative) return kNaN;
      RatioSchedule schedule(spec.schedule_r, 1, spec.convention);
      const RegressionWeights w = weights(schedule);
      Eigen::VectorXd d(w.z.size());
      for (Eigen::Index i = 0; i < d.size(); ++i) {
        d[i] = 0.5 * w.z[i] / std::sqrt(static_cast<double>(schedule.r[i]));
      }
      return sigma2_l(schedule.r, d, hurst);
    }
    default:
      break;
  }
  if (id.sigma == SigmaKind::s2) {
    return sigma_true * sigma_true * sigma_true * sigma_true * sigma_sq(hurst);
  }
  return kNaN;
}

/// Rate and center of the standardized statistic for normality bookkeeping.
void standardization(const EstimatorId& id, double h_true, double sigma_true,
                     int n, double horizon, double& rate, double& center,
                     bool& on_sq_scale) {
  on_sq_scale = false;
  rate = kNaN;
  center = kNaN;
  switch (id.hurst) {
    case HurstKind::h1:
      rate = 2.0 * std::log(2.0) * std::sqrt(static_cast<double>(n));
      center = h_true;
      return;
    case HurstKind::h2: {
      const int n2 = h2_base_from_budget(n);
      rate = 2.0 * std::sqrt(static_cast<double>(n2)) * std::log(n2 / horizon);
      center = h_true;
      return;
    }
    case HurstKind::h3:
      rate = std::sqrt(static_cast<double>(n));
      center = h_true;
      return;
    case HurstKind::h4:
      return;
    default:
      break;
  }
  if (id.sigma == SigmaKind::s1 || id.sigma == SigmaKind::s2 ||
      id.sigma == SigmaKind::s3) {
    rate = std::sqrt(static_cast<double>(n));
    center = sigma_true * sigma_true;
    on_sq_scale = true;
  }
}

}  // namespace

void validate(const ExperimentSpec& spec) {
  auto fail = [](const std::string& field, const std::string& why) {
    raise(ErrorCode::invalid_spec, "field '" + field + "': " + why);
  };
  if (spec.h_values.empty()) fail("h", "at least one value required");
  for (double h : spec.h_values) {
    if (!(h > 0.5 && h < 1.0)) fail("h", "values must lie in (1/2, 1)");
  }
  if (spec.sigma_values.empty()) fail("sigma", "at least one value required");
  for (double s : spec.sigma_values) {
    if (!(s >= 0.0)) fail("sigma", "values must be nonnegative");
  }
  if (spec.n_values.empty()) fail("n", "at least one value required");
  if (!(spec.x0 > 0.0)) fail("x0", "must be positive");
  if (spec.beta == 0.0) fail("beta", "must be nonzero");
  if (!(spec.horizon > 0.0)) fail("horizon", "must be positive");
  if (spec.replicates < 1) fail("replicates", "must be >= 1");
  if (spec.oversample < 1) fail("oversample", "must be >= 1");
  if (spec.estimators.empty()) fail("estimators", "at least one required");

  std::vector<EstimatorId> ids;
  for (const auto& label : spec.estimators) ids.push_back(parse_estimator(label));
  const CellNeeds needs = needs_of(ids);

  for (int n : spec.n_values) {
    if (n < 2) fail("n", "grid sizes must be >= 2");
    if (needs.h2 && h2_base_from_budget(n) < 4) {
      fail("n", "budget " + std::to_string(n) +
                    " too small for h2 (needs n >= 64)");
    }
    if (needs.h4 && h4_base_from_budget(n) < 2) {
      fail("n", "budget " + std::to_string(n) +
                    " too small for h4 (needs n >= 16)");
    }
    if (needs.h3 || needs.s4) {
      try {
        RatioSchedule schedule(spec.schedule_r, n, spec.convention);
        for (int size : schedule.grid_sizes()) {
          if (size < 3) fail("schedule", "grid n_j = " + std::to_string(size) +
                                             " too coarse for variations");
        }
      } catch (const Error& e) {
        fail("schedule", e.what());
      }
    }
  }
}

SummaryTable run_experiment(const ExperimentSpec& spec, int threads) {
  validate(spec);

  std::vector<EstimatorId> ids;
  for (const auto& label : spec.estimators) ids.push_back(parse_estimator(label));
  const CellNeeds needs = needs_of(ids);

  struct Cell {
    double h;
    double sigma;
    int n;
    std::uint64_t index;
  };
  std::vector<Cell> cells;
  std::uint64_t cell_index = 0;
  for (double h : spec.h_values) {
    for (double sigma : spec.sigma_values) {
      for (int n : spec.n_values) {
        cells.push_back(Cell{h, sigma, n, cell_index++});
      }
    }
  }

  const int replicates = spec.replicates;
  std::vector<ReplicateRecord> records(cells.size() * replicates);

  const long total_tasks = static_cast<long>(records.size());
  std::atomic<long> next_task{0};
  auto worker = [&]() {
    for (;;) {
      const long task = next_task.fetch_add(1);
      if (task >= total_tasks) break;
      const Cell& cell = cells[static_cast<std::size_t>(task) / replicates];
      const int rep = static_cast<int>(task % replicates);
      const std::uint64_t seed =
          split_seed(spec.seed, cell.index, static_cast<std::uint64_t>(rep));
      records[task] = run_replicate(spec, ids, needs, cell.h, cell.sigma,
                                    cell.n, seed);
    }
  };

  int worker_count = threads > 0
                         ? threads
                         : static_cast<int>(std::thread::hardware_concurrency());
  if (worker_count < 1) worker_count = 1;
  if (worker_count == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(worker_count);
    for (int i = 0; i < worker_count; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  SummaryTable table;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const Cell& cell = cells[c];
    for (std::size_t e = 0; e < ids.size(); ++e) {
      const EstimatorId& id = ids[e];

      std::vector<double> values;
      int oor = 0;
      int failed = 0;
      for (int rep = 0; rep < replicates; ++rep) {
        const ReplicateRecord& record = records[c * replicates + rep];
        if (record.failed[e]) {
          ++failed;
          continue;
        }
        values.push_back(record.value[e]);
        if (record.oor[e]) ++oor;
      }

      SummaryRow row;
      row.estimator = id.label;
      row.hurst = cell.h;
      row.sigma = cell.sigma;
      row.n = cell.n;
      row.oor_count = oor;
      row.fail_count = failed;
      row.mean_abs_err = row.se_abs = row.mean_rel_err = row.se_rel = kNaN;
      row.std_stat_var = row.var_ratio = kNaN;

      if (!values.empty()) {
        // Errors reported on the natural scale: H for Hurst estimators,
        // sigma for diffusion estimators (si report sigma^2; compare sqrt).
        std::vector<double> abs_err(values.size()), rel_err(values.size());
        const bool is_sigma_sq = id.sigma == SigmaKind::s1 ||
                                 id.sigma == SigmaKind::s2 ||
                                 id.sigma == SigmaKind::s3;
        for (std::size_t i = 0; i < values.size(); ++i) {
          double err;
          if (id.hurst != HurstKind::none) {
            err = values[i] - cell.h;
            rel_err[i] = err / cell.h;
          } else {
            const double est_sigma =
                is_sigma_sq ? std::sqrt(values[i]) : values[i];
            err = est_sigma - cell.sigma;
            rel_err[i] = cell.sigma > 0.0 ? err / cell.sigma : kNaN;
          }
          abs_err[i] = std::abs(err);
        }
        row.mean_abs_err = sample_mean(abs_err);
        row.mean_rel_err = sample_mean(rel_err);
        const double var_abs = sample_variance(abs_err, row.mean_abs_err);
        const double var_rel = sample_variance(rel_err, row.mean_rel_err);
        row.se_abs = std::isnan(var_abs)
                         ? kNaN
                         : std::sqrt(var_abs / static_cast<double>(values.size()));
        row.se_rel = std::isnan(var_rel)
                         ? kNaN
                         : std::sqrt(var_rel / static_cast<double>(values.size()));

        double rate, center;
        bool on_sq_scale;
        standardization(id, cell.h, cell.sigma, cell.n, spec.horizon, rate,
                        center, on_sq_scale);
        if (!std::isnan(rate) && values.size() >= 2) {
          std::vector<double> standardized(values.size());
          for (std::size_t i = 0; i < values.size(); ++i) {
            standardized[i] = rate * (values[i] - center);
          }
          const double mean = sample_mean(standardized);
          row.std_stat_var = sample_variance(standardized, mean);
          const double target =
              limit_variance_target(id, cell.h, cell.sigma, spec);
          if (!std::isnan(target) && target > 0.0) {
            row.var_ratio = row.std_stat_var / target;
          }
        }
      }
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

NormalityDiagnostic normality_diagnostic(const std::vector<double>& estimates,
                                         double center, double rate,
                                         double target_var) {
  if (estimates.size() < 30) {
    raise(ErrorCode::too_few_samples,
          "normality diagnostic needs >= 30 estimates, got " +
              std::to_string(estimates.size()));
  }
  if (!(rate > 0.0)) raise(ErrorCode::invalid_params, "rate must be positive");
  if (!(target_var > 0.0)) {
    raise(ErrorCode::invalid_params, "target variance must be positive");
  }

  std::vector<double> standardized(estimates.size());
  for (std::size_t i = 0; i < estimates.size(); ++i) {
    standardized[i] = rate * (estimates[i] - center);
  }
  const double mean = sample_mean(standardized);
  double ss = 0.0;
  for (double u : standardized) ss += (u - mean) * (u - mean);
  const double var = ss / (standardized.size() - 1);

  std::sort(standardized.begin(), standardized.end());
  const double scale = std::sqrt(target_var);
  double ks = 0.0;
  const double count = static_cast<double>(standardized.size());
  for (std::size_t i = 0; i < standardized.size(); ++i) {
    const double cdf = 0.5 * std::erfc(-standardized[i] / (scale * std::sqrt(2.0)));
    ks = std::max(ks, std::abs(cdf - static_cast<double>(i) / count));
    ks = std::max(ks, std::abs(static_cast<double>(i + 1) / count - cdf));
  }

  return NormalityDiagnostic{static_cast<int>(estimates.size()), var,
                             var / target_var, ks};
}

SlopeRecord increment_residual_scan(const GompertzParams& params,
                                    std::uint64_t seed,
                                    const std::vector<int>& grids) {
  SlopeRecord record;
  record.ok = false;
  record.slope = kNaN;
  record.slope_se = kNaN;
  if (grids.empty()) return record;

  const int finest = *std::max_element(grids.begin(), grids.end());
  const FbmPath fbm = sample_fbm_circulant(
      params.hurst, GridSpec(params.horizon, finest), seed);
  const ProcessPath path = solve_explicit(params, fbm);

  for (int m : grids) {
    if (m < 2 || finest % m != 0) continue;
    const FbmPath b = subsample(fbm, m);
    const ProcessPath x = subsample(path, m);
    double worst = 0.0;
    for (int k = 1; k < m; ++k) {
      const double d2x = x.values[k + 1] - 2.0 * x.values[k] + x.values[k - 1];
      const double d2b = b.values[k + 1] - 2.0 * b.values[k] + b.values[k - 1];
      const double residual =
          std::abs(d2x - params.sigma * x.values[k - 1] * d2b);
      if (residual > worst) worst = residual;
    }
    if (!(worst > 0.0)) continue;
    record.log_spacing.push_back(std::log(params.horizon / m));
    record.log_residual.push_back(std::log(worst));
  }

  const std::size_t points = record.log_spacing.size();
  if (points < 2) return record;

  const double x_mean = sample_mean(record.log_spacing);
  const double y_mean = sample_mean(record.log_residual);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < points; ++i) {
    const double dx = record.log_spacing[i] - x_mean;
    sxx += dx * dx;
    sxy += dx * (record.log_residual[i] - y_mean);
  }
  record.slope = sxy / sxx;
  if (points > 2) {
    double sse = 0.0;
    for (std::size_t i = 0; i < points; ++i) {
      const double fit = y_mean + record.slope * (record.log_spacing[i] - x_mean);
      const double r = record.log_residual[i] - fit;
      sse += r * r;
    }
    record.slope_se = std::sqrt(sse / (points - 2) / sxx);
  }
  record.ok = points >= 3 && std::isfinite(record.slope);
  return record;
}

ExperimentSpec preset(const std::string& name) {
  ExperimentSpec spec;
  if (name == "fig1") {
    spec.h_values = {0.6, 0.65, 0.7, 0.75, 0.8, 0.85, 0.9};
    spec.sigma_values = {1.5};
    spec.n_values = {1024};
    spec.estimators = {"h1", "h2", "h3", "h4"};
  } else if (name == "fig2") {
    spec.h_values = {0.75};
    spec.sigma_values = {1.5};
    spec.n_values = {128, 256, 512, 1024, 2048, 4096};
    spec.estimators = {"h1", "h2", "h3", "h4"};
  } else if (name == "fig3") {
    spec.h_values = {0.75};
    spec.sigma_values = {0.5, 1.0, 1.5, 2.0, 2.5};
    spec.n_values = {1024};
    spec.estimators = {"s1_h1", "s1_h2", "s1_h3", "s2_h1", "s2_h2", "s2_h3",
                       "s3_h1", "s3_h2", "s3_h3", "s4"};
  } else if (name == "fig4") {
    spec.h_values = {0.75};
    spec.sigma_values = {1.0};
    spec.n_values = {128, 256, 512, 1024, 2048, 4096};
    spec.estimators = {"s1_h1", "s1_h2", "s1_h3", "s2_h1", "s2_h2", "s2_h3",
                       "s3_h1", "s3_h2", "s3_h3", "s4"};
  } else {
    raise(ErrorCode::invalid_spec, "unknown preset '" + name + "'");
  }
  return spec;
}

}  // namespace fgd
