// fgd — simulation and estimation toolkit for the fractional Gompertz
// diffusion: fBm path generation, Hurst/diffusion-coefficient estimators,
// asymptotic variance tables, and reproducible Monte Carlo sweeps.

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>

#include "fgd/diffusion.hpp"
#include "fgd/experiment.hpp"
#include "fgd/fgn.hpp"
#include "fgd/gompertz.hpp"
#include "fgd/hurst.hpp"
#include "fgd/io.hpp"
#include "fgd/theory.hpp"
#include "fgd/variation.hpp"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

int exit_code_for(const fgd::Error& error) {
  switch (error.code()) {
    case fgd::ErrorCode::invalid_hurst:
    case fgd::ErrorCode::invalid_grid:
    case fgd::ErrorCode::invalid_params:
    case fgd::ErrorCode::invalid_spec:
    case fgd::ErrorCode::io_error:
      return kExitUsage;
    default:
      return kExitFailure;
  }
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    fgd::raise(fgd::ErrorCode::io_error, "cannot open '" + path + "' for writing");
  }
  return out;
}

fgd::ProcessPath load_path(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    fgd::raise(fgd::ErrorCode::io_error, "cannot read '" + path + "'");
  }
  return fgd::read_path_csv(in);
}

std::vector<int> parse_schedule(const std::string& text) {
  std::vector<int> r;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string token =
        text.substr(pos, comma == std::string::npos ? comma : comma - pos);
    try {
      r.push_back(std::stoi(token));
    } catch (const std::exception&) {
      fgd::raise(fgd::ErrorCode::invalid_params,
                 "schedule entry '" + token + "' is not an integer");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return r;
}

struct HGrid {
  double lo, hi, step;
};

HGrid parse_h_grid(const std::string& text) {
  HGrid grid{0, 0, 0};
  const std::size_t c1 = text.find(':');
  try {
    if (c1 == std::string::npos) {
      grid.lo = grid.hi = std::stod(text);
      grid.step = 1.0;
      return grid;
    }
    const std::size_t c2 = text.find(':', c1 + 1);
    if (c2 == std::string::npos) {
      fgd::raise(fgd::ErrorCode::invalid_params,
                 "expected 'lo:hi:step', got '" + text + "'");
    }
    grid.lo = std::stod(text.substr(0, c1));
    grid.hi = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
    grid.step = std::stod(text.substr(c2 + 1));
  } catch (const fgd::Error&) {
    throw;
  } catch (const std::exception&) {
    fgd::raise(fgd::ErrorCode::invalid_params,
               "expected 'lo:hi:step', got '" + text + "'");
  }
  if (!(grid.step > 0.0) || grid.hi < grid.lo) {
    fgd::raise(fgd::ErrorCode::invalid_params, "empty H grid '" + text + "'");
  }
  return grid;
}

// ---------------------------------------------------------------------------
// simulate-fbm
// ---------------------------------------------------------------------------

struct SimulateFbmArgs {
  double hurst = 0.75;
  int points = 1024;
  double horizon = 1.0;
  std::uint64_t seed = 1;
  std::string method = "circulant";
  std::string out;
};

int run_simulate_fbm(const SimulateFbmArgs& args) {
  const fgd::HurstIndex hurst(args.hurst);
  const fgd::GridSpec grid(args.horizon, args.points);
  const fgd::FbmPath path =
      args.method == "cholesky"
          ? fgd::sample_fbm_cholesky(hurst, grid, args.seed)
          : fgd::sample_fbm_circulant(hurst, grid, args.seed);
  auto out = open_output(args.out);
  fgd::write_path_csv(out, path);
  std::cout << args.out << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// simulate-gompertz
// ---------------------------------------------------------------------------

struct SimulateGompertzArgs {
  double x0 = 3.0;
  double alpha = 0.5;
  double beta = 2.0;
  double sigma = 1.5;
  double hurst = 0.75;
  int points = 1024;
  double horizon = 1.0;
  std::uint64_t seed = 1;
  std::string out;
};

int run_simulate_gompertz(const SimulateGompertzArgs& args) {
  const fgd::HurstIndex hurst(args.hurst);
  const fgd::GompertzParams params(args.x0, args.alpha, args.beta, args.sigma,
                                   hurst, args.horizon);
  const fgd::FbmPath fbm = fgd::sample_fbm_circulant(
      hurst, fgd::GridSpec(args.horizon, args.points), args.seed);
  const fgd::ProcessPath path = fgd::solve_explicit(params, fbm);
  auto out = open_output(args.out);
  fgd::write_path_csv(out, path);
  std::cout << args.out << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// estimate
// ---------------------------------------------------------------------------

struct EstimateArgs {
  std::string in;
  std::string estimator;
  std::string hurst_est;
  std::string schedule = "1,2,4,8";
  std::string convention = "div";
};

fgd::ScheduleConvention parse_convention(const std::string& text) {
  if (text == "div" || text == "divisive") {
    return fgd::ScheduleConvention::divisive;
  }
  if (text == "mult" || text == "multiplicative") {
    return fgd::ScheduleConvention::multiplicative;
  }
  fgd::raise(fgd::ErrorCode::invalid_params,
             "convention must be div or mult, got '" + text + "'");
}

fgd::RatioSchedule schedule_for_path(const EstimateArgs& args, int m) {
  const std::vector<int> r = parse_schedule(args.schedule);
  const fgd::ScheduleConvention convention = parse_convention(args.convention);
  int base = m;
  if (convention == fgd::ScheduleConvention::multiplicative) {
    const int max_r = *std::max_element(r.begin(), r.end());
    if (m % max_r != 0) {
      fgd::raise(fgd::ErrorCode::not_a_divisor,
                 "largest ratio must divide the path grid for the "
                 "multiplicative convention");
    }
    base = m / max_r;
  }
  return fgd::RatioSchedule(r, base, convention);
}

fgd::HurstEstimate estimate_h1(const fgd::ProcessPath& path) {
  const int m = path.grid.points;
  if (m % 2 != 0) {
    fgd::raise(fgd::ErrorCode::grid_mismatch,
               "h1 needs an even number of increments");
  }
  return fgd::h1(fgd::subsample(path, m / 2), path);
}

fgd::HurstEstimate estimate_h2(const fgd::ProcessPath& path) {
  const int m = path.grid.points;
  const int base = fgd::h2_base_from_budget(m);
  if (base < 4 || base * base * base != m) {
    fgd::raise(fgd::ErrorCode::grid_mismatch,
               "h2 needs a grid of exactly n^3 increments with n >= 4");
  }
  return fgd::h2(path, base);
}

fgd::HurstEstimate estimate_h3(const fgd::ProcessPath& path,
                               const EstimateArgs& args,
                               fgd::RatioSchedule* used = nullptr) {
  const fgd::RatioSchedule schedule = schedule_for_path(args, path.grid.points);
  std::vector<fgd::ProcessPath> paths;
  for (int size : schedule.grid_sizes()) {
    paths.push_back(fgd::subsample(path, size));
  }
  if (used != nullptr) *used = schedule;
  return fgd::h3(paths, schedule);
}

int run_estimate(const EstimateArgs& args) {
  const fgd::ProcessPath path = load_path(args.in);
  const int m = path.grid.points;
  nlohmann::json record{{"estimator", args.estimator},
                        {"n", m},
                        {"horizon", path.grid.horizon}};

  const std::string& kind = args.estimator;
  if (kind == "h1" || kind == "h2" || kind == "h3" || kind == "h4") {
    fgd::HurstEstimate est{0.0, false};
    if (kind == "h1") est = estimate_h1(path);
    if (kind == "h2") est = estimate_h2(path);
    if (kind == "h3") est = estimate_h3(path, args);
    if (kind == "h4") est = fgd::h4(path);
    record["value"] = est.value;
    record["out_of_range"] = est.out_of_range;
  } else if (kind == "s1" || kind == "s2" || kind == "s3") {
    if (args.hurst_est.empty()) {
      fgd::raise(fgd::ErrorCode::invalid_params,
                 "--hurst-est is required for " + kind +
                     " (a number, or h1 / h3)");
    }
    double h_est;
    if (args.hurst_est == "h1") {
      h_est = estimate_h1(path).value;
    } else if (args.hurst_est == "h3") {
      h_est = estimate_h3(path, args).value;
    } else {
      try {
        h_est = std::stod(args.hurst_est);
      } catch (const std::exception&) {
        fgd::raise(fgd::ErrorCode::invalid_params,
                   "--hurst-est must be a number, h1, or h3");
      }
    }
    double value = 0.0;
    if (kind == "s1") value = fgd::sigma2_1(path, h_est);
    if (kind == "s2") value = fgd::sigma2_2(path, h_est);
    if (kind == "s3") value = fgd::sigma2_3(path, h_est);
    record["value"] = value;
    record["sigma"] = std::sqrt(value);
    record["hurst_est"] = h_est;
  } else if (kind == "s4") {
    fgd::RatioSchedule schedule({1, 2}, 2);
    const fgd::HurstEstimate h3_est = estimate_h3(path, args, &schedule);
    std::vector<fgd::ProcessPath> paths;
    for (int size : schedule.grid_sizes()) {
      paths.push_back(fgd::subsample(path, size));
    }
    const double value = fgd::sigma4(paths, schedule, h3_est.value);
    record["value"] = value;
    record["value_squared"] = value * value;
    record["hurst_est"] = h3_est.value;
  } else {
    fgd::raise(fgd::ErrorCode::invalid_params,
               "unknown estimator '" + kind + "'");
  }

  std::cout << record.dump(2) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// experiment
// ---------------------------------------------------------------------------

struct ExperimentArgs {
  std::string spec_path;
  std::string preset_name;
  std::string out_dir;
  int replicates = 0;
  int threads = 0;
};

int run_experiment_cmd(const ExperimentArgs& args) {
  fgd::ExperimentSpec spec;
  if (!args.preset_name.empty()) {
    spec = fgd::preset(args.preset_name);
  } else if (!args.spec_path.empty()) {
    std::ifstream in(args.spec_path);
    if (!in) {
      fgd::raise(fgd::ErrorCode::io_error,
                 "cannot read '" + args.spec_path + "'");
    }
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      fgd::raise(fgd::ErrorCode::invalid_spec,
                 std::string("spec is not valid JSON: ") + e.what());
    }
    spec = fgd::spec_from_json(j);
  } else {
    fgd::raise(fgd::ErrorCode::invalid_spec,
               "either --spec or --preset is required");
  }
  if (args.replicates > 0) spec.replicates = args.replicates;
  fgd::validate(spec);

  std::string out_dir = args.out_dir;
  if (out_dir.empty()) {
    const char* env = std::getenv("FGD_OUT_DIR");
    out_dir = env != nullptr && *env != '\0' ? env : ".";
  }
  std::filesystem::create_directories(out_dir);

  const fgd::SummaryTable table = fgd::run_experiment(spec, args.threads);

  const std::filesystem::path base(out_dir);
  const std::string csv_path = (base / "summary.csv").string();
  const std::string json_path = (base / "summary.json").string();
  const std::string spec_path = (base / "spec.json").string();
  {
    auto out = open_output(csv_path);
    fgd::write_summary_csv(out, table);
  }
  {
    auto out = open_output(json_path);
    out << fgd::summary_to_json(table).dump(2) << "\n";
  }
  {
    auto out = open_output(spec_path);
    out << fgd::spec_to_json(spec).dump(2) << "\n";
  }
  std::cout << csv_path << "\n" << json_path << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// variance-table
// ---------------------------------------------------------------------------

struct VarianceTableArgs {
  std::string h_grid = "0.55:0.95:0.05";
  double tolerance = 1e-12;
  std::string out;
};

int run_variance_table(const VarianceTableArgs& args) {
  const HGrid grid = parse_h_grid(args.h_grid);
  fgd::SeriesPolicy policy;
  policy.tolerance = args.tolerance;

  auto out = open_output(args.out);
  out << "H,sigma_sq,sigma_star_first,sigma12,limit_var_h1,lambda2_affine\n";
  const int count =
      static_cast<int>(std::round((grid.hi - grid.lo) / grid.step)) + 1;
  for (int i = 0; i < count; ++i) {
    const double h = grid.lo + i * grid.step;
    const fgd::HurstIndex hurst(h);
    out << fgd::format_double(h) << ','
        << fgd::format_double(fgd::sigma_sq(hurst, policy)) << ',';
    if (h < 0.75) {
      out << fgd::format_double(fgd::sigma_star_first(hurst, policy));
    } else {
      out << "divergent";
    }
    out << ',' << fgd::format_double(fgd::sigma12(hurst, policy)) << ','
        << fgd::format_double(fgd::limit_var_h1(hurst, policy)) << ','
        << fgd::format_double(fgd::lambda2_affine(h)) << '\n';
  }
  std::cout << args.out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fractional Gompertz diffusion simulation and estimation"};
  app.require_subcommand(1);

  SimulateFbmArgs fbm_args;
  CLI::App* sim_fbm = app.add_subcommand(
      "simulate-fbm", "generate an fBm sample path as CSV");
  sim_fbm->add_option("--hurst", fbm_args.hurst, "Hurst index in (0,1)")
      ->required();
  sim_fbm->add_option("--points", fbm_args.points, "grid increments")
      ->default_val(1024);
  sim_fbm->add_option("--horizon", fbm_args.horizon, "time horizon T")
      ->default_val(1.0);
  sim_fbm->add_option("--seed", fbm_args.seed, "64-bit seed")->default_val(1);
  sim_fbm->add_option("--method", fbm_args.method, "circulant | cholesky")
      ->default_val("circulant")
      ->check(CLI::IsMember({"circulant", "cholesky"}));
  sim_fbm->add_option("--out", fbm_args.out, "output CSV path")->required();

  SimulateGompertzArgs gd_args;
  CLI::App* sim_gd = app.add_subcommand(
      "simulate-gompertz", "generate a Gompertz diffusion path as CSV");
  sim_gd->add_option("--x0", gd_args.x0)->default_val(3.0);
  sim_gd->add_option("--alpha", gd_args.alpha)->default_val(0.5);
  sim_gd->add_option("--beta", gd_args.beta)->default_val(2.0);
  sim_gd->add_option("--sigma", gd_args.sigma)->default_val(1.5);
  sim_gd->add_option("--hurst", gd_args.hurst)->default_val(0.75);
  sim_gd->add_option("--points", gd_args.points)->default_val(1024);
  sim_gd->add_option("--horizon", gd_args.horizon)->default_val(1.0);
  sim_gd->add_option("--seed", gd_args.seed)->default_val(1);
  sim_gd->add_option("--out", gd_args.out, "output CSV path")->required();

  EstimateArgs est_args;
  CLI::App* estimate = app.add_subcommand(
      "estimate", "run one estimator on a path CSV, print JSON");
  estimate->add_option("--in", est_args.in, "input path CSV")->required();
  estimate
      ->add_option("--estimator", est_args.estimator,
                   "h1|h2|h3|h4|s1|s2|s3|s4")
      ->required()
      ->check(CLI::IsMember({"h1", "h2", "h3", "h4", "s1", "s2", "s3", "s4"}));
  estimate->add_option("--hurst-est", est_args.hurst_est,
                       "plug-in Hurst value, or h1 / h3");
  estimate->add_option("--schedule", est_args.schedule,
                       "comma-separated ratios for h3/s4");
  estimate->add_option("--convention", est_args.convention, "div | mult");

  ExperimentArgs exp_args;
  CLI::App* experiment = app.add_subcommand(
      "experiment", "run a Monte Carlo sweep, write summary CSV + JSON");
  experiment->add_option("--spec", exp_args.spec_path, "experiment spec JSON");
  experiment->add_option("--preset", exp_args.preset_name,
                         "fig1 | fig2 | fig3 | fig4");
  experiment->add_option("--out", exp_args.out_dir,
                         "output directory (default: FGD_OUT_DIR or .)");
  experiment->add_option("--replicates", exp_args.replicates,
                         "override replicate count");
  experiment->add_option("--threads", exp_args.threads,
                         "worker threads (0 = machine parallelism)");

  VarianceTableArgs var_args;
  CLI::App* variance = app.add_subcommand(
      "variance-table", "tabulate the asymptotic variance series over H");
  variance->add_option("--h-grid", var_args.h_grid, "lo:hi:step");
  variance->add_option("--tol", var_args.tolerance, "series tolerance");
  variance->add_option("--out", var_args.out, "output CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (sim_fbm->parsed()) return run_simulate_fbm(fbm_args);
    if (sim_gd->parsed()) return run_simulate_gompertz(gd_args);
    if (estimate->parsed()) return run_estimate(est_args);
    if (experiment->parsed()) return run_experiment_cmd(exp_args);
    if (variance->parsed()) return run_variance_table(var_args);
  } catch (const fgd::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return 0;
}
