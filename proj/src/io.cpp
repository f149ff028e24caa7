#include "fgd/io.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace fgd {

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

namespace {

std::string nan_to_empty(double value) {
  return std::isnan(value) ? std::string() : format_double(value);
}

}  // namespace

void write_path_csv(std::ostream& out, const GridSpec& grid,
                    const Eigen::VectorXd& values) {
  out << "t,value\n";
  for (int k = 0; k <= grid.points; ++k) {
    out << format_double(grid.node(k)) << ',' << format_double(values[k])
        << '\n';
  }
}

void write_path_csv(std::ostream& out, const FbmPath& path) {
  write_path_csv(out, path.grid, path.values);
}

void write_path_csv(std::ostream& out, const ProcessPath& path) {
  write_path_csv(out, path.grid, path.values);
}

ProcessPath read_path_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    raise(ErrorCode::io_error, "empty path file");
  }
  if (line.rfind("t,value", 0) != 0) {
    raise(ErrorCode::io_error, "expected header 't,value', got '" + line + "'");
  }

  std::vector<double> times;
  std::vector<double> values;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      raise(ErrorCode::io_error, "malformed row '" + line + "'");
    }
    try {
      times.push_back(std::stod(line.substr(0, comma)));
      values.push_back(std::stod(line.substr(comma + 1)));
    } catch (const std::exception&) {
      raise(ErrorCode::io_error, "malformed row '" + line + "'");
    }
  }
  if (times.size() < 2) {
    raise(ErrorCode::io_error, "path file needs at least two nodes");
  }
  const int m = static_cast<int>(times.size()) - 1;
  const double horizon = times.back();
  GridSpec grid(horizon, m);
  for (int k = 0; k <= m; ++k) {
    if (std::abs(times[k] - grid.node(k)) > 1e-9 * std::max(1.0, horizon)) {
      raise(ErrorCode::io_error, "time column is not a uniform grid on [0,T]");
    }
  }
  Eigen::VectorXd v =
      Eigen::Map<const Eigen::VectorXd>(values.data(), m + 1);
  return make_process_path(grid, std::nullopt, std::move(v));
}

void write_summary_csv(std::ostream& out, const SummaryTable& table) {
  out << "estimator,H,sigma,n,mean_abs_err,se_abs,mean_rel_err,se_rel,"
         "std_stat_var,var_ratio,oor_count,fail_count\n";
  for (const SummaryRow& row : table.rows) {
    out << row.estimator << ',' << format_double(row.hurst) << ','
        << format_double(row.sigma) << ',' << row.n << ','
        << nan_to_empty(row.mean_abs_err) << ',' << nan_to_empty(row.se_abs)
        << ',' << nan_to_empty(row.mean_rel_err) << ','
        << nan_to_empty(row.se_rel) << ',' << nan_to_empty(row.std_stat_var)
        << ',' << nan_to_empty(row.var_ratio) << ',' << row.oor_count << ','
        << row.fail_count << '\n';
  }
}

namespace {

nlohmann::json nan_to_null(double value) {
  if (std::isnan(value)) return nullptr;
  return value;
}

}  // namespace

nlohmann::json summary_to_json(const SummaryTable& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (const SummaryRow& row : table.rows) {
    rows.push_back({{"estimator", row.estimator},
                    {"H", row.hurst},
                    {"sigma", row.sigma},
                    {"n", row.n},
                    {"mean_abs_err", nan_to_null(row.mean_abs_err)},
                    {"se_abs", nan_to_null(row.se_abs)},
                    {"mean_rel_err", nan_to_null(row.mean_rel_err)},
                    {"se_rel", nan_to_null(row.se_rel)},
                    {"std_stat_var", nan_to_null(row.std_stat_var)},
                    {"var_ratio", nan_to_null(row.var_ratio)},
                    {"oor_count", row.oor_count},
                    {"fail_count", row.fail_count}});
  }
  return nlohmann::json{{"rows", rows}};
}

ExperimentSpec spec_from_json(const nlohmann::json& j) {
  auto fail = [](const std::string& field, const std::string& why) {
    raise(ErrorCode::invalid_spec, "field '" + field + "': " + why);
  };
  if (!j.is_object()) raise(ErrorCode::invalid_spec, "spec must be an object");

  static const char* known[] = {"h",          "sigma",     "n",
                                "x0",         "alpha",     "beta",
                                "horizon",    "replicates", "seed",
                                "estimators", "schedule",  "oversample"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* name : known) ok = ok || it.key() == name;
    if (!ok) fail(it.key(), "unknown field");
  }

  ExperimentSpec spec;
  try {
    if (j.contains("h")) spec.h_values = j.at("h").get<std::vector<double>>();
    if (j.contains("sigma")) {
      spec.sigma_values = j.at("sigma").get<std::vector<double>>();
    }
    if (j.contains("n")) spec.n_values = j.at("n").get<std::vector<int>>();
    if (j.contains("x0")) spec.x0 = j.at("x0").get<double>();
    if (j.contains("alpha")) spec.alpha = j.at("alpha").get<double>();
    if (j.contains("beta")) spec.beta = j.at("beta").get<double>();
    if (j.contains("horizon")) spec.horizon = j.at("horizon").get<double>();
    if (j.contains("replicates")) {
      spec.replicates = j.at("replicates").get<int>();
    }
    if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("estimators")) {
      spec.estimators = j.at("estimators").get<std::vector<std::string>>();
    }
    if (j.contains("oversample")) {
      spec.oversample = j.at("oversample").get<int>();
    }
    if (j.contains("schedule")) {
      const nlohmann::json& s = j.at("schedule");
      if (!s.is_object()) fail("schedule", "must be an object");
      if (s.contains("r")) spec.schedule_r = s.at("r").get<std::vector<int>>();
      if (s.contains("convention")) {
        const std::string conv = s.at("convention").get<std::string>();
        if (conv == "divisive" || conv == "div") {
          spec.convention = ScheduleConvention::divisive;
        } else if (conv == "multiplicative" || conv == "mult") {
          spec.convention = ScheduleConvention::multiplicative;
        } else {
          fail("schedule.convention", "must be 'divisive' or 'multiplicative'");
        }
      }
    }
  } catch (const nlohmann::json::exception& e) {
    raise(ErrorCode::invalid_spec, std::string("malformed value: ") + e.what());
  }
  validate(spec);
  return spec;
}

nlohmann::json spec_to_json(const ExperimentSpec& spec) {
  return nlohmann::json{
      {"h", spec.h_values},
      {"sigma", spec.sigma_values},
      {"n", spec.n_values},
      {"x0", spec.x0},
      {"alpha", spec.alpha},
      {"beta", spec.beta},
      {"horizon", spec.horizon},
      {"replicates", spec.replicates},
      {"seed", spec.seed},
      {"estimators", spec.estimators},
      {"schedule",
       {{"r", spec.schedule_r},
        {"convention", spec.convention == ScheduleConvention::divisive
                           ? "divisive"
                           : "multiplicative"}}},
      {"oversample", spec.oversample}};
}

}  // namespace fgd
