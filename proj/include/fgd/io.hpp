#pragma once

#include <iosfwd>
#include <nlohmann/json.hpp>
#include <string>

#include "fgd/experiment.hpp"
#include "fgd/types.hpp"

namespace fgd {

/// CSV serialization: header `t,value`, one row per node, 17 significant
/// digits so values round-trip bit-exactly.
void write_path_csv(std::ostream& out, const GridSpec& grid,
                    const Eigen::VectorXd& values);
void write_path_csv(std::ostream& out, const FbmPath& path);
void write_path_csv(std::ostream& out, const ProcessPath& path);

/// Reads a `t,value` CSV into a positive observation path (params empty).
ProcessPath read_path_csv(std::istream& in);

/// Summary table as CSV with the fixed header
/// estimator,H,sigma,n,mean_abs_err,se_abs,mean_rel_err,se_rel,
/// std_stat_var,var_ratio,oor_count,fail_count.  NaN cells are left empty.
void write_summary_csv(std::ostream& out, const SummaryTable& table);

nlohmann::json summary_to_json(const SummaryTable& table);

/// Experiment spec JSON binding; unknown fields are rejected with a
/// field-level message.
ExperimentSpec spec_from_json(const nlohmann::json& j);
nlohmann::json spec_to_json(const ExperimentSpec& spec);

/// Shortest 17-significant-digit decimal form used across all outputs.
std::string format_double(double value);

}  // namespace fgd
