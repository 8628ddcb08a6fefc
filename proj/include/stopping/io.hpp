#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stopping/bounds.hpp"
#include "stopping/distribution.hpp"
#include "stopping/policy.hpp"

namespace stopping {

/// Builds a distribution from an inline JSON object or a path to a JSON
/// file (anything not starting with '{' is treated as a path).  Schemas:
///   {"family":"exponential","rate":1.0}
///   {"family":"frechet","shape":2.197,"scale":0.613}
///   {"family":"pointmasses","atoms":[[1,0.5],[2,0.5]]}
///   {"family":"truncated_pareto","lo":0.3,"top":2.0}
///   {"family":"scaled","base":{...},"factor":1.5}
/// Malformed input raises parse-error with the byte position; parameter
/// violations propagate the library's usual errors.
DistPtr parse_distribution(const std::string& spec);

/// Policy counterpart of parse_distribution.  Schemas:
///   {"kind":"deterministic","t":1.0}
///   {"kind":"finite","thresholds":[0.9,1.0],"probs":[0.5,0.5]}
///   {"kind":"uniform","lo":0.4,"hi":0.65}
ThresholdPolicy parse_policy(const std::string& spec);

/// "2,3,10" -> {2, 3, 10}; entries must parse as positive integers and be
/// strictly increasing (parse-error / invalid-argument otherwise).
std::vector<int> parse_n_list(const std::string& text);

/// Shortest fixed formatting used in all emitted tables: 9 significant
/// digits (printf %.9g), bit-stable across runs.
std::string format_g9(double v);

enum class Scaling { none, sqrt_n };

/// One output row of the bounds table.  Values carry the requested scaling
/// (sqrt_n multiplies the four bounds by sqrt(n)); the rescaled constants
///   const_lower_uniform   = n^2 (lower_uniform - lower_det)
///   const_upper_partition = n^2 (upper_partition - lower_det)
/// are computed from the base-scale values and are scaling-invariant.
struct BoundsRow {
  int n = 0;
  std::optional<double> lower_det;
  std::optional<double> lower_uniform;
  std::optional<double> upper_universal;
  std::optional<double> upper_partition;
  std::optional<double> const_lower_uniform;
  std::optional<double> const_upper_partition;
  /// Skip/fallback notes ("field:reason"); empty means a fully clean row.
  std::vector<std::string> issues;
  /// True when every bound column has a value (the CLI exits 0 only if all
  /// rows are complete).
  bool complete = false;
};

/// Computes one row per n (in parallel, results ordered by n).  Scaling is
/// applied exactly: the report runs at the law's own scale and rows are
/// multiplied by sqrt(n), which the bounds' homogeneity makes equivalent
/// to rescaling the law itself.
std::vector<BoundsRow> compute_bounds_rows(const DistPtr& d,
                                           const std::vector<int>& n_list,
                                           Scaling scaling);

/// CSV table with header
/// n,lower_det,lower_uniform,upper_universal,upper_partition,
/// const_lower_uniform,const_upper_partition,status
/// Missing values print as "nan"; status is "ok" or ';'-joined issues.
std::string bounds_csv(const std::vector<BoundsRow>& rows);

/// The same table as a JSON array (missing values are null).
std::string bounds_json(const std::vector<BoundsRow>& rows);

}  // namespace stopping
