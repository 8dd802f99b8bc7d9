#pragma once

// Fixed-effects full-factorial ANOVA for balanced designs.
//
// Every non-empty factor subset T is a source. Rows are ordered by subset
// size, then lexicographically by declared factor position, so three
// factors n, s, m give n, s, m, n*s, n*m, s*m, n*s*m.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sortlab/doe.hpp"

namespace sortlab {

/// Response values laid out by cell. Cells follow ExperimentPlan
/// enumeration (first factor slowest); y[cell * replicates + rep].
struct BalancedData {
  std::vector<std::string> factor_names;
  std::vector<std::size_t> levels;
  std::size_t replicates = 1;
  std::vector<double> y;

  std::size_t cell_count() const;
};

BalancedData balanced_data(const Dataset& dataset, Response response);

struct AnovaRow {
  std::string source;
  std::vector<std::size_t> factors;  // positions of member factors
  int df = 0;
  double seq_ss = 0.0;
  double adj_ss = 0.0;
  double adj_ms = 0.0;
  std::optional<double> f;  // nullopt: undefined (no error DF or MS_error == 0)
  std::optional<double> p;  // nullopt when there is no error row
};

struct ErrorRow {
  int df = 0;
  double ss = 0.0;
  double ms = 0.0;
};

struct FactorInfo {
  std::string name;
  std::size_t levels = 0;
};

struct AnovaTable {
  std::string response;
  std::vector<FactorInfo> factors;
  std::vector<AnovaRow> rows;
  std::optional<ErrorRow> error;  // absent when replicates == 1
  int total_df = 0;
  double total_ss = 0.0;
  std::optional<double> s_root_mse;
  double r_sq = 0.0;
  std::optional<double> r_sq_adj;
  // MS_error == 0: F undefined, p reported as 0.
  bool zero_error_ms = false;
};

/// Sums of squares come from two routes: adj_ss from the direct cell-means
/// inclusion-exclusion formula and seq_ss from a sequential sweep of
/// marginal means. Throws NumericalError if they disagree beyond 1e-9
/// relative (to the total SS).
AnovaTable anova(const BalancedData& data, std::string response_name = "y");

/// Throws ValidationError with the balance violation when the dataset is not
/// balanced and complete.
AnovaTable anova(const Dataset& dataset, Response response);

struct SummaryStats {
  double s_root_mse = 0.0;
  double r_sq = 0.0;      // fraction
  double r_sq_adj = 0.0;  // fraction
};

/// S = sqrt(SSE / error_df), R-Sq = 1 - SSE/SST,
/// R-Sq(adj) = 1 - (SSE/error_df) / (SST/total_df). SSE == 0 gives a
/// perfect fit (R-Sq = R-Sq(adj) = 1) even when SST == 0.
SummaryStats summary_stats(double sse, int error_df, double sst, int total_df);

/// Throws ValidationError when the table has no error row.
SummaryStats summary_stats(const AnovaTable& table);

/// Label for a factor subset, e.g. "n*s".
std::string source_label(const std::vector<std::string>& names,
                         const std::vector<std::size_t>& subset);

/// All non-empty subsets of {0..k-1} in row order.
std::vector<std::vector<std::size_t>> factor_subsets(std::size_t k);

/// Full-precision JSON mirror of the table. Undefined F is null with
/// "f_defined": false.
std::string anova_to_json(const AnovaTable& table);

}  // namespace sortlab
