#pragma once

// Text rendering of ANOVA tables and the two-algorithm sensitivity
// comparison.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sortlab/glm.hpp"

namespace sortlab {

/// Fixed-column layout: factor block, ANOVA block (sources, Error, Total),
/// footer "S = ... R-Sq = ...% R-Sq(adj) = ...%". SS and MS to 7 decimals,
/// F to 2, P to 3; p < 0.0005 prints as 0.000 and undefined F as "*".
std::string render_anova(const AnovaTable& table);

/// P column text: three decimals.
std::string format_p(double p);

enum class Sensitivity { a, b, tie, neither_significant };

std::string_view to_string(Sensitivity s);
std::optional<Sensitivity> parse_sensitivity(std::string_view text);

struct SensitivityRow {
  std::string source;
  std::optional<double> f_a;  // nullopt: undefined F
  std::optional<double> f_b;
  double p_a = 1.0;
  double p_b = 1.0;
  bool significant_a = false;
  bool significant_b = false;
  Sensitivity more_sensitive = Sensitivity::tie;
};

inline constexpr double kDefaultAlpha = 0.05;
inline constexpr double kTieRelativeTolerance = 1e-6;

/// One row per source. Verdict: "tie" when the F values agree within
/// kTieRelativeTolerance relative; otherwise "neither-significant" when
/// p >= alpha for both; otherwise the larger F. Undefined F ranks above any
/// finite F. Throws ValidationError when the source lists differ or either
/// table has no error row.
std::vector<SensitivityRow> sensitivity_summary(const AnovaTable& table_a,
                                                const AnovaTable& table_b,
                                                double alpha = kDefaultAlpha);

std::string render_sensitivity(const std::vector<SensitivityRow>& rows,
                               std::string_view label_a, std::string_view label_b,
                               double alpha);

std::string sensitivity_to_json(const std::vector<SensitivityRow>& rows,
                                std::string_view label_a, std::string_view label_b,
                                double alpha);

/// Header `source,df,seq_ss,adj_ss,adj_ms,f,p`, one row per source, then
/// Error and Total rows. Empty fields mark undefined values.
std::string export_csv(const AnovaTable& table);

/// Header `source,f_a,f_b,p_a,p_b,significant_a,significant_b,more_sensitive`.
std::string export_csv(const std::vector<SensitivityRow>& rows);

/// Inverses of export_csv, for consumers and round-trip checks.
struct AnovaCsvRow {
  std::string source;
  std::optional<int> df;
  std::optional<double> seq_ss, adj_ss, adj_ms, f, p;
};
std::vector<AnovaCsvRow> parse_anova_csv(std::string_view text);
std::vector<SensitivityRow> parse_sensitivity_csv(std::string_view text);

}  // namespace sortlab
