#include "sortlab/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "sortlab/dataset_io.hpp"
#include "sortlab/errors.hpp"

namespace sortlab {

namespace {

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

// Left-aligned first column, right-aligned rest, two-space gutters.
std::string layout_columns(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& row : rows) {
    if (row.size() > width.size()) width.resize(row.size(), 0);
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  std::string out;
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      const auto& cell = row[c];
      if (c == 0) {
        line += cell + std::string(width[c] - cell.size(), ' ');
      } else {
        line += "  " + std::string(width[c] - cell.size(), ' ') + cell;
      }
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + "\n";
  }
  return out;
}

std::string csv_opt(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(',', start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    auto pos = text.find('\n', start);
    if (pos == std::string_view::npos) pos = text.size();
    auto line = text.substr(start, pos - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) lines.push_back(line);
    start = pos + 1;
  }
  return lines;
}

std::optional<double> parse_opt(std::string_view field) {
  if (field.empty()) return std::nullopt;
  try {
    std::size_t used = 0;
    const std::string s(field);
    const double v = std::stod(s, &used);
    if (used != s.size()) throw ValidationError("");
    return v;
  } catch (const std::exception&) {
    throw ValidationError("csv: bad numeric field '" + std::string(field) + "'");
  }
}

bool parse_bool(std::string_view field) {
  if (field == "true") return true;
  if (field == "false") return false;
  throw ValidationError("csv: bad boolean field '" + std::string(field) + "'");
}

constexpr std::string_view kAnovaCsvHeader = "source,df,seq_ss,adj_ss,adj_ms,f,p";
constexpr std::string_view kSensitivityCsvHeader =
    "source,f_a,f_b,p_a,p_b,significant_a,significant_b,more_sensitive";

}  // namespace

std::string format_p(double p) {
  if (p < 0.0005) return "0.000";
  return fixed(p, 3);
}

std::string render_anova(const AnovaTable& table) {
  std::string out;
  std::string factor_list;
  for (std::size_t i = 0; i < table.factors.size(); ++i) {
    factor_list += (i ? ", " : "") + table.factors[i].name;
  }
  out += "General Linear Model: " + table.response + " versus " + factor_list + "\n\n";

  std::vector<std::vector<std::string>> factor_rows{{"Factor", "Type", "Levels", "Values"}};
  for (const auto& f : table.factors) {
    std::string codes;
    for (std::size_t c = 0; c < f.levels; ++c) codes += (c ? ", " : "") + std::to_string(c);
    factor_rows.push_back({f.name, "Fixed", std::to_string(f.levels), codes});
  }
  // Values column reads better left-aligned.
  {
    std::size_t wname = 0, wlev = 0;
    for (const auto& r : factor_rows) {
      wname = std::max(wname, r[0].size());
      wlev = std::max(wlev, r[2].size());
    }
    for (const auto& r : factor_rows) {
      out += r[0] + std::string(wname - r[0].size(), ' ') + "  " + r[1] + "  " +
             std::string(wlev - r[2].size(), ' ') + r[2] + "  " + r[3] + "\n";
    }
  }
  out += "\nAnalysis of Variance for " + table.response + ", using Adjusted SS for Tests\n\n";

  std::vector<std::vector<std::string>> rows{{"Source", "DF", "Seq SS", "Adj SS", "Adj MS", "F", "P"}};
  for (const auto& row : table.rows) {
    rows.push_back({row.source, std::to_string(row.df), fixed(row.seq_ss, 7), fixed(row.adj_ss, 7),
                    fixed(row.adj_ms, 7), row.f ? fixed(*row.f, 2) : "*",
                    row.p ? format_p(*row.p) : "*"});
  }
  if (table.error) {
    rows.push_back({"Error", std::to_string(table.error->df), fixed(table.error->ss, 7),
                    fixed(table.error->ss, 7), fixed(table.error->ms, 7), "", ""});
  }
  rows.push_back({"Total", std::to_string(table.total_df), fixed(table.total_ss, 7), "", "", "", ""});
  out += layout_columns(rows);

  out += "\n";
  out += "S = " + (table.s_root_mse ? fixed(*table.s_root_mse, 7) : std::string("*"));
  out += " R-Sq = " + fixed(100.0 * table.r_sq, 2) + "%";
  out += " R-Sq(adj) = " + (table.r_sq_adj ? fixed(100.0 * *table.r_sq_adj, 2) + "%" : std::string("*"));
  out += "\n";
  if (table.zero_error_ms) out += "\nNote: error mean square is zero; F is undefined (*).\n";
  return out;
}

std::string_view to_string(Sensitivity s) {
  switch (s) {
    case Sensitivity::a:
      return "A";
    case Sensitivity::b:
      return "B";
    case Sensitivity::tie:
      return "tie";
    case Sensitivity::neither_significant:
      return "neither-significant";
  }
  return "?";
}

std::optional<Sensitivity> parse_sensitivity(std::string_view text) {
  if (text == "A") return Sensitivity::a;
  if (text == "B") return Sensitivity::b;
  if (text == "tie") return Sensitivity::tie;
  if (text == "neither-significant") return Sensitivity::neither_significant;
  return std::nullopt;
}

std::vector<SensitivityRow> sensitivity_summary(const AnovaTable& table_a, const AnovaTable& table_b,
                                                double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ValidationError("alpha must lie in (0, 1)");
  if (!table_a.error || !table_b.error) {
    throw ValidationError("sensitivity comparison needs error degrees of freedom in both tables");
  }
  if (table_a.rows.size() != table_b.rows.size()) {
    throw ValidationError("tables have different source sets");
  }
  std::vector<SensitivityRow> out;
  for (std::size_t i = 0; i < table_a.rows.size(); ++i) {
    const auto& ra = table_a.rows[i];
    const auto& rb = table_b.rows[i];
    if (ra.source != rb.source) {
      throw ValidationError("tables have different source sets ('" + ra.source + "' vs '" +
                            rb.source + "')");
    }
    SensitivityRow row;
    row.source = ra.source;
    row.f_a = ra.f;
    row.f_b = rb.f;
    row.p_a = ra.p.value_or(1.0);
    row.p_b = rb.p.value_or(1.0);
    row.significant_a = row.p_a < alpha;
    row.significant_b = row.p_b < alpha;

    bool tie;
    if (!row.f_a || !row.f_b) {
      tie = !row.f_a && !row.f_b;
    } else {
      const double scale = std::max(std::fabs(*row.f_a), std::fabs(*row.f_b));
      tie = std::fabs(*row.f_a - *row.f_b) <= kTieRelativeTolerance * scale;
    }
    if (tie) {
      row.more_sensitive = Sensitivity::tie;
    } else if (!row.significant_a && !row.significant_b) {
      row.more_sensitive = Sensitivity::neither_significant;
    } else {
      const bool a_larger = !row.f_a ? true : (!row.f_b ? false : *row.f_a > *row.f_b);
      row.more_sensitive = a_larger ? Sensitivity::a : Sensitivity::b;
    }
    out.push_back(std::move(row));
  }
  return out;
}

std::string render_sensitivity(const std::vector<SensitivityRow>& rows, std::string_view label_a,
                               std::string_view label_b, double alpha) {
  std::string out = "Sensitivity to main and interaction effects (A = " + std::string(label_a) +
                    ", B = " + std::string(label_b) + ", alpha = " + format_double(alpha) + ")\n\n";
  std::vector<std::vector<std::string>> table{
      {"Source", "F(A)", "P(A)", "Sig(A)", "F(B)", "P(B)", "Sig(B)", "More sensitive"}};
  auto f_text = [](const std::optional<double>& f) { return f ? fixed(*f, 2) : std::string("*"); };
  for (const auto& r : rows) {
    std::string verdict(to_string(r.more_sensitive));
    if (r.more_sensitive == Sensitivity::a) verdict = "A (" + std::string(label_a) + ")";
    if (r.more_sensitive == Sensitivity::b) verdict = "B (" + std::string(label_b) + ")";
    table.push_back({r.source, f_text(r.f_a), format_p(r.p_a), r.significant_a ? "yes" : "no",
                     f_text(r.f_b), format_p(r.p_b), r.significant_b ? "yes" : "no", verdict});
  }
  return out + layout_columns(table);
}

std::string sensitivity_to_json(const std::vector<SensitivityRow>& rows, std::string_view label_a,
                                std::string_view label_b, double alpha) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["a"] = std::string(label_a);
  doc["b"] = std::string(label_b);
  doc["alpha"] = alpha;
  doc["rows"] = ordered_json::array();
  for (const auto& r : rows) {
    doc["rows"].push_back({{"source", r.source},
                           {"f_a", r.f_a ? ordered_json(*r.f_a) : ordered_json(nullptr)},
                           {"f_b", r.f_b ? ordered_json(*r.f_b) : ordered_json(nullptr)},
                           {"p_a", r.p_a},
                           {"p_b", r.p_b},
                           {"significant_a", r.significant_a},
                           {"significant_b", r.significant_b},
                           {"more_sensitive", std::string(to_string(r.more_sensitive))}});
  }
  return doc.dump(2) + "\n";
}

std::string export_csv(const AnovaTable& table) {
  std::ostringstream out;
  out << kAnovaCsvHeader << "\n";
  for (const auto& row : table.rows) {
    out << row.source << "," << row.df << "," << format_double(row.seq_ss) << ","
        << format_double(row.adj_ss) << "," << format_double(row.adj_ms) << "," << csv_opt(row.f)
        << "," << csv_opt(row.p) << "\n";
  }
  if (table.error) {
    out << "Error," << table.error->df << "," << format_double(table.error->ss) << ","
        << format_double(table.error->ss) << "," << format_double(table.error->ms) << ",,\n";
  }
  out << "Total," << table.total_df << "," << format_double(table.total_ss) << ",,,,\n";
  return out.str();
}

std::string export_csv(const std::vector<SensitivityRow>& rows) {
  std::ostringstream out;
  out << kSensitivityCsvHeader << "\n";
  for (const auto& r : rows) {
    out << r.source << "," << csv_opt(r.f_a) << "," << csv_opt(r.f_b) << "," << format_double(r.p_a)
        << "," << format_double(r.p_b) << "," << (r.significant_a ? "true" : "false") << ","
        << (r.significant_b ? "true" : "false") << "," << to_string(r.more_sensitive) << "\n";
  }
  return out.str();
}

std::vector<AnovaCsvRow> parse_anova_csv(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty() || lines[0] != kAnovaCsvHeader) throw ValidationError("csv: bad ANOVA header");
  std::vector<AnovaCsvRow> out;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = split_fields(lines[i]);
    if (f.size() != 7) throw ValidationError("csv: ANOVA row needs 7 fields");
    AnovaCsvRow row;
    row.source = std::string(f[0]);
    if (auto df = parse_opt(f[1])) row.df = static_cast<int>(*df);
    row.seq_ss = parse_opt(f[2]);
    row.adj_ss = parse_opt(f[3]);
    row.adj_ms = parse_opt(f[4]);
    row.f = parse_opt(f[5]);
    row.p = parse_opt(f[6]);
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<SensitivityRow> parse_sensitivity_csv(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty() || lines[0] != kSensitivityCsvHeader) {
    throw ValidationError("csv: bad sensitivity header");
  }
  std::vector<SensitivityRow> out;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = split_fields(lines[i]);
    if (f.size() != 8) throw ValidationError("csv: sensitivity row needs 8 fields");
    SensitivityRow row;
    row.source = std::string(f[0]);
    row.f_a = parse_opt(f[1]);
    row.f_b = parse_opt(f[2]);
    row.p_a = parse_opt(f[3]).value_or(1.0);
    row.p_b = parse_opt(f[4]).value_or(1.0);
    row.significant_a = parse_bool(f[5]);
    row.significant_b = parse_bool(f[6]);
    auto verdict = parse_sensitivity(f[7]);
    if (!verdict) throw ValidationError("csv: bad verdict '" + std::string(f[7]) + "'");
    row.more_sensitive = *verdict;
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace sortlab
