#include "sortlab/glm.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <span>
#include <functional>

#include <json.hpp>

#include "sortlab/errors.hpp"
#include "sortlab/special.hpp"

namespace sortlab {

namespace {

// Neumaier-compensated sum in extended precision.
class CompensatedSum {
 public:
  void add(long double v) {
    const long double t = sum_ + v;
    if (std::fabs(sum_) >= std::fabs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  long double value() const { return sum_ + comp_; }

 private:
  long double sum_ = 0.0L;
  long double comp_ = 0.0L;
};

using Mask = std::uint32_t;

struct Layout {
  std::vector<std::size_t> levels;
  std::size_t replicates;
  std::vector<std::vector<std::size_t>> codes;  // codes[cell][factor]

  explicit Layout(const BalancedData& data) : levels(data.levels), replicates(data.replicates) {
    const std::size_t cells = data.cell_count();
    codes.resize(cells);
    for (std::size_t cell = 0; cell < cells; ++cell) {
      std::size_t id = cell;
      codes[cell].resize(levels.size());
      for (std::size_t f = levels.size(); f-- > 0;) {
        codes[cell][f] = id % levels[f];
        id /= levels[f];
      }
    }
  }

  std::size_t cells_of(Mask mask) const {
    std::size_t n = 1;
    for (std::size_t f = 0; f < levels.size(); ++f) {
      if (mask & (Mask{1} << f)) n *= levels[f];
    }
    return n;
  }

  // Index of a full cell's projection onto the factors in `mask`.
  std::size_t project(std::size_t cell, Mask mask) const {
    std::size_t id = 0;
    for (std::size_t f = 0; f < levels.size(); ++f) {
      if (mask & (Mask{1} << f)) id = id * levels[f] + codes[cell][f];
    }
    return id;
  }
};

// Mean response in every cell of the sub-layout spanned by `mask`.
std::vector<long double> marginal_means(const Layout& layout, std::span<const long double> y,
                                        Mask mask) {
  const std::size_t groups = layout.cells_of(mask);
  std::vector<CompensatedSum> sums(groups);
  const std::size_t r = layout.replicates;
  for (std::size_t cell = 0; cell < layout.codes.size(); ++cell) {
    const std::size_t g = layout.project(cell, mask);
    for (std::size_t rep = 0; rep < r; ++rep) sums[g].add(y[cell * r + rep]);
  }
  const long double count = static_cast<long double>(y.size()) / static_cast<long double>(groups);
  std::vector<long double> means(groups);
  for (std::size_t g = 0; g < groups; ++g) means[g] = sums[g].value() / count;
  return means;
}

Mask mask_of(const std::vector<std::size_t>& subset) {
  Mask m = 0;
  for (auto f : subset) m |= Mask{1} << f;
  return m;
}

// Direct route: the T effect in each T-cell is the inclusion-exclusion
// alternating sum of marginal means over every U subset of T.
std::vector<double> cell_means_ss(const Layout& layout, std::span<const long double> y,
                                  const std::vector<std::vector<std::size_t>>& subsets) {
  const std::size_t k = layout.levels.size();
  std::vector<std::vector<long double>> means(std::size_t{1} << k);
  for (Mask m = 0; m < (Mask{1} << k); ++m) means[m] = marginal_means(layout, y, m);

  std::vector<double> out;
  out.reserve(subsets.size());
  for (const auto& subset : subsets) {
    const Mask t = mask_of(subset);
    const std::size_t groups = layout.cells_of(t);
    // A representative full cell for each T-cell.
    std::vector<std::size_t> rep_cell(groups, 0);
    std::vector<bool> have(groups, false);
    for (std::size_t cell = 0; cell < layout.codes.size(); ++cell) {
      const std::size_t g = layout.project(cell, t);
      if (!have[g]) {
        have[g] = true;
        rep_cell[g] = cell;
      }
    }
    CompensatedSum ss;
    for (std::size_t g = 0; g < groups; ++g) {
      CompensatedSum effect;
      // Enumerate U subset of T.
      for (Mask u = t;; u = (u - 1) & t) {
        const int sign = ((std::popcount(t) - std::popcount(u)) % 2 == 0) ? 1 : -1;
        effect.add(sign * means[u][layout.project(rep_cell[g], u)]);
        if (u == 0) break;
      }
      const long double e = effect.value();
      ss.add(e * e);
    }
    const long double per_group = static_cast<long double>(y.size()) / groups;
    out.push_back(static_cast<double>(ss.value() * per_group));
  }
  return out;
}

struct SweepResult {
  std::vector<double> ss;
  long double sse;
};

// Sequential route: remove the grand mean, then for each source in row
// order subtract its marginal means from the running residuals. The sum of
// squares removed at each step is that source's sequential SS.
SweepResult sequential_sweep(const Layout& layout, std::span<const long double> y,
                             const std::vector<std::vector<std::size_t>>& subsets) {
  std::vector<long double> resid(y.begin(), y.end());
  const long double grand = marginal_means(layout, resid, 0)[0];
  for (auto& v : resid) v -= grand;

  const std::size_t r = layout.replicates;
  SweepResult out;
  for (const auto& subset : subsets) {
    const Mask t = mask_of(subset);
    const auto means = marginal_means(layout, resid, t);
    CompensatedSum ss;
    for (std::size_t cell = 0; cell < layout.codes.size(); ++cell) {
      const long double mu = means[layout.project(cell, t)];
      for (std::size_t rep = 0; rep < r; ++rep) {
        ss.add(mu * mu);
        resid[cell * r + rep] -= mu;
      }
    }
    out.ss.push_back(static_cast<double>(ss.value()));
  }
  CompensatedSum sse;
  for (auto v : resid) sse.add(v * v);
  out.sse = sse.value();
  return out;
}

}  // namespace

std::size_t BalancedData::cell_count() const {
  std::size_t cells = 1;
  for (auto l : levels) cells *= l;
  return cells;
}

BalancedData balanced_data(const Dataset& dataset, Response response) {
  if (auto violation = validate_balanced(dataset)) {
    throw ValidationError("unbalanced dataset: " + violation->message);
  }
  const auto& plan = dataset.plan;
  BalancedData data;
  for (const auto& f : plan.factors()) {
    data.factor_names.push_back(f.name);
    data.levels.push_back(f.levels());
  }
  data.replicates = plan.replicates();
  data.y.assign(plan.runs_per_algorithm(), 0.0);
  for (const auto& obs : dataset.observations) {
    data.y[obs.cell_id * data.replicates + (obs.replicate - 1)] = response_value(obs, response);
  }
  return data;
}

std::vector<std::vector<std::size_t>> factor_subsets(std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> current;
  std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t start, std::size_t size) {
    if (current.size() == size) {
      out.push_back(current);
      return;
    }
    for (std::size_t f = start; f < k; ++f) {
      current.push_back(f);
      choose(f + 1, size);
      current.pop_back();
    }
  };
  for (std::size_t size = 1; size <= k; ++size) choose(0, size);
  return out;
}

std::string source_label(const std::vector<std::string>& names, const std::vector<std::size_t>& subset) {
  std::string label;
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (i) label += "*";
    label += names.at(subset[i]);
  }
  return label;
}

SummaryStats summary_stats(double sse, int error_df, double sst, int total_df) {
  if (error_df < 1) throw ValidationError("summary statistics need error degrees of freedom");
  if (total_df < 1) throw ValidationError("summary statistics need total degrees of freedom");
  if (sse < 0.0 || sst < 0.0) throw ValidationError("sums of squares must be non-negative");
  SummaryStats out;
  const double mse = sse / error_df;
  out.s_root_mse = std::sqrt(mse);
  if (sse == 0.0) {
    out.r_sq = 1.0;
    out.r_sq_adj = 1.0;
  } else {
    out.r_sq = 1.0 - sse / sst;
    out.r_sq_adj = 1.0 - mse / (sst / total_df);
  }
  return out;
}

SummaryStats summary_stats(const AnovaTable& table) {
  if (!table.error) throw ValidationError("table has no error row");
  return summary_stats(table.error->ss, table.error->df, table.total_ss, table.total_df);
}

AnovaTable anova(const BalancedData& data, std::string response_name) {
  const std::size_t k = data.levels.size();
  if (k == 0) throw ValidationError("anova needs at least one factor");
  if (k > 16) throw ValidationError("anova supports at most 16 factors");
  if (data.factor_names.size() != k) throw ValidationError("factor names and levels differ in length");
  for (auto l : data.levels) {
    if (l < 2) throw ValidationError("every factor needs at least two levels");
  }
  if (data.replicates < 1) throw ValidationError("replicates must be >= 1");
  if (data.y.size() != data.cell_count() * data.replicates) {
    throw ValidationError("response count does not match cells x replicates");
  }
  for (double v : data.y) {
    if (!std::isfinite(v)) throw ValidationError("response contains a non-finite value");
  }

  const Layout layout(data);
  const std::vector<long double> y(data.y.begin(), data.y.end());
  const auto subsets = factor_subsets(k);

  const auto adj = cell_means_ss(layout, y, subsets);
  const auto sweep = sequential_sweep(layout, y, subsets);

  const long double grand = marginal_means(layout, y, 0)[0];
  CompensatedSum sst_sum;
  for (auto v : y) sst_sum.add((v - grand) * (v - grand));
  const double sst = static_cast<double>(sst_sum.value());

  const std::size_t r = data.replicates;
  const Mask all = (Mask{1} << k) - 1;
  const auto cell_means = marginal_means(layout, y, all);
  CompensatedSum sse_sum;
  for (std::size_t cell = 0; cell < layout.codes.size(); ++cell) {
    for (std::size_t rep = 0; rep < r; ++rep) {
      const long double d = y[cell * r + rep] - cell_means[cell];
      sse_sum.add(d * d);
    }
  }
  const double sse = static_cast<double>(sse_sum.value());

  const double scale = std::max(sst, 1e-300);
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    if (std::fabs(adj[i] - sweep.ss[i]) > 1e-9 * std::max(std::fabs(adj[i]), scale)) {
      throw NumericalError("sequential and cell-means sums of squares disagree");
    }
  }
  if (std::fabs(static_cast<double>(sweep.sse) - sse) > 1e-9 * std::max(sse, scale)) {
    throw NumericalError("residual sums of squares disagree");
  }

  AnovaTable table;
  table.response = std::move(response_name);
  for (std::size_t f = 0; f < k; ++f) table.factors.push_back({data.factor_names[f], data.levels[f]});

  const std::size_t n_obs = data.y.size();
  table.total_df = static_cast<int>(n_obs) - 1;
  table.total_ss = sst;
  const int error_df = static_cast<int>(layout.codes.size() * (r - 1));
  double ms_error = 0.0;
  if (error_df > 0) {
    ms_error = sse / error_df;
    table.error = ErrorRow{error_df, sse, ms_error};
    table.zero_error_ms = ms_error == 0.0;
  }

  for (std::size_t i = 0; i < subsets.size(); ++i) {
    AnovaRow row;
    row.source = source_label(data.factor_names, subsets[i]);
    row.factors = subsets[i];
    int df = 1;
    for (auto f : subsets[i]) df *= static_cast<int>(data.levels[f]) - 1;
    row.df = df;
    row.seq_ss = std::max(0.0, sweep.ss[i]);
    row.adj_ss = std::max(0.0, adj[i]);
    row.adj_ms = row.adj_ss / df;
    if (table.error) {
      if (table.zero_error_ms) {
        row.p = 0.0;
      } else {
        row.f = row.adj_ms / ms_error;
        row.p = f_tail_prob(*row.f, df, error_df);
      }
    }
    table.rows.push_back(std::move(row));
  }

  if (table.error) {
    const auto stats = summary_stats(sse, error_df, sst, table.total_df);
    table.s_root_mse = stats.s_root_mse;
    table.r_sq = stats.r_sq;
    table.r_sq_adj = stats.r_sq_adj;
  } else {
    table.r_sq = (sse == 0.0 || sst == 0.0) ? 1.0 : 1.0 - sse / sst;
  }
  return table;
}

AnovaTable anova(const Dataset& dataset, Response response) {
  return anova(balanced_data(dataset, response), std::string(to_string(response)));
}

std::string anova_to_json(const AnovaTable& table) {
  using nlohmann::ordered_json;
  auto opt = [](const std::optional<double>& v) -> ordered_json {
    return v ? ordered_json(*v) : ordered_json(nullptr);
  };
  ordered_json doc;
  doc["response"] = table.response;
  doc["factors"] = ordered_json::array();
  for (const auto& f : table.factors) doc["factors"].push_back({{"name", f.name}, {"levels", f.levels}});
  doc["rows"] = ordered_json::array();
  for (const auto& row : table.rows) {
    doc["rows"].push_back({{"source", row.source},
                           {"df", row.df},
                           {"seq_ss", row.seq_ss},
                           {"adj_ss", row.adj_ss},
                           {"adj_ms", row.adj_ms},
                           {"f", opt(row.f)},
                           {"f_defined", row.f.has_value()},
                           {"p", opt(row.p)}});
  }
  if (table.error) {
    doc["error"] = {{"df", table.error->df}, {"ss", table.error->ss}, {"ms", table.error->ms}};
  } else {
    doc["error"] = nullptr;
  }
  doc["total"] = {{"df", table.total_df}, {"ss", table.total_ss}};
  doc["s"] = opt(table.s_root_mse);
  doc["r_sq"] = table.r_sq;
  doc["r_sq_adj"] = opt(table.r_sq_adj);
  doc["zero_error_ms"] = table.zero_error_ms;
  return doc.dump(2) + "\n";
}

}  // namespace sortlab
