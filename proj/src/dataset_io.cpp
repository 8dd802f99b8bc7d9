#include "sortlab/dataset_io.hpp"

#include <charconv>
#include <sstream>

#include "sortlab/errors.hpp"

namespace sortlab {

namespace {

constexpr std::string_view kMagic = "# sortlab-dataset v1";

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = text.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(text.substr(start));
      return out;
    }
    out.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

double parse_double(std::string_view text, std::string_view what) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ValidationError("dataset: bad " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

std::uint64_t parse_u64(std::string_view text, std::string_view what) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw ValidationError("dataset: bad " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

std::string_view trim_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

std::string dataset_header_row(const ExperimentPlan& plan) {
  std::string row = "algorithm,cell_id";
  for (const auto& f : plan.factors()) row += ",level_" + f.name;
  for (const auto& f : plan.factors()) row += "," + f.name;
  row += ",replicate,derived_seed,time_seconds,comparisons,writes";
  return row;
}

std::string write_dataset_csv(const Dataset& dataset) {
  const auto& plan = dataset.plan;
  std::ostringstream out;
  out << kMagic << "\n";
  out << "# algorithm=" << to_string(dataset.algorithm) << "\n";
  out << "# algorithms=";
  for (std::size_t i = 0; i < plan.algorithms().size(); ++i) {
    out << (i ? "," : "") << to_string(plan.algorithms()[i]);
  }
  out << "\n";
  for (const auto& f : plan.factors()) {
    out << "# factor=" << f.name << ":";
    for (std::size_t i = 0; i < f.values.size(); ++i) out << (i ? "," : "") << format_double(f.values[i]);
    out << "\n";
  }
  out << "# replicates=" << plan.replicates() << "\n";
  out << "# master_seed=" << plan.master_seed() << "\n";
  out << "# prng=" << dataset.metadata.prng_id << "\n";
  out << "# clock=" << dataset.metadata.clock_id << "\n";
  out << "# clock_resolution_seconds=" << format_double(dataset.metadata.clock_resolution_seconds)
      << "\n";
  out << "# timing=" << (dataset.metadata.timing_enabled ? "on" : "off") << "\n";
  out << "# run_order=";
  for (std::size_t i = 0; i < dataset.metadata.run_order.size(); ++i) {
    out << (i ? " " : "") << dataset.metadata.run_order[i];
  }
  out << "\n";
  out << dataset_header_row(plan) << "\n";
  for (const auto& obs : dataset.observations) {
    out << to_string(obs.algorithm) << "," << obs.cell_id;
    for (auto code : obs.levels) out << "," << code;
    for (double v : obs.values) out << "," << format_double(v);
    out << "," << obs.replicate << "," << obs.derived_seed << "," << format_double(obs.time_seconds)
        << "," << obs.comparisons << "," << obs.writes << "\n";
  }
  return out.str();
}

Dataset parse_dataset_csv(std::string_view text) {
  auto lines = split(text, '\n');
  while (!lines.empty() && trim_cr(lines.back()).empty()) lines.pop_back();
  if (lines.empty() || trim_cr(lines.front()) != kMagic) {
    throw ValidationError("dataset: missing '" + std::string(kMagic) + "' header");
  }

  std::optional<Algorithm> algorithm;
  std::vector<Algorithm> algorithms;
  std::vector<FactorSpec> factors;
  std::optional<std::size_t> replicates;
  std::uint64_t master_seed = 0;
  DatasetMetadata meta;

  std::size_t idx = 1;
  for (; idx < lines.size(); ++idx) {
    const auto line = trim_cr(lines[idx]);
    if (!line.starts_with("# ")) break;
    const auto body = line.substr(2);
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) continue;
    const auto key = body.substr(0, eq);
    const auto value = body.substr(eq + 1);
    if (key == "algorithm") {
      algorithm = parse_algorithm(value);
      if (!algorithm) throw ValidationError("dataset: unknown algorithm '" + std::string(value) + "'");
    } else if (key == "algorithms") {
      for (auto name : split(value, ',')) {
        auto a = parse_algorithm(name);
        if (!a) throw ValidationError("dataset: unknown algorithm '" + std::string(name) + "'");
        algorithms.push_back(*a);
      }
    } else if (key == "factor") {
      const auto colon = value.find(':');
      if (colon == std::string_view::npos) throw ValidationError("dataset: bad factor line");
      FactorSpec f;
      f.name = std::string(value.substr(0, colon));
      for (auto v : split(value.substr(colon + 1), ',')) f.values.push_back(parse_double(v, "factor value"));
      factors.push_back(std::move(f));
    } else if (key == "replicates") {
      replicates = parse_u64(value, "replicates");
    } else if (key == "master_seed") {
      master_seed = parse_u64(value, "master_seed");
    } else if (key == "prng") {
      meta.prng_id = std::string(value);
    } else if (key == "clock") {
      meta.clock_id = std::string(value);
    } else if (key == "clock_resolution_seconds") {
      meta.clock_resolution_seconds = parse_double(value, "clock resolution");
    } else if (key == "timing") {
      meta.timing_enabled = value == "on";
    } else if (key == "run_order") {
      if (!value.empty()) {
        for (auto v : split(value, ' ')) meta.run_order.push_back(parse_u64(v, "run order entry"));
      }
    }
  }
  if (!algorithm) throw ValidationError("dataset: missing algorithm metadata");
  if (!replicates) throw ValidationError("dataset: missing replicates metadata");
  if (algorithms.empty()) algorithms = {*algorithm};

  Dataset ds;
  ds.plan = build_plan(std::move(factors), *replicates, master_seed, std::move(algorithms));
  ds.algorithm = *algorithm;
  ds.metadata = std::move(meta);

  if (idx >= lines.size()) throw ValidationError("dataset: missing column header row");
  const auto expected_header = dataset_header_row(ds.plan);
  if (trim_cr(lines[idx]) != expected_header) {
    throw ValidationError("dataset: column header does not match factors; expected '" +
                          expected_header + "'");
  }
  const std::size_t k = ds.plan.factors().size();
  const std::size_t columns = 2 + 2 * k + 5;
  for (++idx; idx < lines.size(); ++idx) {
    const auto line = trim_cr(lines[idx]);
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    const std::string where = " on line " + std::to_string(idx + 1);
    if (fields.size() != columns) {
      throw ValidationError("dataset: expected " + std::to_string(columns) + " fields" + where);
    }
    Observation obs;
    auto a = parse_algorithm(fields[0]);
    if (!a || *a != ds.algorithm) throw ValidationError("dataset: algorithm mismatch" + where);
    obs.algorithm = *a;
    obs.cell_id = parse_u64(fields[1], "cell_id");
    for (std::size_t i = 0; i < k; ++i) obs.levels.push_back(parse_u64(fields[2 + i], "level code"));
    for (std::size_t i = 0; i < k; ++i) obs.values.push_back(parse_double(fields[2 + k + i], "factor value"));
    obs.replicate = parse_u64(fields[2 + 2 * k], "replicate");
    obs.derived_seed = parse_u64(fields[3 + 2 * k], "derived_seed");
    obs.time_seconds = parse_double(fields[4 + 2 * k], "time_seconds");
    obs.comparisons = parse_u64(fields[5 + 2 * k], "comparisons");
    obs.writes = parse_u64(fields[6 + 2 * k], "writes");
    ds.observations.push_back(std::move(obs));
  }
  return ds;
}

}  // namespace sortlab
