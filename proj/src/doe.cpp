#include "sortlab/doe.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <json.hpp>

#include "sortlab/errors.hpp"

namespace sortlab {

std::size_t ExperimentPlan::cell_count() const {
  std::size_t cells = 1;
  for (const auto& f : factors_) cells *= f.levels();
  return cells;
}

std::vector<std::size_t> ExperimentPlan::codes_of(std::size_t cell_id) const {
  if (cell_id >= cell_count()) throw ValidationError("cell id out of range");
  std::vector<std::size_t> codes(factors_.size());
  for (std::size_t i = factors_.size(); i-- > 0;) {
    codes[i] = cell_id % factors_[i].levels();
    cell_id /= factors_[i].levels();
  }
  return codes;
}

std::size_t ExperimentPlan::cell_id_of(const std::vector<std::size_t>& codes) const {
  if (codes.size() != factors_.size()) throw ValidationError("wrong number of level codes");
  std::size_t id = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (codes[i] >= factors_[i].levels()) {
      throw ValidationError("level code " + std::to_string(codes[i]) + " out of range for factor " +
                            factors_[i].name);
    }
    id = id * factors_[i].levels() + codes[i];
  }
  return id;
}

std::vector<double> ExperimentPlan::values_of(std::size_t cell_id) const {
  const auto codes = codes_of(cell_id);
  std::vector<double> values(codes.size());
  for (std::size_t i = 0; i < codes.size(); ++i) values[i] = factors_[i].values[codes[i]];
  return values;
}

std::optional<std::size_t> ExperimentPlan::factor_index(std::string_view name) const {
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i].name == name) return i;
  }
  return std::nullopt;
}

ExperimentPlan ExperimentPlan::with_master_seed(std::uint64_t seed) const {
  ExperimentPlan copy = *this;
  copy.master_seed_ = seed;
  return copy;
}

bool ExperimentPlan::same_shape(const ExperimentPlan& other) const {
  if (replicates_ != other.replicates_ || factors_.size() != other.factors_.size()) return false;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i].name != other.factors_[i].name ||
        factors_[i].levels() != other.factors_[i].levels()) {
      return false;
    }
  }
  return true;
}

ExperimentPlan build_plan(std::vector<FactorSpec> factors, std::size_t replicates,
                          std::uint64_t master_seed, std::vector<Algorithm> algorithms) {
  if (factors.empty()) throw ValidationError("plan needs at least one factor");
  std::set<std::string> names;
  for (const auto& f : factors) {
    if (f.name.empty()) throw ValidationError("factor name must not be empty");
    if (f.name.find_first_of(",*=# \t\r\n") != std::string::npos) {
      throw ValidationError("factor name '" + f.name + "' contains a reserved character");
    }
    if (!names.insert(f.name).second) throw ValidationError("duplicate factor name '" + f.name + "'");
    if (f.values.size() < 2) {
      throw ValidationError("factor '" + f.name + "' needs at least two levels");
    }
    std::set<double> seen;
    for (double v : f.values) {
      if (!std::isfinite(v)) throw ValidationError("factor '" + f.name + "' has a non-finite level");
      if (!seen.insert(v).second) {
        throw ValidationError("factor '" + f.name + "' repeats level value " + std::to_string(v));
      }
    }
  }
  if (replicates < 1) throw ValidationError("replicates must be >= 1");
  if (algorithms.empty()) throw ValidationError("plan needs at least one algorithm");
  for (std::size_t i = 0; i < algorithms.size(); ++i) {
    for (std::size_t j = i + 1; j < algorithms.size(); ++j) {
      if (algorithms[i] == algorithms[j]) {
        throw ValidationError("duplicate algorithm '" + std::string(to_string(algorithms[i])) + "'");
      }
    }
  }
  ExperimentPlan plan;
  plan.factors_ = std::move(factors);
  plan.replicates_ = replicates;
  plan.master_seed_ = master_seed;
  plan.algorithms_ = std::move(algorithms);
  return plan;
}

ExperimentPlan reference_plan(std::uint64_t master_seed) {
  return build_plan({{"n", {5000, 7000, 9000}}, {"s", {800, 1200, 1600}}, {"m", {500, 1000, 1500}}},
                    3, master_seed, {Algorithm::insertion, Algorithm::shift_insertion});
}

ExperimentPlan parse_plan_json(std::string_view text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("plan: invalid JSON: ") + e.what());
  }
  try {
    std::vector<FactorSpec> factors;
    for (const auto& f : doc.at("factors")) {
      FactorSpec spec;
      spec.name = f.at("name").get<std::string>();
      spec.values = f.at("values").get<std::vector<double>>();
      factors.push_back(std::move(spec));
    }
    const auto replicates = doc.at("replicates").get<std::int64_t>();
    if (replicates < 1) throw ValidationError("plan: replicates must be >= 1");
    const auto seed = doc.value("master_seed", std::uint64_t{0});
    std::vector<Algorithm> algorithms;
    if (doc.contains("algorithms")) {
      for (const auto& a : doc.at("algorithms")) {
        const auto name = a.get<std::string>();
        auto algo = parse_algorithm(name);
        if (!algo) throw ValidationError("plan: unknown algorithm '" + name + "'");
        algorithms.push_back(*algo);
      }
    } else {
      algorithms = {Algorithm::insertion, Algorithm::shift_insertion};
    }
    return build_plan(std::move(factors), static_cast<std::size_t>(replicates), seed,
                      std::move(algorithms));
  } catch (const json::exception& e) {
    throw ValidationError(std::string("plan: ") + e.what());
  }
}

std::string plan_to_json(const ExperimentPlan& plan) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["factors"] = ordered_json::array();
  for (const auto& f : plan.factors()) {
    doc["factors"].push_back({{"name", f.name}, {"values", f.values}});
  }
  doc["replicates"] = plan.replicates();
  doc["master_seed"] = plan.master_seed();
  doc["algorithms"] = ordered_json::array();
  for (auto a : plan.algorithms()) doc["algorithms"].push_back(std::string(to_string(a)));
  return doc.dump(2) + "\n";
}

namespace {

std::string cell_description(const ExperimentPlan& plan, std::size_t cell_id) {
  std::string out = "cell " + std::to_string(cell_id) + " (";
  const auto codes = plan.codes_of(cell_id);
  for (std::size_t i = 0; i < codes.size(); ++i) {
    if (i) out += ", ";
    out += plan.factors()[i].name + "=" + std::to_string(codes[i]);
  }
  return out + ")";
}

}  // namespace

std::optional<BalanceViolation> validate_balanced(const Dataset& dataset) {
  const auto& plan = dataset.plan;
  const std::size_t cells = plan.cell_count();
  const std::size_t r = plan.replicates();
  std::vector<unsigned char> seen(cells * r, 0);
  for (const auto& obs : dataset.observations) {
    bool in_range = obs.levels.size() == plan.factors().size() && obs.replicate >= 1 &&
                    obs.replicate <= r && obs.cell_id < cells;
    if (in_range) {
      for (std::size_t i = 0; i < obs.levels.size(); ++i) {
        in_range = in_range && obs.levels[i] < plan.factors()[i].levels();
      }
    }
    if (in_range && plan.cell_id_of(obs.levels) != obs.cell_id) in_range = false;
    if (!in_range) {
      return BalanceViolation{BalanceViolation::Kind::out_of_range, obs.cell_id, obs.replicate,
                              "observation for cell " + std::to_string(obs.cell_id) + " replicate " +
                                  std::to_string(obs.replicate) + " does not fit the plan"};
    }
    auto& slot = seen[obs.cell_id * r + (obs.replicate - 1)];
    if (slot) {
      return BalanceViolation{BalanceViolation::Kind::duplicate, obs.cell_id, obs.replicate,
                              "duplicate observation: " + cell_description(plan, obs.cell_id) +
                                  " replicate " + std::to_string(obs.replicate)};
    }
    slot = 1;
  }
  for (std::size_t cell = 0; cell < cells; ++cell) {
    for (std::size_t rep = 1; rep <= r; ++rep) {
      if (!seen[cell * r + rep - 1]) {
        return BalanceViolation{BalanceViolation::Kind::missing, cell, rep,
                                "missing observation: " + cell_description(plan, cell) +
                                    " replicate " + std::to_string(rep)};
      }
    }
  }
  return std::nullopt;
}

std::string_view to_string(Response response) {
  switch (response) {
    case Response::time_seconds:
      return "time_seconds";
    case Response::comparisons:
      return "comparisons";
    case Response::writes:
      return "writes";
  }
  return "unknown";
}

std::optional<Response> parse_response(std::string_view name) {
  if (name == "time_seconds") return Response::time_seconds;
  if (name == "comparisons") return Response::comparisons;
  if (name == "writes") return Response::writes;
  return std::nullopt;
}

double response_value(const Observation& obs, Response response) {
  switch (response) {
    case Response::time_seconds:
      return obs.time_seconds;
    case Response::comparisons:
      return static_cast<double>(obs.comparisons);
    case Response::writes:
      return static_cast<double>(obs.writes);
  }
  return 0.0;
}

}  // namespace sortlab
