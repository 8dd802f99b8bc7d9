#pragma once

// Balanced full-factorial experiment plans and the long-format dataset model.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sortlab/sortcore.hpp"

namespace sortlab {

/// One factor. Codes are positions in `values` (0, 1, 2, ...).
struct FactorSpec {
  std::string name;
  std::vector<double> values;

  std::size_t levels() const { return values.size(); }
};

/// Cells are enumerated in lexicographic code order with the first declared
/// factor varying slowest; a cell id is the position in that enumeration.
class ExperimentPlan {
 public:
  ExperimentPlan() = default;

  const std::vector<FactorSpec>& factors() const { return factors_; }
  std::size_t replicates() const { return replicates_; }
  std::uint64_t master_seed() const { return master_seed_; }
  const std::vector<Algorithm>& algorithms() const { return algorithms_; }

  std::size_t cell_count() const;
  std::size_t runs_per_algorithm() const { return cell_count() * replicates_; }

  std::vector<std::size_t> codes_of(std::size_t cell_id) const;
  std::size_t cell_id_of(const std::vector<std::size_t>& codes) const;
  std::vector<double> values_of(std::size_t cell_id) const;

  std::optional<std::size_t> factor_index(std::string_view name) const;

  /// Same plan with a different master seed.
  ExperimentPlan with_master_seed(std::uint64_t seed) const;

  /// Same factors and replicates, i.e. datasets from both plans can be
  /// compared source-for-source.
  bool same_shape(const ExperimentPlan& other) const;

 private:
  friend ExperimentPlan build_plan(std::vector<FactorSpec>, std::size_t,
                                   std::uint64_t, std::vector<Algorithm>);

  std::vector<FactorSpec> factors_;
  std::size_t replicates_ = 1;
  std::uint64_t master_seed_ = 0;
  std::vector<Algorithm> algorithms_;
};

/// Throws ValidationError on: no factors, a factor with fewer than two
/// values, duplicate factor names, duplicate or non-finite level values,
/// replicates == 0, no algorithms, duplicate algorithms.
ExperimentPlan build_plan(std::vector<FactorSpec> factors, std::size_t replicates,
                          std::uint64_t master_seed, std::vector<Algorithm> algorithms);

/// The 3^3 layout: n {5000,7000,9000}, s {800,1200,1600}, m {500,1000,1500},
/// three replicates, both algorithms.
ExperimentPlan reference_plan(std::uint64_t master_seed);

/// Plan file (JSON): {"factors":[{"name":..,"values":[..]}], "replicates":..,
/// "master_seed":.., "algorithms":[..]}.
ExperimentPlan parse_plan_json(std::string_view text);
std::string plan_to_json(const ExperimentPlan& plan);

struct Observation {
  Algorithm algorithm = Algorithm::insertion;
  std::size_t cell_id = 0;
  std::vector<std::size_t> levels;  // one code per plan factor
  std::vector<double> values;       // actual factor values, same order
  std::size_t replicate = 1;        // 1-based
  std::uint64_t derived_seed = 0;
  double time_seconds = 0.0;
  std::uint64_t comparisons = 0;
  std::uint64_t writes = 0;
};

struct DatasetMetadata {
  std::string prng_id;
  std::string clock_id;
  double clock_resolution_seconds = 0.0;
  bool timing_enabled = true;
  std::vector<std::size_t> run_order;  // run index = cell_id * replicates + (replicate - 1)
};

/// All observations of one algorithm under one plan.
struct Dataset {
  ExperimentPlan plan;
  Algorithm algorithm = Algorithm::insertion;
  std::vector<Observation> observations;
  DatasetMetadata metadata;
};

struct BalanceViolation {
  enum class Kind { missing, duplicate, out_of_range } kind;
  std::size_t cell_id = 0;
  std::size_t replicate = 0;
  std::string message;
};

/// nullopt when every (cell, replicate) appears exactly once. Otherwise the
/// first problem found: rows scanned in file order for duplicates and
/// out-of-range entries, then cells scanned in enumeration order for gaps.
std::optional<BalanceViolation> validate_balanced(const Dataset& dataset);

enum class Response { time_seconds, comparisons, writes };

std::string_view to_string(Response response);
std::optional<Response> parse_response(std::string_view name);
double response_value(const Observation& obs, Response response);

}  // namespace sortlab
