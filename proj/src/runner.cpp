#include "sortlab/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "sortlab/errors.hpp"

namespace sortlab {

using Clock = std::chrono::steady_clock;
static_assert(Clock::is_steady);

double measure_clock_resolution() {
  auto best = Clock::duration::max();
  for (int i = 0; i < 64; ++i) {
    const auto start = Clock::now();
    auto now = Clock::now();
    while (now == start) now = Clock::now();
    best = std::min(best, now - start);
  }
  return std::chrono::duration<double>(best).count();
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::size_t cell_id, std::size_t replicate) {
  std::uint64_t h = mix64(master_seed);
  h = mix64(h ^ static_cast<std::uint64_t>(cell_id));
  h = mix64(h ^ static_cast<std::uint64_t>(replicate));
  return h;
}

GenSpec cell_gen_spec(const ExperimentPlan& plan, std::size_t cell_id, std::uint64_t derived_seed) {
  const auto values = plan.values_of(cell_id);
  GenSpec spec{kDefaultN, kDefaultM, kDefaultS, derived_seed};
  if (auto i = plan.factor_index("n")) {
    const double n = values[*i];
    if (!(n >= 1.0) || n != std::floor(n)) {
      throw ValidationError("factor n must take positive integer values, got " + std::to_string(n));
    }
    spec.n = static_cast<std::uint64_t>(n);
  }
  if (auto i = plan.factor_index("s")) spec.s = values[*i];
  if (auto i = plan.factor_index("m")) spec.m = values[*i];
  validate(spec);
  return spec;
}

Observation run_sort(Algorithm algorithm, const Sorter& sorter, std::span<const double> input,
                     std::size_t replicate, std::uint64_t derived_seed, const RunOptions& options) {
  std::vector<double> work(input.begin(), input.end());
  SortStats stats;
  if (options.timing) {
    const auto start = Clock::now();
    stats = sorter(work);
    const auto stop = Clock::now();
    stats.wall_time = std::chrono::duration<double>(stop - start).count();
  } else {
    stats = sorter(work);
    stats.wall_time = 0.0;
  }
  if (!verify_sorted(work, input)) {
    throw NumericalError(std::string(to_string(algorithm)) + " produced unsorted output (n=" +
                         std::to_string(input.size()) + ", seed=" + std::to_string(derived_seed) +
                         ", replicate=" + std::to_string(replicate) + ")");
  }
  Observation obs;
  obs.algorithm = algorithm;
  obs.replicate = replicate;
  obs.derived_seed = derived_seed;
  obs.time_seconds = std::max(0.0, stats.wall_time);
  obs.comparisons = stats.comparisons;
  obs.writes = stats.writes;
  return obs;
}

namespace {

Sorter sorter_for(Algorithm algorithm) {
  return [algorithm](std::span<double> data) { return sort_with(algorithm, data); };
}

}  // namespace

Observation run_cell(Algorithm algorithm, std::uint64_t n, double s, double m, std::size_t replicate,
                     std::uint64_t derived_seed, const RunOptions& options) {
  if (replicate < 1) throw ValidationError("replicate index must be >= 1");
  const auto input = normal_sample(GenSpec{n, m, s, derived_seed});
  auto obs = run_sort(algorithm, sorter_for(algorithm), input, replicate, derived_seed, options);
  obs.values = {static_cast<double>(n), s, m};
  return obs;
}

std::vector<std::size_t> run_order_for(const ExperimentPlan& plan) {
  std::vector<std::size_t> order(plan.runs_per_algorithm());
  std::iota(order.begin(), order.end(), std::size_t{0});
  // Fisher-Yates driven by raw engine output so the permutation does not
  // depend on the standard library's distribution implementations.
  std::mt19937_64 engine(mix64(plan.master_seed() ^ 0x72756e6f72646572ULL));
  for (std::size_t i = order.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(engine() % i);
    std::swap(order[i - 1], order[j]);
  }
  return order;
}

ExperimentResult run_experiment(const ExperimentPlan& plan, const RunOptions& options) {
  ExperimentResult result;
  result.run_order = run_order_for(plan);

  DatasetMetadata meta;
  meta.prng_id = std::string(UniformStream::algorithm_id()) + "+splitmix64-seeds";
  meta.clock_id = std::string(kClockId);
  meta.clock_resolution_seconds = options.timing ? measure_clock_resolution() : 0.0;
  meta.timing_enabled = options.timing;
  meta.run_order = result.run_order;

  for (auto algorithm : plan.algorithms()) {
    Dataset ds;
    ds.plan = plan;
    ds.algorithm = algorithm;
    ds.metadata = meta;
    ds.observations.reserve(plan.runs_per_algorithm());
    result.datasets.emplace(algorithm, std::move(ds));
  }

  const std::size_t r = plan.replicates();
  std::set<std::pair<Algorithm, std::size_t>> warmed;
  for (std::size_t run : result.run_order) {
    const std::size_t cell = run / r;
    const std::size_t replicate = run % r + 1;
    const std::uint64_t seed = derive_seed(plan.master_seed(), cell, replicate);
    const auto input = normal_sample(cell_gen_spec(plan, cell, seed));
    const auto codes = plan.codes_of(cell);
    const auto values = plan.values_of(cell);

    for (auto algorithm : plan.algorithms()) {
      const Sorter sorter = sorter_for(algorithm);
      if (options.warm_up && options.timing && warmed.emplace(algorithm, cell).second) {
        std::vector<double> scratch(input.begin(), input.end());
        sorter(scratch);
      }
      auto obs = run_sort(algorithm, sorter, input, replicate, seed, options);
      obs.cell_id = cell;
      obs.levels = codes;
      obs.values = values;
      result.datasets.at(algorithm).observations.push_back(std::move(obs));
    }
  }

  for (auto& [algorithm, ds] : result.datasets) {
    std::sort(ds.observations.begin(), ds.observations.end(), [](const auto& a, const auto& b) {
      return std::pair(a.cell_id, a.replicate) < std::pair(b.cell_id, b.replicate);
    });
  }
  return result;
}

}  // namespace sortlab
