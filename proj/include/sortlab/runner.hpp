#pragma once

// Executes sort runs and collects Observations.
//
// Inputs are generated outside the timed region and the steady clock brackets
// only the sort call. Measured runs are strictly sequential.

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "sortlab/doe.hpp"
#include "sortlab/randgen.hpp"
#include "sortlab/sortcore.hpp"

namespace sortlab {

inline constexpr std::string_view kClockId = "std::chrono::steady_clock";

/// Smallest observable non-zero tick of the steady clock, in seconds.
double measure_clock_resolution();

struct RunOptions {
  bool timing = true;
  // Untimed sort of a same-sized scratch array before a cell's first
  // measured run.
  bool warm_up = true;
};

/// Sorts `data` in place.
using Sorter = std::function<SortStats(std::span<double>)>;

/// Derived seed for one (cell, replicate). Independent of the algorithm so
/// every algorithm sorts the same arrays.
std::uint64_t derive_seed(std::uint64_t master_seed, std::size_t cell_id,
                          std::size_t replicate);

/// Generation parameters for a cell. Factors named "n", "s" and "m" set the
/// sample size, standard deviation and mean; absent ones take
/// kDefaultN / kDefaultS / kDefaultM. Other factors only label the cell.
inline constexpr std::uint64_t kDefaultN = 1000;
inline constexpr double kDefaultS = 1.0;
inline constexpr double kDefaultM = 0.0;
GenSpec cell_gen_spec(const ExperimentPlan& plan, std::size_t cell_id,
                      std::uint64_t derived_seed);

/// One timed sort of `input` (copied) followed by verify_sorted. Throws
/// NumericalError if the output is not a sorted permutation of the input.
/// Leaves cell fields (cell_id, levels, values) empty.
Observation run_sort(Algorithm algorithm, const Sorter& sorter,
                     std::span<const double> input, std::size_t replicate,
                     std::uint64_t derived_seed, const RunOptions& options = {});

/// Generates N(m, s) input of length n from `derived_seed` and runs the
/// chosen algorithm on it.
Observation run_cell(Algorithm algorithm, std::uint64_t n, double s, double m,
                     std::size_t replicate, std::uint64_t derived_seed,
                     const RunOptions& options = {});

struct ExperimentResult {
  std::map<Algorithm, Dataset> datasets;
  std::vector<std::size_t> run_order;
};

/// Runs every (cell, replicate) of the plan for every algorithm, in an order
/// given by a permutation drawn from the master seed. For each run the input
/// is generated once and each algorithm sorts its own copy.
ExperimentResult run_experiment(const ExperimentPlan& plan, const RunOptions& options = {});

/// The run-order permutation run_experiment uses for `plan`.
std::vector<std::size_t> run_order_for(const ExperimentPlan& plan);

}  // namespace sortlab
