#pragma once

// Dataset CSV format.
//
//   # sortlab-dataset v1
//   # key=value            metadata lines (algorithm, plan shape, PRNG, clock,
//   ...                    master seed, run order)
//   algorithm,cell_id,level_<f1>..level_<fk>,<f1>..<fk>,replicate,derived_seed,
//   time_seconds,comparisons,writes
//
// For the n/s/m plan the header row is exactly
//   algorithm,cell_id,level_n,level_s,level_m,n,s,m,replicate,derived_seed,
//   time_seconds,comparisons,writes

#include <string>
#include <string_view>

#include "sortlab/doe.hpp"

namespace sortlab {

std::string dataset_header_row(const ExperimentPlan& plan);

std::string write_dataset_csv(const Dataset& dataset);

/// Throws ValidationError on malformed input. Does not check balance.
Dataset parse_dataset_csv(std::string_view text);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

}  // namespace sortlab
