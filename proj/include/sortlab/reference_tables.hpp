#pragma once

// Published ANOVA results for the 3x3x3 timing study (81 runs, 54 error DF):
// one table for conventional insertion sort and one for shift-insertion
// sort. These drive `sortlab selftest` and the acceptance suite.

#include <array>
#include <string_view>

namespace sortlab::reference {

struct PublishedRow {
  std::string_view source;
  int df;
  double ss;
  double f;  // as printed (2 decimals)
  double p;  // as printed (3 decimals)
};

struct PublishedTable {
  std::string_view algorithm;
  std::array<PublishedRow, 7> rows;
  int error_df;
  double error_ss;
  int total_df;
  double total_ss;
  double s;            // printed S
  double r_sq_pct;     // printed R-Sq
  double r_sq_adj_pct; // printed R-Sq(adj)
};

const PublishedTable& insertion_table();
const PublishedTable& shift_insertion_table();

}  // namespace sortlab::reference
