#include "sortlab/sortcore.hpp"

#include <algorithm>
#include <cmath>

namespace sortlab {

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::shift_insertion:
      return "shift_insertion";
    case Algorithm::insertion:
      return "insertion";
  }
  return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  if (name == "shift_insertion") return Algorithm::shift_insertion;
  if (name == "insertion") return Algorithm::insertion;
  return std::nullopt;
}

SortStats sort_with(Algorithm algorithm, std::span<double> a) {
  switch (algorithm) {
    case Algorithm::shift_insertion:
      return shift_insertion_sort(a);
    case Algorithm::insertion:
      return insertion_sort(a);
  }
  throw ValidationError("unknown algorithm");
}

std::pair<std::vector<double>, SortStats> sorted_copy(Algorithm algorithm,
                                                       std::span<const double> input) {
  std::vector<double> out(input.begin(), input.end());
  SortStats stats = sort_with(algorithm, out);
  return {std::move(out), stats};
}

bool verify_sorted(std::span<const double> a, std::span<const double> original) {
  if (a.size() != original.size()) return false;
  auto is_nan = [](double x) { return std::isnan(x); };
  if (std::any_of(a.begin(), a.end(), is_nan) ||
      std::any_of(original.begin(), original.end(), is_nan)) {
    return false;
  }
  if (!std::is_sorted(a.begin(), a.end())) return false;
  std::vector<double> expected(original.begin(), original.end());
  std::sort(expected.begin(), expected.end());
  return std::equal(a.begin(), a.end(), expected.begin());
}

}  // namespace sortlab
