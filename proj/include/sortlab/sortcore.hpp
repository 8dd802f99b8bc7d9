#pragma once

// Shift-insertion sort and conventional insertion sort, instrumented with
// deterministic operation counters.
//
// Cost model shared by both sorts:
//   comparisons - key-vs-key order tests (A[i] > key)
//   writes      - assignments into the array or into the temporary slot
//
// Both sorts use a strict `>` test and are therefore stable.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include "sortlab/errors.hpp"

namespace sortlab {

struct SortStats {
  std::uint64_t comparisons = 0;
  std::uint64_t writes = 0;
  double wall_time = 0.0;  // seconds; zero when timing is disabled
};

enum class Algorithm { shift_insertion, insertion };

std::string_view to_string(Algorithm algorithm);
std::optional<Algorithm> parse_algorithm(std::string_view name);

namespace detail {

template <class T, class Proj>
void require_finite_keys(std::span<const T> a, Proj& proj) {
  using Key = std::remove_cvref_t<std::invoke_result_t<Proj&, const T&>>;
  if constexpr (std::is_floating_point_v<Key>) {
    for (const T& x : a) {
      if (!std::isfinite(std::invoke(proj, x))) {
        throw ValidationError("sort input contains a non-finite key");
      }
    }
  }
}

}  // namespace detail

/// Shift-insertion sort (insertion sort with shifting).
///
/// For each j in [1, n), scan the sorted prefix front-to-back for the first
/// i < j with A[i] > A[j]. On a hit, A[j] is saved, the block A[i..j-1] is
/// shifted one slot right and the saved key is placed at A[i]; the scan then
/// stops. Without a hit the scan costs j comparisons and no writes.
template <class T, class Proj = std::identity>
SortStats shift_insertion_sort(std::span<T> a, Proj proj = {}) {
  detail::require_finite_keys(std::span<const T>(a), proj);
  SortStats stats;
  const std::size_t n = a.size();
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      ++stats.comparisons;
      if (std::invoke(proj, a[i]) > std::invoke(proj, a[j])) {
        T temp = std::move(a[j]);
        ++stats.writes;
        for (std::size_t k = j; k > i; --k) {
          a[k] = std::move(a[k - 1]);
          ++stats.writes;
        }
        a[i] = std::move(temp);
        ++stats.writes;
        break;
      }
    }
  }
  return stats;
}

/// Conventional insertion sort with a backward scan over the sorted prefix.
template <class T, class Proj = std::identity>
SortStats insertion_sort(std::span<T> a, Proj proj = {}) {
  detail::require_finite_keys(std::span<const T>(a), proj);
  SortStats stats;
  const std::size_t n = a.size();
  for (std::size_t j = 1; j < n; ++j) {
    T key = std::move(a[j]);
    ++stats.writes;
    // `hole` is i + 1 in the textbook formulation, kept unsigned.
    std::size_t hole = j;
    while (hole > 0) {
      ++stats.comparisons;
      if (!(std::invoke(proj, a[hole - 1]) > std::invoke(proj, key))) {
        break;
      }
      a[hole] = std::move(a[hole - 1]);
      ++stats.writes;
      --hole;
    }
    a[hole] = std::move(key);
    ++stats.writes;
  }
  return stats;
}

/// Runs the selected algorithm in place on `a`.
SortStats sort_with(Algorithm algorithm, std::span<double> a);

/// Value-returning convenience form: copies `input`, sorts the copy.
std::pair<std::vector<double>, SortStats> sorted_copy(
    Algorithm algorithm, std::span<const double> input);

/// True iff `a` is non-decreasing and is a multiset permutation of
/// `original`.
bool verify_sorted(std::span<const double> a, std::span<const double> original);

}  // namespace sortlab
