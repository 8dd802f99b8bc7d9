#pragma once

// Seedable normal-variate generation via the basic (trigonometric)
// Box-Muller transformation.

#include <cstdint>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

namespace sortlab {

/// Identifier recorded in every dataset so a run can be re-derived.
inline constexpr std::string_view kUniformAlgorithmId = "mt19937_64/53bit";

/// Uniform variates strictly inside (0, 1).
///
/// Backed by std::mt19937_64 (period 2^19937 - 1). Each draw takes the top
/// 53 bits of one engine output; a raw zero is discarded and the next output
/// is used instead. Single owner: not safe to share mid-generation.
class UniformStream {
 public:
  explicit UniformStream(std::uint64_t seed) : engine_(seed) {}

  double next();

  static constexpr std::string_view algorithm_id() { return kUniformAlgorithmId; }

 private:
  std::mt19937_64 engine_;
};

struct GenSpec {
  std::uint64_t n = 1;
  double m = 0.0;  // mean
  double s = 1.0;  // standard deviation, >= 0
  std::uint64_t seed = 0;
};

/// Throws ValidationError unless n >= 1, s >= 0 and m, s are finite.
void validate(const GenSpec& spec);

/// z1 = sqrt(-2 ln u1) cos(2 pi u2), z2 = sqrt(-2 ln u1) sin(2 pi u2).
/// Requires u1 in (0, 1] and u2 in [0, 1).
std::pair<double, double> box_muller_pair(double u1, double u2);

/// n independent N(m, s) variates. Consecutive uniform pairs (u1, u2) feed
/// box_muller_pair; both members of each pair are used in order and the
/// second member of a trailing pair is dropped when n is odd.
std::vector<double> normal_sample(const GenSpec& spec);

/// splitmix64 finalizer. Used to derive per-run seeds.
std::uint64_t mix64(std::uint64_t x);

}  // namespace sortlab
