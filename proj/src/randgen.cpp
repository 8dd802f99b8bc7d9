#include "sortlab/randgen.hpp"

#include <cmath>
#include <numbers>

#include "sortlab/errors.hpp"

namespace sortlab {

double UniformStream::next() {
  constexpr double kScale = 0x1.0p-53;
  for (;;) {
    const std::uint64_t bits = engine_() >> 11;
    if (bits != 0) return static_cast<double>(bits) * kScale;
  }
}

void validate(const GenSpec& spec) {
  if (spec.n < 1) throw ValidationError("GenSpec: n must be >= 1");
  if (!std::isfinite(spec.m)) throw ValidationError("GenSpec: mean must be finite");
  if (!std::isfinite(spec.s) || spec.s < 0.0) {
    throw ValidationError("GenSpec: standard deviation must be finite and >= 0");
  }
}

std::pair<double, double> box_muller_pair(double u1, double u2) {
  if (!(u1 > 0.0 && u1 <= 1.0)) {
    throw ValidationError("box_muller_pair: u1 must lie in (0, 1]");
  }
  if (!(u2 >= 0.0 && u2 < 1.0)) {
    throw ValidationError("box_muller_pair: u2 must lie in [0, 1)");
  }
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

std::vector<double> normal_sample(const GenSpec& spec) {
  validate(spec);
  UniformStream stream(spec.seed);
  std::vector<double> out;
  out.reserve(spec.n);
  while (out.size() < spec.n) {
    const double u1 = stream.next();
    const double u2 = stream.next();
    auto [z1, z2] = box_muller_pair(u1, u2);
    out.push_back(spec.m + spec.s * z1);
    if (out.size() < spec.n) out.push_back(spec.m + spec.s * z2);
  }
  return out;
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace sortlab
