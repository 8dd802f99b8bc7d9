#include <cmath>
#include <vector>

#include <doctest.h>

#include "sortlab/errors.hpp"
#include "sortlab/randgen.hpp"

using namespace sortlab;

namespace {

struct Moments {
  double mean;
  double sd;
};

Moments moments(const std::vector<double>& v) {
  long double sum = 0;
  for (double x : v) sum += x;
  const long double mean = sum / v.size();
  long double ss = 0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return {static_cast<double>(mean), static_cast<double>(std::sqrt(ss / (v.size() - 1)))};
}

}  // namespace

TEST_SUITE("randgen") {

TEST_CASE("box_muller_pair closed forms") {
  auto [a1, a2] = box_muller_pair(1.0, 0.37);
  CHECK(a1 == doctest::Approx(0.0));
  CHECK(a2 == doctest::Approx(0.0));

  auto [b1, b2] = box_muller_pair(std::exp(-2.0), 0.0);
  CHECK(b1 == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(b2 == doctest::Approx(0.0));

  auto [c1, c2] = box_muller_pair(std::exp(-2.0), 0.25);
  CHECK(std::fabs(c1) < 1e-14);
  CHECK(c2 == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("box_muller_pair domain") {
  CHECK_THROWS_AS(box_muller_pair(0.0, 0.5), ValidationError);
  CHECK_THROWS_AS(box_muller_pair(-0.1, 0.5), ValidationError);
  CHECK_THROWS_AS(box_muller_pair(1.5, 0.5), ValidationError);
  CHECK_THROWS_AS(box_muller_pair(0.5, 1.0), ValidationError);
  CHECK_THROWS_AS(box_muller_pair(0.5, -0.01), ValidationError);
  CHECK_NOTHROW(box_muller_pair(1.0, 0.0));
}

TEST_CASE("uniform stream stays inside (0, 1) and is reproducible") {
  UniformStream a(123), b(123), c(124);
  bool differs = false;
  for (int i = 0; i < 100000; ++i) {
    const double x = a.next();
    REQUIRE(x > 0.0);
    REQUIRE(x < 1.0);
    REQUIRE(x == b.next());
    differs = differs || x != c.next();
  }
  CHECK(differs);
  CHECK(UniformStream::algorithm_id() == kUniformAlgorithmId);
}

TEST_CASE("normal_sample consumes uniform pairs in order") {
  const GenSpec spec{7, 3.0, 2.0, 555};
  const auto sample = normal_sample(spec);
  REQUIRE(sample.size() == 7);
  UniformStream stream(555);
  std::vector<double> expected;
  while (expected.size() < 7) {
    const double u1 = stream.next();
    const double u2 = stream.next();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    expected.push_back(3.0 + 2.0 * radius * std::cos(2.0 * M_PI * u2));
    expected.push_back(3.0 + 2.0 * radius * std::sin(2.0 * M_PI * u2));
  }
  for (std::size_t i = 0; i < 7; ++i) CHECK(sample[i] == doctest::Approx(expected[i]).epsilon(1e-15));

  // Odd n drops the last z2, so it is a prefix of the next even length.
  const auto longer = normal_sample(GenSpec{8, 3.0, 2.0, 555});
  CHECK(std::equal(sample.begin(), sample.end(), longer.begin()));
}

TEST_CASE("normal_sample: zero variance gives the mean") {
  const auto v = normal_sample(GenSpec{5, 1500.0, 0.0, 42});
  CHECK(v == std::vector<double>(5, 1500.0));
}

TEST_CASE("normal_sample: determinism") {
  for (std::uint64_t seed : {0ull, 1ull, 0xdeadbeefull}) {
    CHECK(normal_sample(GenSpec{3, 0.0, 1.0, seed}) == normal_sample(GenSpec{3, 0.0, 1.0, seed}));
  }
  CHECK(normal_sample(GenSpec{3, 0.0, 1.0, 1}) != normal_sample(GenSpec{3, 0.0, 1.0, 2}));
}

TEST_CASE("normal_sample: moments at n = 1e5") {
  const auto v = normal_sample(GenSpec{100000, 1000.0, 1200.0, 7});
  const auto mo = moments(v);
  CHECK(std::fabs(mo.mean - 1000.0) < 15.0);
  CHECK(std::fabs(mo.sd - 1200.0) < 15.0);
  for (double x : v) REQUIRE(std::isfinite(x));
}

TEST_CASE("GenSpec validation") {
  CHECK_THROWS_AS(normal_sample(GenSpec{0, 0.0, 1.0, 1}), ValidationError);
  CHECK_THROWS_AS(normal_sample(GenSpec{3, 0.0, -1.0, 1}), ValidationError);
  CHECK_THROWS_AS(normal_sample(GenSpec{3, NAN, 1.0, 1}), ValidationError);
  CHECK_THROWS_AS(normal_sample(GenSpec{3, 0.0, INFINITY, 1}), ValidationError);
}

TEST_CASE("mix64 separates neighbouring inputs") {
  CHECK(mix64(0) != mix64(1));
  CHECK(mix64(1) != mix64(2));
  CHECK(mix64(12345) == mix64(12345));
}

}  // TEST_SUITE
