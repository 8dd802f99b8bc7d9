#include <cmath>
#include <random>

#include <boost/math/special_functions/beta.hpp>
#include <doctest.h>

#include "sortlab/errors.hpp"
#include "sortlab/special.hpp"

using namespace sortlab;

TEST_SUITE("special") {

TEST_CASE("incomplete beta: boundaries and closed forms") {
  CHECK(regularized_incomplete_beta(0.0, 2.0, 3.0) == 0.0);
  CHECK(regularized_incomplete_beta(1.0, 2.0, 3.0) == 1.0);
  CHECK(regularized_incomplete_beta(0.5, 1.0, 1.0) == doctest::Approx(0.5).epsilon(1e-14));
  // Beta(2, 3) CDF: 1 - (1 - x)^3 (1 + 3x).
  CHECK(std::fabs(regularized_incomplete_beta(0.25, 2.0, 3.0) - 0.26171875) < 1e-12);
  for (double x = 0.05; x < 1.0; x += 0.05) {
    const double exact = 1.0 - std::pow(1.0 - x, 3) * (1.0 + 3.0 * x);
    CHECK(std::fabs(regularized_incomplete_beta(x, 2.0, 3.0) - exact) < 1e-12);
    CHECK(std::fabs(regularized_incomplete_beta(x, 1.0, 1.0) - x) < 1e-14);
  }
}

TEST_CASE("incomplete beta: agrees with Boost to 1e-10 and satisfies the reflection") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> ux(0.0, 1.0);
  std::uniform_real_distribution<double> uab(0.05, 60.0);
  for (int i = 0; i < 5000; ++i) {
    const double x = ux(rng);
    const double a = uab(rng);
    const double b = uab(rng);
    const double ours = regularized_incomplete_beta(x, a, b);
    REQUIRE(std::fabs(ours - boost::math::ibeta(a, b, x)) < 1e-10);
    REQUIRE(std::fabs(ours - (1.0 - regularized_incomplete_beta(1.0 - x, b, a))) < 1e-10);
  }
}

TEST_CASE("incomplete beta: domain errors") {
  CHECK_THROWS_AS(regularized_incomplete_beta(-0.1, 1, 1), ValidationError);
  CHECK_THROWS_AS(regularized_incomplete_beta(1.1, 1, 1), ValidationError);
  CHECK_THROWS_AS(regularized_incomplete_beta(0.5, 0, 1), ValidationError);
  CHECK_THROWS_AS(regularized_incomplete_beta(0.5, 1, -2), ValidationError);
  CHECK_THROWS_AS(regularized_incomplete_beta(NAN, 1, 1), ValidationError);
}

TEST_CASE("f_tail_prob: examples") {
  CHECK(f_tail_prob(0.0, 1, 1) == 1.0);
  CHECK(f_tail_prob(0.0, 3, 10) == 1.0);
  CHECK(std::fabs(f_tail_prob(4.42, 2, 54) - 0.0167) <= 0.0005);
  CHECK(std::fabs(f_tail_prob(2.40, 4, 54) - 0.061) <= 0.001);
  CHECK(f_tail_prob(15.28, 2, 54) < 0.0005);
}

TEST_CASE("f_tail_prob: d1 = 2 closed form over f in [0, 100]") {
  for (int d2 : {1, 5, 54, 200}) {
    for (int i = 0; i <= 1000; ++i) {
      const double f = 0.1 * i;
      const double exact = std::pow(1.0 + 2.0 * f / d2, -0.5 * d2);
      REQUIRE(std::fabs(f_tail_prob(f, 2, d2) - exact) < 1e-8);
    }
  }
}

TEST_CASE("f_tail_prob: agrees with Boost's F distribution") {
  for (int d1 : {1, 2, 4, 8, 30}) {
    for (int d2 : {1, 10, 54, 500}) {
      for (double f : {0.01, 0.63, 1.0, 2.68, 5.36, 20.0, 11457.81}) {
        const double x = d2 / (d2 + d1 * f);
        const double expected = boost::math::ibeta(0.5 * d2, 0.5 * d1, x);
        REQUIRE(std::fabs(f_tail_prob(f, d1, d2) - expected) < 1e-10);
      }
    }
  }
}

TEST_CASE("f_tail_prob: monotonically decreasing in f") {
  for (auto [d1, d2] : {std::pair{2, 54}, std::pair{4, 54}, std::pair{8, 54}, std::pair{1, 3}}) {
    double prev = 1.0;
    for (int i = 1; i <= 2000; ++i) {
      const double p = f_tail_prob(0.05 * i, d1, d2);
      REQUIRE(p <= prev);
      REQUIRE(p >= 0.0);
      prev = p;
    }
  }
}

TEST_CASE("f_tail_prob: domain errors") {
  CHECK_THROWS_AS(f_tail_prob(-1.0, 2, 54), ValidationError);
  CHECK_THROWS_AS(f_tail_prob(INFINITY, 2, 54), ValidationError);
  CHECK_THROWS_AS(f_tail_prob(1.0, 0, 54), ValidationError);
  CHECK_THROWS_AS(f_tail_prob(1.0, 2, 0), ValidationError);
}

}  // TEST_SUITE
