#include "sortlab/special.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "sortlab/errors.hpp"

namespace sortlab {

namespace {

constexpr int kMaxIterations = 10000;
constexpr double kEpsilon = 1e-16;
constexpr double kTiny = 1e-300;

// Continued fraction for I_x(a, b) * a / front, modified Lentz.
double beta_continued_fraction(double x, double a, double b) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    // even step
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    // odd step
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEpsilon) return h;
  }
  throw NumericalError("incomplete beta continued fraction did not converge (x=" +
                       std::to_string(x) + ", a=" + std::to_string(a) + ", b=" + std::to_string(b) +
                       ")");
}

}  // namespace

double regularized_incomplete_beta(double x, double a, double b) {
  if (!(x >= 0.0 && x <= 1.0)) throw ValidationError("incomplete beta: x must lie in [0, 1]");
  if (!(a > 0.0) || !std::isfinite(a)) throw ValidationError("incomplete beta: a must be > 0");
  if (!(b > 0.0) || !std::isfinite(b)) throw ValidationError("incomplete beta: b must be > 0");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;

  const double log_beta = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
  const double front = std::exp(a * std::log(x) + b * std::log1p(-x) - log_beta);
  double result;
  if (x < (a + 1.0) / (a + b + 2.0)) {
    result = front * beta_continued_fraction(x, a, b) / a;
  } else {
    result = 1.0 - front * beta_continued_fraction(1.0 - x, b, a) / b;
  }
  if (result < 0.0) return 0.0;
  if (result > 1.0) return 1.0;
  return result;
}

double f_tail_prob(double f, int d1, int d2) {
  if (!std::isfinite(f) || f < 0.0) throw ValidationError("f_tail_prob: F must be finite and >= 0");
  if (d1 < 1 || d2 < 1) throw ValidationError("f_tail_prob: degrees of freedom must be >= 1");
  if (f == 0.0) return 1.0;
  const double x = d2 / (d2 + d1 * f);
  return regularized_incomplete_beta(x, 0.5 * d2, 0.5 * d1);
}

}  // namespace sortlab
