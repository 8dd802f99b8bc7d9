#pragma once

namespace sortlab {

/// I_x(a, b), the regularized incomplete beta function. Evaluated with a
/// modified-Lentz continued fraction on whichever of (x; a, b) and
/// (1 - x; b, a) converges faster. Requires x in [0, 1], a > 0, b > 0.
double regularized_incomplete_beta(double x, double a, double b);

/// P(F > f) for F ~ F(d1, d2), via I_x(d2/2, d1/2) with x = d2 / (d2 + d1 f).
/// Requires finite f >= 0 and d1, d2 >= 1.
double f_tail_prob(double f, int d1, int d2);

}  // namespace sortlab
