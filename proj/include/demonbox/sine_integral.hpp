#pragma once

namespace demonbox {

// Sine integral Si(x) = \int_0^x sin(t)/t dt, accurate to ~1e-15 relative.
double si(double x);

// Step-function model for the difference Si(n*pi + a) - Si(n*pi - a) with
// n >= 1, a > 0, a/pi not an integer.  Writing m = floor(a/pi) and
// eps = a/pi - m, the model takes pi for n < m, pi/2 + pi*eps for n = m and
// 0 for n > m.  Accuracy improves with n; near n = m errors reach ~0.25.
double si_pair_approx(int n, double a);

}  // namespace demonbox
