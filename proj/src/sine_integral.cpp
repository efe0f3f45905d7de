#include "demonbox/sine_integral.hpp"

#include <cmath>

#include "demonbox/constants.hpp"
#include "demonbox/errors.hpp"

namespace demonbox {
namespace {

// Rational fits for the auxiliary functions f, g with Si = pi/2 - f cos - g sin,
// valid for x > 4; relative error below 1e-15 on [4, inf).
constexpr double kFA[] = {
    1.0,
    7.44437068161936700618e2,
    1.96396372895146869801e5,
    2.37750310125431834034e7,
    1.43073403821274636888e9,
    4.33736238870432522765e10,
    6.40533830574022022911e11,
    4.20968180571076940208e12,
    1.00795182980368574617e13,
    4.94816688199951963482e12,
    -4.94701168645415959931e11,
};
constexpr double kFB[] = {
    1.0,
    7.46437068161927678031e2,
    1.97865247031583951450e5,
    2.41535670165126845144e7,
    1.47478952192985464958e9,
    4.58595115847765779830e10,
    7.08501308149515401563e11,
    5.06084464593475076774e12,
    1.43468549171581016479e13,
    1.11535493509914254097e13,
};
constexpr double kGA[] = {
    1.0,
    8.1359520115168615e2,
    2.35239181626478200e5,
    3.12557570795778731e7,
    2.06297595146763354e9,
    6.83052205423625007e10,
    1.09049528450362786e12,
    7.57664583257834349e12,
    1.81004487464664575e13,
    6.43291613143049485e12,
    -1.36517137670871689e12,
};
constexpr double kGB[] = {
    1.0,
    8.19595201151451564e2,
    2.40036752835578777e5,
    3.26026661647090822e7,
    2.23355543278099360e9,
    7.87465017341829930e10,
    1.39866710696414565e12,
    1.17164723371736605e13,
    4.01839087307656620e13,
    3.99653257887490811e13,
};

template <int N>
double horner(const double (&c)[N], double u) {
  double s = 0.0;
  for (int k = N - 1; k >= 0; --k) s = s * u + c[k];
  return s;
}

}  // namespace

double si(double x) {
  const double ax = std::fabs(x);
  if (ax <= 4.0) {
    // alternating power series sum (-1)^k x^(2k+1) / ((2k+1)(2k+1)!)
    double term = x;
    double total = x;
    const double x2 = x * x;
    for (int k = 1;; ++k) {
      term *= -x2 / ((2.0 * k) * (2.0 * k + 1.0));
      const double add = term / (2.0 * k + 1.0);
      total += add;
      if (std::fabs(add) < 1e-18 * std::fabs(total) + 1e-300) return total;
    }
  }
  const double u = 1.0 / (ax * ax);
  const double f = horner(kFA, u) / horner(kFB, u) / ax;
  const double g = horner(kGA, u) / horner(kGB, u) * u;
  const double s = kPi / 2.0 - f * std::cos(ax) - g * std::sin(ax);
  return x > 0.0 ? s : -s;
}

double si_pair_approx(int n, double a) {
  if (n < 1) throw ConfigError("si_pair_approx: n must be >= 1");
  if (!(a > 0.0)) throw ConfigError("si_pair_approx: a must be > 0");
  const int m = static_cast<int>(std::floor(a / kPi));
  const double eps = a / kPi - m;
  if (n < m) return kPi;
  if (n == m) return kPi / 2.0 + kPi * eps;
  return 0.0;
}

}  // namespace demonbox
