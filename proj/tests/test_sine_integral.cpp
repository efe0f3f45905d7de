#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "demonbox/errors.hpp"
#include "demonbox/sine_integral.hpp"
#include "doctest.h"

using demonbox::si;
using demonbox::si_pair_approx;

namespace {

constexpr double kPi = 3.14159265358979323846;

// composite Simpson of sin(t)/t on [0, x]; panel count scales so the
// truncation error stays below ~1e-13
double si_quadrature(double x) {
  const double ax = std::fabs(x);
  if (ax == 0.0) return 0.0;
  int n = std::max(4096, static_cast<int>(ax * 4000.0));
  if (n % 2) ++n;
  const double h = ax / n;
  auto f = [](double t) { return t == 0.0 ? 1.0 : std::sin(t) / t; };
  double acc = f(0.0) + f(ax);
  for (int k = 1; k < n; ++k) acc += f(k * h) * (k % 2 ? 4.0 : 2.0);
  const double val = acc * h / 3.0;
  return x > 0.0 ? val : -val;
}

}  // namespace

TEST_CASE("si matches reference values") {
  CHECK(si(0.5) == doctest::Approx(0.49310741804306669).epsilon(1e-14));
  CHECK(si(1.0) == doctest::Approx(0.94608307036718301).epsilon(1e-14));
  CHECK(si(kPi) == doctest::Approx(1.8519370519824662).epsilon(1e-14));
  CHECK(si(4.0) == doctest::Approx(1.7582031389490531).epsilon(1e-14));
  CHECK(si(10.0) == doctest::Approx(1.6583475942188740).epsilon(1e-14));
  CHECK(si(100.0) == doctest::Approx(1.5622254668890563).epsilon(1e-14));
  CHECK(si(0.0) == 0.0);
}

TEST_CASE("si agrees with quadrature on both branches") {
  for (double x : {0.01, 0.3, 1.7, 3.9, 4.0, 4.1, 6.0, 9.42, 15.0, 27.3,
                   41.0, 50.0}) {
    CAPTURE(x);
    CHECK(std::fabs(si(x) - si_quadrature(x)) < 1e-12);
  }
}

TEST_CASE("si is odd and approaches pi/2") {
  for (double x : {0.4, 2.0, 4.5, 33.0, 500.0})
    CHECK(si(-x) == -si(x));
  CHECK(std::fabs(si(1e8) - kPi / 2) < 1e-7);
  CHECK(std::fabs(si(1e4) - kPi / 2) < 1e-3);
}

TEST_CASE("si branch switch at |x| = 4 is seamless") {
  // the slope sin(4)/4 accounts for the whole step across the seam
  const double step = si(4.0 + 1e-9) - si(4.0 - 1e-9);
  CHECK(std::fabs(step - 2e-9 * std::sin(4.0) / 4.0) < 1e-12);
}

TEST_CASE("si_pair_approx step values") {
  // a = 0.3 pi: band index m = 0, every n is past the band
  CHECK(si_pair_approx(1, 0.3 * kPi) == 0.0);
  CHECK(si_pair_approx(7, 0.3 * kPi) == 0.0);
  // a = 2.3 pi: m = 2
  CHECK(si_pair_approx(1, 2.3 * kPi) == kPi);
  CHECK(si_pair_approx(2, 2.3 * kPi) ==
        doctest::Approx(kPi / 2 + 0.3 * kPi).epsilon(1e-14));
  CHECK(si_pair_approx(3, 2.3 * kPi) == 0.0);
  CHECK(si_pair_approx(100, 2.3 * kPi) == 0.0);
}

TEST_CASE("si_pair_approx error profile against the true difference") {
  const double a = 2.3 * kPi;
  auto true_pair = [a](int n) { return si(n * kPi + a) - si(n * kPi - a); };
  // the n = 1 error is the worst one and exceeds 0.2
  const double e1 = std::fabs(si_pair_approx(1, a) - true_pair(1));
  CHECK(e1 > 0.2);
  CHECK(e1 < 0.25);
  double worst_tail = 0.0, worst_far = 0.0;
  for (int n = 2; n <= 200; ++n) {
    const double e = std::fabs(si_pair_approx(n, a) - true_pair(n));
    worst_tail = std::max(worst_tail, e);
    if (n >= 45) worst_far = std::max(worst_far, e);
  }
  CHECK(worst_tail < 0.1);
  CHECK(worst_far < 1e-3);
}

TEST_CASE("si_pair_approx rejects bad arguments") {
  CHECK_THROWS_AS((void)si_pair_approx(0, 1.0), demonbox::ConfigError);
  CHECK_THROWS_AS((void)si_pair_approx(3, 0.0), demonbox::ConfigError);
  CHECK_THROWS_AS((void)si_pair_approx(3, -2.0), demonbox::ConfigError);
}
