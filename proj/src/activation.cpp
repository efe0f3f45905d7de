#include "demonbox/activation.hpp"

#include <cmath>

#include "demonbox/constants.hpp"
#include "demonbox/errors.hpp"

namespace demonbox {
namespace {

double theta(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? 0.0 : 0.5); }
double sgn(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

}  // namespace

void ActivationSpec::validate() const {
  if (!(p_ref > 0.0) || !std::isfinite(p_ref))
    throw ConfigError("activation: p_ref must be finite and > 0");
  if (!(p_uv > p_ref))
    throw ConfigError("activation: p_uv must exceed p_ref");
  if (!std::isfinite(strength))
    throw ConfigError("activation: strength must be finite");
}

double activation_value(double p, const ActivationSpec& spec) {
  const double ap = std::fabs(p);
  const double below_ref = theta(spec.p_ref - ap);
  const double past_ref = theta(ap - spec.p_ref);
  const double past_uv = spec.finite_uv() ? theta(ap - spec.p_uv) : 0.0;
  const double f_minus = 0.5 * (below_ref - past_ref + past_uv);
  const double f_plus = 0.5 * (below_ref + past_ref - past_uv);
  return f_minus * sgn(p) + f_plus;
}

std::complex<double> fourier_value(double y, const ActivationSpec& spec) {
  if (y == 0.0)
    throw NumericsError("fourier_value: kernel is singular at y = 0");
  std::complex<double> num = 1.0 - 2.0 * std::cos(spec.p_ref * y);
  if (spec.finite_uv())
    num += std::exp(std::complex<double>(0.0, spec.p_uv * y));
  return num / std::complex<double>(0.0, 2.0 * kPi * y);
}

std::complex<double> lattice_kernel(int n, double kappa_r, double kappa_d) {
  if (!(kappa_r > 0.0 && kappa_r < kappa_d && kappa_d <= kPi))
    throw ConfigError("lattice_kernel: need 0 < kappa_r < kappa_d <= pi");
  if (n == 0) return {kappa_d / (2.0 * kPi), 0.0};
  const std::complex<double> num =
      2.0 * std::cos(kappa_r * n) - 1.0 -
      std::exp(std::complex<double>(0.0, -kappa_d * n));
  return num / std::complex<double>(0.0, 2.0 * kPi * n);
}

}  // namespace demonbox
