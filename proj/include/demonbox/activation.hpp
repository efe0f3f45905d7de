#pragma once

#include <complex>
#include <limits>

namespace demonbox {

// Momentum-selective point interaction: unit response on the slow forward
// band (0, p_ref) and the fast backward band (-p_uv, -p_ref), zero elsewhere.
// p_uv = infinity disables the ultraviolet cleaving.
struct ActivationSpec {
  double p_ref = 4.6;
  double p_uv = std::numeric_limits<double>::infinity();
  double strength = 1.0;  // overall factor V0, real

  bool finite_uv() const { return std::isfinite(p_uv); }
  void validate() const;
};

// Band indicator built from unit steps with the midpoint convention at the
// edges, so the result is always one of {0, 1/2, 1}.
double activation_value(double p, const ActivationSpec& spec);

// Position kernel (1/2pi) \int dp e^{-ipy} V_act(p).  Singular at y = 0;
// lattice_kernel owns that limit.
std::complex<double> fourier_value(double y, const ActivationSpec& spec);

// Dimensionless site kernel w(n) for Hamiltonian assembly, with the band
// edges expressed as wavenumbers 0 < kappa_r < kappa_d <= pi.  n = 0 returns
// the continuum limit kappa_d/(2pi).  Satisfies w(-n) = conj(w(n)).
std::complex<double> lattice_kernel(int n, double kappa_r, double kappa_d);

}  // namespace demonbox
