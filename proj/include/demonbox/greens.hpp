#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <iosfwd>
#include <memory>
#include <vector>

#include "demonbox/activation.hpp"
#include "demonbox/constants.hpp"
#include "demonbox/quadrature.hpp"

namespace demonbox {

using Complex = std::complex<double>;

// Two-point Green's function at a formal energy argument.
using GreensFn = std::function<Complex(double, double, double)>;  // (x, x', E)

// Dirichlet box of length L centred at 0 (walls at +-L/2), particle mass 1.
// Eigenenergies E_n = (hbar n pi / L)^2 / 2 for n >= 1.
struct ContainerSpec {
  double box_length = kPi;
  double hbar = 1.0;
  int series_terms = 4096;  // truncation M for eigenfunction sums

  void validate() const;
  double wavenumber(int n) const { return n * kPi / box_length; }
  double eigen_energy(int n) const {
    const double k = wavenumber(n);
    return 0.5 * hbar * hbar * k * k;
  }
};

// Free box resolvent by eigenfunction series.  The energy-independent part is
// summed in closed form, which upgrades the tail falloff from 1/E_n to
// 1/E_n^2; terms whose eigenfunction product vanishes at (x, x') are dropped,
// so eigenenergies are rejected only when their residue is actually nonzero.
Complex g0_box(double x, double xp, double E, const ContainerSpec& spec);

// Closed forms: the E = 0 resolvent, and the origin diagonal
// tan(L sqrt(2E)/2hbar) / (hbar sqrt(2E)).
double g0_box_static(double x, double xp, const ContainerSpec& spec);
Complex g0_box_center(double E, const ContainerSpec& spec);

// Resolvent with an added delta barrier v0 * delta(x) at the origin; rank-1
// closed form on top of any unperturbed resolvent g0.
Complex g_delta(const GreensFn& g0, double x, double xp, double E, double v0);

enum class IntegralMode {
  exact,   // sine-integral coefficients evaluated exactly
  approx,  // step-function coefficients, cotangent closed form for q1
};

// Overlap integrals of the momentum-filter kernel against the box resolvent.
// Only defined for an infinite UV cutoff (the finite-cutoff kernel breaks
// q2 = 0 and the sine-integral reduction).
struct ContainerIntegrals {
  std::function<Complex(double, double)> p1;  // (x, E); p1(0, E) = 0
  std::function<Complex(double, double)> p2;  // = -p1 for this kernel
  std::function<Complex(double)> q1;
  Complex q2{0.0, 0.0};  // vanishes identically for this kernel

  double band_a = 0.0;        // a = p_ref L / 2
  int band_index = 0;         // m = floor(a / pi)
  double band_fraction = 0.0; // a/pi - m
  double extra_pole_energy = 0.0;  // E_{2m}; 0 when m = 0
};

ContainerIntegrals container_integrals(const ContainerSpec& spec,
                                       const ActivationSpec& act,
                                       IntegralMode mode);

// Closed-form resolvent for the hermitized momentum-filter point interaction,
// for any unperturbed resolvent and filter kernel vtilde (strength included),
// with integrals discretized on `quad`.  The interaction kernel in position
// space is W(y, y') = delta(y) vtilde(y') + vtilde(-y) delta(y').
Complex g_p_general(const GreensFn& g0,
                    const std::function<Complex(double)>& vtilde, double x,
                    double xp, double E, const QuadratureGrid& quad);

// Same resolvent specialised to the box, where q2 = 0 collapses the general
// expression to four terms over the shared denominator 1 - g0(0,0) q1.
Complex g_p_box(double x, double xp, double E, const ContainerSpec& spec,
                const ActivationSpec& act, IntegralMode mode);

// Loop-friendly form reusing a prebuilt integral table.
Complex g_p_box(double x, double xp, double E, const ContainerSpec& spec,
                const ContainerIntegrals& integrals);

struct SymmetrySplit {
  Complex symmetric;      // (g(x,x') + g(x',x)) / 2
  Complex antisymmetric;  // (g(x,x') - g(x',x)) / 2
};
SymmetrySplit antisymmetric_part(const GreensFn& g, double x, double xp,
                                 double E);

// Resolvent checks for a dense Hamiltonian at E +- i eps:
//   adjoint_defect       max |conj(G+(x',x)) - G-(x,x')|
//   symmetry_defect      max |G+(x,x') - G+(x',x)|   (zero for real symmetric H)
//   asymmetry_frobenius  ||G+ - transpose(G+)||_F
struct AdjointSymmetryReport {
  double adjoint_defect = 0.0;
  double symmetry_defect = 0.0;
  double asymmetry_frobenius = 0.0;
};
AdjointSymmetryReport adjoint_symmetry_check(const Eigen::MatrixXcd& h,
                                             double energy, double eps);

// Roots of 1 - g0(0,0,E) q1(E) = 0 inside a window, using the approximate
// (cotangent) q1.  Base-function poles partition the search; the band-edge
// energy E_{2m} is flagged and never reported as a root.
struct PoleRoot {
  double energy = 0.0;
  double residual = 0.0;      // |1 - g0(0,0) q1| after polish
  double bracket_width = 0.0;
};

struct PoleReport {
  double e_lo = 0.0;
  double e_hi = 0.0;
  std::vector<PoleRoot> roots;     // ascending
  std::vector<double> excluded;    // tan/cot singularities inside the window
  double flagged_extra_pole = 0.0; // E_{2m}; 0 when m = 0

  void write(std::ostream& os) const;
  static PoleReport read(std::istream& is);
};

PoleReport demon_pole_scan(double e_lo, double e_hi,
                           const ContainerSpec& spec,
                           const ActivationSpec& act,
                           double bisect_tol = 1e-12, int threads = 0);

}  // namespace demonbox
