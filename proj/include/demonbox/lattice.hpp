#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <vector>

#include "demonbox/constants.hpp"

namespace demonbox {

// Tight-binding discretization on sites -N..N with Dirichlet walls one site
// outside, in units of the hopping energy.  kappa_r and kappa_d are the
// activation band edges expressed as lattice wavenumbers; kappa_d doubles as
// the ultraviolet cutoff of the discretized kernel.
struct LatticeConfig {
  int half_sites = 124;     // N
  double upsilon0 = 0.1;    // rescaled interaction strength
  double kappa_r = kPi / 4;
  double kappa_d = kPi / 2;

  int dim() const { return 2 * half_sites + 1; }
  void validate() const;
};

// Dense Hermitian Hamiltonian with site-index accessors.
class HamiltonianMatrix {
 public:
  HamiltonianMatrix(Eigen::MatrixXcd mat, int half_sites);

  int half_sites() const { return half_sites_; }
  int dim() const { return static_cast<int>(mat_.rows()); }
  const Eigen::MatrixXcd& matrix() const { return mat_; }
  std::complex<double> at_sites(int n, int np) const;
  double hermiticity_defect() const;  // max |H - H^dagger|

 private:
  Eigen::MatrixXcd mat_;
  int half_sites_;
};

// Kinetic part 2 delta_{nn'} - delta_{n-1,n'} - delta_{n+1,n'} plus the
// interaction row and column through site 0:
//   upsilon0 * (delta_{n',0} w(n) + delta_{n,0} conj(w(n'))).
HamiltonianMatrix assemble_hamiltonian(const LatticeConfig& cfg);

// Interaction rows/column alone (kinetic part zeroed); used for <V>.
Eigen::MatrixXcd interaction_part(const LatticeConfig& cfg);

struct EigenSystem {
  Eigen::VectorXd values;    // ascending
  Eigen::MatrixXcd vectors;  // column m pairs with values[m]

  void save(std::ostream& os) const;  // little-endian binary dump
  static EigenSystem load(std::istream& is);
};

EigenSystem eigendecompose(const HamiltonianMatrix& h);

// Closed-form spectrum of the free chain (upsilon0 = 0), ascending:
// 2 (1 - cos(q pi / (2N + 2))), q = 1..2N+1.
std::vector<double> free_chain_spectrum(int half_sites);

// Dense (energy + i eps - H)^{-1}; eps may be negative for the advanced
// branch.  Refuses systems with reciprocal condition below 1e-12.
Eigen::MatrixXcd direct_resolvent(const Eigen::MatrixXcd& h, double energy,
                                  double eps);

// Largest kappa in (0, pi] where the band 4 sin^2(kappa/2) stays within a
// relative tolerance of the parabola kappa^2.
double dispersion_parabolic_range(double tol);

// Free-box eigenvector q = 1..2N+1 on sites -N..N, unit norm:
// sin(q pi (n + N + 1) / (2N + 2)).
Eigen::VectorXd free_box_mode(int q, int half_sites);

// All free-box modes as columns q = 1..2N+1; orthogonal matrix.
Eigen::MatrixXd free_box_mode_matrix(int half_sites);

}  // namespace demonbox
