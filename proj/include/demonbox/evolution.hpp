#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <vector>

#include "demonbox/lattice.hpp"

namespace demonbox {

// Initial wave packets on the lattice.  Boltzmann states superpose free-box
// modes with amplitudes exp(-beta (q^2 - 1)); uniform spreads equally over
// all sites; explicit takes a caller-supplied vector (normalized on use).
struct InitialStateSpec {
  enum class Kind { boltzmann, uniform, explicit_vector };

  Kind kind = Kind::boltzmann;
  double beta = 0.01;
  Eigen::VectorXcd vector;

  static InitialStateSpec boltzmann(double beta);
  static InitialStateSpec uniform();
  static InitialStateSpec explicit_state(Eigen::VectorXcd v);
};

Eigen::VectorXcd initial_state(const InitialStateSpec& spec, int half_sites);

std::vector<double> uniform_time_grid(double tau_max, int steps);

// State history; row k holds the wave function at taus[k].
struct WaveTrace {
  std::vector<double> taus;
  Eigen::MatrixXcd states;

  int half_sites() const {
    return (static_cast<int>(states.cols()) - 1) / 2;
  }
  // columns: tau, tau_e3 (tau / 1e3), then |psi_n|^2 per site
  void write_density_csv(std::ostream& os) const;
};

// Spectral propagation psi(tau) = V exp(-i tau Lambda) V^dagger psi0,
// evaluated independently (and in parallel) for every requested time.
WaveTrace propagate(const EigenSystem& sys, const Eigen::VectorXcd& psi0,
                    std::vector<double> taus, int threads = 0);

}  // namespace demonbox
