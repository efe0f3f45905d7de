#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <optional>
#include <vector>

#include "demonbox/evolution.hpp"
#include "demonbox/lattice.hpp"

namespace demonbox {

// Shannon entropy (natural log) of the occupation of the free-box modes,
// sigma = -sum_q rho_q ln rho_q with rho_q = |<mode_q | psi>|^2.
double shannon_entropy(const Eigen::VectorXcd& psi, int half_sites);

// Left/right probabilities and conditional side energies; site 0 contributes
// half its weight to each side (amplitude scaled by 1/sqrt(2) in the side
// projection).  A side energy is undefined when its probability is < 1e-12.
struct LateralObservables {
  double p_left = 0.0;
  double p_right = 0.0;
  std::optional<double> e_left;
  std::optional<double> e_right;
};
LateralObservables lateral_observables(const Eigen::VectorXcd& psi,
                                       const HamiltonianMatrix& h);

// <V>(tau) and its trapezoidal running time average along a trace;
// v_timeavg(0) = v_avg(0).
struct WorkSeries {
  std::vector<double> v_avg;
  std::vector<double> v_timeavg;
};
WorkSeries potential_work(const WaveTrace& trace,
                          const Eigen::MatrixXcd& interaction);

// Clausius bookkeeping: the demon dissipates delta_s_demon = delta_v / T,
// and the total balance is delta_s_total = delta_s_packet + delta_s_demon.
struct EntropyBudget {
  double delta_s_demon = 0.0;
  double delta_s_total = 0.0;
};
EntropyBudget entropy_budget(double delta_s_packet, double delta_v,
                             double inv_temperature);

// Two-compartment sorting bound: -(p_right/t_right + p_left/t_left) *
// volume_factor * ln 2.  Temperatures must be positive.
double two_compartment_entropy_drop(double p_right, double p_left,
                                    double t_right, double t_left,
                                    double volume_factor);

// Talbot revival times of the parabolic band on 2N+1 sites.
struct RevivalEstimate {
  double tau_full = 0.0;
  double tau_quarter = 0.0;
};
RevivalEstimate revival_estimate(int half_sites);

// Least-squares slope of ln rho_q against -(q^2 - 1), restricted to modes
// with rho_q > 1e-12; needs at least 3 such modes.  Returns beta.
double effective_beta_fit(const Eigen::VectorXcd& psi, int half_sites);

// Entropy alone along a trace; the cheap core of beta sweeps.
std::vector<double> entropy_series(const WaveTrace& trace, int threads = 0);

// Per-time observables of a trace; side energies are NaN where undefined.
struct ObservableSeries {
  std::vector<double> tau, entropy, p_left, p_right, e_left, e_right, v_avg,
      v_timeavg;

  void write_csv(std::ostream& os) const;
};
ObservableSeries compute_observables(const WaveTrace& trace,
                                     const HamiltonianMatrix& h,
                                     const Eigen::MatrixXcd& interaction,
                                     int threads = 0);

}  // namespace demonbox
