#pragma once

#include <string>
#include <vector>

#include "demonbox/activation.hpp"
#include "demonbox/constants.hpp"
#include "demonbox/evolution.hpp"
#include "demonbox/greens.hpp"
#include "demonbox/lattice.hpp"

namespace demonbox {

// Every tunable of the batch runs, flat key = value on disk.  Defaults
// reproduce the reference run: N = 124, upsilon0 = 0.1, kappa_r = pi/4,
// kappa_d = pi/2, Boltzmann beta = 0.01, 2001 times up to tau = 2e4.
struct RunConfig {
  std::string version;

  // lattice
  int half_sites = 124;
  double upsilon0 = 0.1;
  double kappa_r = kPi / 4;
  double kappa_d = kPi / 2;

  // initial state
  std::string initial = "boltzmann";  // boltzmann | uniform
  double beta = 0.01;

  // time grid
  double tau_max = 20000.0;
  int tau_steps = 2001;

  // continuum container
  double box_length = kPi;
  double hbar = 1.0;
  int series_terms = 4096;
  double p_ref = 4.6;
  double p_uv = std::numeric_limits<double>::infinity();
  double v0 = 1.0;
  std::string integral_mode = "exact";  // exact | approx

  // pole scan window
  double e_min = 0.05;
  double e_max = 30.0;

  // entropy sweep
  std::string betas = "0.5,0.01,0.005";

  // greens grid output
  double greens_energy = 13.0;
  int greens_points = 21;

  // dispersion probe
  double dispersion_tol = 0.05;

  // execution
  int threads = 0;  // 0 = hardware
  std::string out_dir = ".";
  bool write_density = false;
  bool write_eigensystem = false;

  // filled by sweep manifests; empty means every branch completed
  std::string sweep_failures;

  RunConfig();

  void validate() const;
  LatticeConfig lattice() const;
  ContainerSpec container() const;
  ActivationSpec activation() const;
  InitialStateSpec initial_spec() const;
  IntegralMode mode() const;
  std::vector<double> beta_list() const;
  std::vector<double> time_grid() const;
};

// "key = value" lines, '#' comments, unknown or repeated keys rejected with
// their line number.
RunConfig parse_config_text(const std::string& text);
RunConfig load_config_file(const std::string& path);

// Single-key assignment through the same registry (CLI flag overrides).
void apply_config_value(RunConfig& cfg, const std::string& key,
                        const std::string& value);

// Every resolved parameter, one per line; parses back into an equal config.
std::string manifest_text(const RunConfig& cfg);

}  // namespace demonbox
