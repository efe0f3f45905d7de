#pragma once

#include <stdexcept>
#include <string>

namespace demonbox {

// Bad user input: config files, CLI values, invalid parameter combinations.
// The CLI maps this family to exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Numerical failure at runtime: pole hits, singular solves, unconverged scans.
// The CLI maps this family to exit code 3.
struct NumericsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Energy argument landed on (or within tolerance of) a spectral pole whose
// residue does not vanish at the requested evaluation point.
struct PoleError : NumericsError {
  int mode;       // index n of the offending eigenenergy
  double energy;  // requested energy

  PoleError(const std::string& msg, int mode_, double energy_)
      : NumericsError(msg), mode(mode_), energy(energy_) {}
};

}  // namespace demonbox
