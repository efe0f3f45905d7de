#pragma once

#include <string>
#include <vector>

#include "demonbox/config.hpp"
#include "demonbox/diagnostics.hpp"
#include "demonbox/greens.hpp"

namespace demonbox {

// Batch entry points behind the CLI subcommands.  Each writes its outputs
// plus a manifest.txt (the fully resolved config) under cfg.out_dir and
// reports the files it created.

struct EvolveResult {
  ObservableSeries series;
  std::vector<std::string> files;
};
EvolveResult run_evolve(const RunConfig& cfg);

struct PolesResult {
  PoleReport report;
  std::vector<std::string> files;
};
PolesResult run_poles(const RunConfig& cfg);

struct SweepResult {
  std::vector<double> taus;
  std::vector<std::string> labels;            // betas that completed
  std::vector<std::vector<double>> entropy;   // one column per label
  std::vector<std::string> failures;          // flagged in the manifest too
  std::vector<std::string> files;
};
SweepResult run_sweep(const RunConfig& cfg);

struct DispersionResult {
  double kappa_max = 0.0;
  std::vector<std::string> files;
};
DispersionResult run_dispersion(const RunConfig& cfg);

struct GreensResult {
  std::vector<std::string> files;
};
GreensResult run_greens(const RunConfig& cfg);

}  // namespace demonbox
