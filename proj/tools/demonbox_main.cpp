#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "demonbox/errors.hpp"
#include "demonbox/runner.hpp"
#include "demonbox/textio.hpp"
#include "demonbox/version.hpp"

namespace {

// Flag values are staged as (key, value) text and routed through the config
// registry, so flags and files obey identical parsing rules and "not passed"
// never clobbers a file setting.
struct Overrides {
  std::string config_path;
  std::vector<std::pair<std::string, std::string>> values;
};

void add_override(CLI::App* sub, Overrides& ov, const std::string& flag,
                  std::string key, const std::string& help) {
  sub->add_option_function<std::string>(
      flag,
      [&ov, key = std::move(key)](const std::string& v) {
        ov.values.emplace_back(key, v);
      },
      help);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"demonbox: quantum wave dynamics in a box with a "
               "momentum-filtering point interaction"};
  app.set_version_flag("--version", demonbox::kVersion);
  app.require_subcommand(1);

  Overrides ov;
  app.add_option("--config", ov.config_path, "key = value config file");

  auto* evolve = app.add_subcommand(
      "evolve", "propagate an initial state and write observables.csv");
  auto* poles = app.add_subcommand(
      "poles", "scan the resonance condition for roots, write poles.txt");
  auto* sweep = app.add_subcommand(
      "sweep", "entropy traces for several betas, write sweep.csv");
  auto* dispersion =
      app.add_subcommand("dispersion", "parabolic range of the lattice band");
  auto* greens = app.add_subcommand(
      "greens", "tabulate perturbed resolvents on a grid, write greens.csv");

  for (CLI::App* sub : {evolve, poles, sweep, dispersion, greens}) {
    add_override(sub, ov, "--half-sites", "half_sites", "lattice half size N");
    add_override(sub, ov, "--upsilon0", "upsilon0", "interaction strength");
    add_override(sub, ov, "--kappa-r", "kappa_r", "reference wavenumber");
    add_override(sub, ov, "--kappa-d", "kappa_d", "cutoff wavenumber");
    add_override(sub, ov, "--initial", "initial", "boltzmann | uniform");
    add_override(sub, ov, "--beta", "beta", "Boltzmann inverse temperature");
    add_override(sub, ov, "--tau-max", "tau_max", "final time");
    add_override(sub, ov, "--tau-steps", "tau_steps", "time grid points");
    add_override(sub, ov, "--box-length", "box_length", "container length L");
    add_override(sub, ov, "--hbar", "hbar", "action scale");
    add_override(sub, ov, "--series-terms", "series_terms",
                 "eigenfunction series truncation");
    add_override(sub, ov, "--p-ref", "p_ref", "reference momentum");
    add_override(sub, ov, "--p-uv", "p_uv",
                 "UV cutoff momentum or 'infinite'");
    add_override(sub, ov, "--v0", "v0", "continuum interaction strength");
    add_override(sub, ov, "--integral-mode", "integral_mode",
                 "exact | approx");
    add_override(sub, ov, "--e-min", "e_min", "pole window lower edge");
    add_override(sub, ov, "--e-max", "e_max", "pole window upper edge");
    add_override(sub, ov, "--betas", "betas", "comma list for sweep");
    add_override(sub, ov, "--greens-energy", "greens_energy",
                 "energy for the greens grid");
    add_override(sub, ov, "--greens-points", "greens_points",
                 "grid points per axis");
    add_override(sub, ov, "--dispersion-tol", "dispersion_tol",
                 "parabolic tolerance");
    add_override(sub, ov, "--threads", "threads", "worker threads, 0 = auto");
    add_override(sub, ov, "--out", "out_dir", "output directory");
    add_override(sub, ov, "--write-density", "write_density",
                 "also write density.csv (true/false)");
    add_override(sub, ov, "--write-eigensystem", "write_eigensystem",
                 "also write eigensystem.bin (true/false)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    demonbox::RunConfig cfg;
    if (!ov.config_path.empty())
      cfg = demonbox::load_config_file(ov.config_path);
    for (const auto& [key, value] : ov.values)
      demonbox::apply_config_value(cfg, key, value);
    cfg.validate();

    if (*evolve) {
      const demonbox::EvolveResult r = demonbox::run_evolve(cfg);
      for (const std::string& f : r.files) std::cout << "wrote " << f << '\n';
    } else if (*poles) {
      const demonbox::PolesResult r = demonbox::run_poles(cfg);
      std::cout << r.report.roots.size() << " root(s) in ["
                << demonbox::fmt_double(r.report.e_lo) << ", "
                << demonbox::fmt_double(r.report.e_hi) << "]\n";
      for (const std::string& f : r.files) std::cout << "wrote " << f << '\n';
    } else if (*sweep) {
      const demonbox::SweepResult r = demonbox::run_sweep(cfg);
      for (const std::string& fail : r.failures)
        std::cerr << "sweep branch failed: " << fail << '\n';
      for (const std::string& f : r.files) std::cout << "wrote " << f << '\n';
    } else if (*dispersion) {
      const demonbox::DispersionResult r = demonbox::run_dispersion(cfg);
      std::cout << "kappa_max = " << demonbox::fmt_double(r.kappa_max)
                << '\n';
      for (const std::string& f : r.files) std::cout << "wrote " << f << '\n';
    } else if (*greens) {
      const demonbox::GreensResult r = demonbox::run_greens(cfg);
      for (const std::string& f : r.files) std::cout << "wrote " << f << '\n';
    }
    return 0;
  } catch (const demonbox::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const demonbox::NumericsError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
}
