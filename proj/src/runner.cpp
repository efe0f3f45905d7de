#include "demonbox/runner.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "demonbox/errors.hpp"
#include "demonbox/parallel.hpp"
#include "demonbox/textio.hpp"

namespace demonbox {
namespace {

namespace fs = std::filesystem;

fs::path prepare_out_dir(const RunConfig& cfg) {
  const fs::path dir(cfg.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec)
    throw ConfigError("cannot create output directory '" + cfg.out_dir +
                      "': " + ec.message());
  return dir;
}

std::string write_text(const fs::path& dir, const std::string& name,
                       const std::string& body) {
  const fs::path p = dir / name;
  std::ofstream out(p, std::ios::binary);
  out << body;
  if (!out) throw ConfigError("cannot write file: " + p.string());
  return p.string();
}

std::string write_manifest(const fs::path& dir, const RunConfig& cfg) {
  return write_text(dir, "manifest.txt", manifest_text(cfg));
}

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream ss(csv);
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    out.push_back(b == std::string::npos ? "" : item.substr(b, e - b + 1));
  }
  return out;
}

std::string sanitize(std::string s) {
  for (char& c : s)
    if (c == ',' || c == '#' || c == '\n' || c == '=') c = ' ';
  return s;
}

}  // namespace

EvolveResult run_evolve(const RunConfig& cfg) {
  cfg.validate();
  const fs::path dir = prepare_out_dir(cfg);

  const HamiltonianMatrix h = assemble_hamiltonian(cfg.lattice());
  const EigenSystem sys = eigendecompose(h);
  const Eigen::VectorXcd psi0 =
      initial_state(cfg.initial_spec(), cfg.half_sites);
  const WaveTrace trace =
      propagate(sys, psi0, cfg.time_grid(), cfg.threads);
  const Eigen::MatrixXcd vmat = interaction_part(cfg.lattice());

  EvolveResult res;
  res.series = compute_observables(trace, h, vmat, cfg.threads);

  {
    std::ostringstream csv;
    res.series.write_csv(csv);
    res.files.push_back(write_text(dir, "observables.csv", csv.str()));
  }
  if (cfg.write_density) {
    std::ostringstream csv;
    trace.write_density_csv(csv);
    res.files.push_back(write_text(dir, "density.csv", csv.str()));
  }
  if (cfg.write_eigensystem) {
    const fs::path p = dir / "eigensystem.bin";
    std::ofstream out(p, std::ios::binary);
    sys.save(out);
    if (!out) throw ConfigError("cannot write file: " + p.string());
    res.files.push_back(p.string());
  }
  res.files.push_back(write_manifest(dir, cfg));
  return res;
}

PolesResult run_poles(const RunConfig& cfg) {
  cfg.validate();
  const fs::path dir = prepare_out_dir(cfg);
  PolesResult res;
  res.report = demon_pole_scan(cfg.e_min, cfg.e_max, cfg.container(),
                               cfg.activation(), 1e-12, cfg.threads);
  std::ostringstream body;
  res.report.write(body);
  res.files.push_back(write_text(dir, "poles.txt", body.str()));
  res.files.push_back(write_manifest(dir, cfg));
  return res;
}

SweepResult run_sweep(const RunConfig& cfg) {
  cfg.validate();
  const fs::path dir = prepare_out_dir(cfg);
  const std::vector<double> beta_values = cfg.beta_list();
  const std::vector<std::string> tokens = split_list(cfg.betas);

  const HamiltonianMatrix h = assemble_hamiltonian(cfg.lattice());
  const EigenSystem sys = eigendecompose(h);
  const std::vector<double> taus = cfg.time_grid();

  // one worker per beta; the eigensystem is shared read-only and each branch
  // fills its own slot, so the merge is order-independent
  std::vector<std::vector<double>> columns(beta_values.size());
  std::vector<std::string> errors(beta_values.size());
  parallel_for(beta_values.size(), cfg.threads, [&](std::size_t i) {
    try {
      const Eigen::VectorXcd psi0 = initial_state(
          InitialStateSpec::boltzmann(beta_values[i]), cfg.half_sites);
      const WaveTrace trace = propagate(sys, psi0, taus, 1);
      columns[i] = entropy_series(trace, 1);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });

  SweepResult res;
  res.taus = taus;
  for (std::size_t i = 0; i < beta_values.size(); ++i) {
    if (errors[i].empty()) {
      res.labels.push_back(tokens[i]);
      res.entropy.push_back(std::move(columns[i]));
    } else {
      res.failures.push_back("beta=" + tokens[i] + ": " +
                             sanitize(errors[i]));
    }
  }

  std::ostringstream csv;
  csv << "tau,tau_e3";
  for (const std::string& label : res.labels) csv << ",S[beta=" << label << ']';
  csv << '\n';
  for (std::size_t k = 0; k < taus.size(); ++k) {
    csv << fmt_double(taus[k]) << ',' << fmt_double(taus[k] / 1e3);
    for (const auto& col : res.entropy) csv << ',' << fmt_double(col[k]);
    csv << '\n';
  }
  res.files.push_back(write_text(dir, "sweep.csv", csv.str()));

  RunConfig stamped = cfg;
  std::string joined;
  for (const std::string& f : res.failures) {
    if (!joined.empty()) joined += "; ";
    joined += f;
  }
  stamped.sweep_failures = joined;
  res.files.push_back(write_manifest(dir, stamped));
  return res;
}

DispersionResult run_dispersion(const RunConfig& cfg) {
  cfg.validate();
  const fs::path dir = prepare_out_dir(cfg);
  DispersionResult res;
  res.kappa_max = dispersion_parabolic_range(cfg.dispersion_tol);
  std::string body = "tol " + fmt_double(cfg.dispersion_tol) + "\n" +
                     "kappa_max " + fmt_double(res.kappa_max) + "\n";
  res.files.push_back(write_text(dir, "dispersion.txt", body));
  res.files.push_back(write_manifest(dir, cfg));
  return res;
}

GreensResult run_greens(const RunConfig& cfg) {
  cfg.validate();
  if (cfg.activation().finite_uv())
    throw ConfigError(
        "greens: finite p_uv is not supported for container evaluation; set "
        "p_uv = infinite");
  const fs::path dir = prepare_out_dir(cfg);
  const ContainerSpec spec = cfg.container();
  const ActivationSpec act = cfg.activation();
  const ContainerIntegrals ci = container_integrals(spec, act, cfg.mode());
  const double E = cfg.greens_energy;
  const int np = cfg.greens_points;

  std::vector<double> xs(np);
  for (int i = 0; i < np; ++i)
    xs[i] = spec.box_length * (static_cast<double>(i) / (np - 1) - 0.5);

  // shared factors of the four-term closed form
  const Complex g00 = g0_box(0.0, 0.0, E, spec);
  const Complex q1 = ci.q1(E);
  const Complex den = 1.0 - g00 * q1;
  if (std::abs(den) == 0.0)
    throw NumericsError("greens: resonance denominator vanished");
  const Complex delta_den = 1.0 + act.strength * g00;
  if (std::abs(delta_den) == 0.0)
    throw NumericsError("greens: delta-barrier denominator vanished");
  std::vector<Complex> p1(np), gto0(np), gfrom0(np);
  for (int i = 0; i < np; ++i) {
    p1[i] = ci.p1(xs[i], E);
    gto0[i] = g0_box(xs[i], 0.0, E, spec);
    gfrom0[i] = g0_box(0.0, xs[i], E, spec);
  }

  Eigen::MatrixXcd gp(np, np), gd(np, np);
  parallel_for(static_cast<std::size_t>(np), cfg.threads, [&](std::size_t i) {
    for (int j = 0; j < np; ++j) {
      const Complex g0ij = g0_box(xs[i], xs[j], E, spec);
      gp(static_cast<Eigen::Index>(i), j) =
          g0ij + (p1[i] * gfrom0[j] - gto0[i] * p1[j]) / den +
          gto0[i] * gfrom0[j] * q1 / den - p1[i] * g00 * p1[j] / den;
      gd(static_cast<Eigen::Index>(i), j) =
          g0ij - act.strength * gto0[i] * gfrom0[j] / delta_den;
    }
  });

  std::ostringstream csv;
  csv << "x,xp,gp_re,gp_im,gp_sym_re,gp_sym_im,gp_anti_re,gp_anti_im,"
         "gdelta_re,gdelta_im\n";
  for (int i = 0; i < np; ++i)
    for (int j = 0; j < np; ++j) {
      const Complex v = gp(i, j);
      const Complex sym = 0.5 * (gp(i, j) + gp(j, i));
      const Complex anti = 0.5 * (gp(i, j) - gp(j, i));
      csv << fmt_double(xs[i]) << ',' << fmt_double(xs[j]) << ','
          << fmt_double(v.real()) << ',' << fmt_double(v.imag()) << ','
          << fmt_double(sym.real()) << ',' << fmt_double(sym.imag()) << ','
          << fmt_double(anti.real()) << ',' << fmt_double(anti.imag()) << ','
          << fmt_double(gd(i, j).real()) << ',' << fmt_double(gd(i, j).imag())
          << '\n';
    }

  GreensResult res;
  res.files.push_back(write_text(dir, "greens.csv", csv.str()));
  res.files.push_back(write_manifest(dir, cfg));
  return res;
}

}  // namespace demonbox
