#include "demonbox/evolution.hpp"

#include <cmath>
#include <ostream>

#include "demonbox/errors.hpp"
#include "demonbox/parallel.hpp"
#include "demonbox/textio.hpp"

namespace demonbox {

InitialStateSpec InitialStateSpec::boltzmann(double beta) {
  InitialStateSpec s;
  s.kind = Kind::boltzmann;
  s.beta = beta;
  return s;
}

InitialStateSpec InitialStateSpec::uniform() {
  InitialStateSpec s;
  s.kind = Kind::uniform;
  return s;
}

InitialStateSpec InitialStateSpec::explicit_state(Eigen::VectorXcd v) {
  InitialStateSpec s;
  s.kind = Kind::explicit_vector;
  s.vector = std::move(v);
  return s;
}

Eigen::VectorXcd initial_state(const InitialStateSpec& spec, int half_sites) {
  if (half_sites < 1)
    throw ConfigError("initial_state: half_sites must be >= 1");
  const int d = 2 * half_sites + 1;
  switch (spec.kind) {
    case InitialStateSpec::Kind::boltzmann: {
      if (!std::isfinite(spec.beta))
        throw ConfigError("initial_state: beta must be finite");
      Eigen::VectorXd acc = Eigen::VectorXd::Zero(d);
      for (int q = 1; q <= d; ++q) {
        const double w =
            std::exp(-spec.beta * (static_cast<double>(q) * q - 1.0));
        if (w == 0.0) continue;
        acc += w * free_box_mode(q, half_sites);
      }
      const double norm = acc.norm();
      if (norm == 0.0 || !std::isfinite(norm))
        throw NumericsError(
            "initial_state: Boltzmann weights under- or overflowed");
      return (acc / norm).cast<std::complex<double>>();
    }
    case InitialStateSpec::Kind::uniform: {
      Eigen::VectorXcd v =
          Eigen::VectorXcd::Constant(d, 1.0 / std::sqrt(double(d)));
      return v;
    }
    case InitialStateSpec::Kind::explicit_vector: {
      if (spec.vector.size() != d)
        throw ConfigError("initial_state: explicit vector has wrong length");
      const double norm = spec.vector.norm();
      if (norm < 1e-300)
        throw ConfigError("initial_state: explicit vector is zero");
      return spec.vector / norm;
    }
  }
  throw ConfigError("initial_state: unknown kind");
}

std::vector<double> uniform_time_grid(double tau_max, int steps) {
  if (!(tau_max >= 0.0) || !std::isfinite(tau_max))
    throw ConfigError("time grid: tau_max must be finite and >= 0");
  if (steps < 1) throw ConfigError("time grid: steps must be >= 1");
  std::vector<double> taus(steps);
  if (steps == 1) {
    taus[0] = 0.0;
    return taus;
  }
  for (int k = 0; k < steps; ++k)
    taus[k] = tau_max * static_cast<double>(k) / (steps - 1);
  return taus;
}

WaveTrace propagate(const EigenSystem& sys, const Eigen::VectorXcd& psi0,
                    std::vector<double> taus, int threads) {
  const Eigen::Index d = sys.values.size();
  if (d == 0 || sys.vectors.rows() != d || sys.vectors.cols() != d)
    throw ConfigError("propagate: malformed eigensystem");
  if (psi0.size() != d)
    throw ConfigError("propagate: state length does not match eigensystem");

  const Eigen::VectorXcd coeff = sys.vectors.adjoint() * psi0;
  WaveTrace trace;
  trace.states.resize(static_cast<Eigen::Index>(taus.size()), d);
  trace.taus = std::move(taus);

  parallel_for(trace.taus.size(), threads, [&](std::size_t k) {
    const double tau = trace.taus[k];
    Eigen::VectorXcd rot(d);
    for (Eigen::Index m = 0; m < d; ++m)
      rot(m) = std::polar(1.0, -sys.values(m) * tau) * coeff(m);
    trace.states.row(k) = (sys.vectors * rot).transpose();
  });
  return trace;
}

void WaveTrace::write_density_csv(std::ostream& os) const {
  const int n = half_sites();
  os << "tau,tau_e3";
  for (int s = -n; s <= n; ++s) os << ",site_" << s;
  os << '\n';
  for (std::size_t k = 0; k < taus.size(); ++k) {
    os << fmt_double(taus[k]) << ',' << fmt_double(taus[k] / 1e3);
    for (Eigen::Index c = 0; c < states.cols(); ++c)
      os << ',' << fmt_double(std::norm(states(static_cast<Eigen::Index>(k), c)));
    os << '\n';
  }
}

}  // namespace demonbox
