#include "demonbox/diagnostics.hpp"

#include <cmath>
#include <ostream>

#include "demonbox/errors.hpp"
#include "demonbox/parallel.hpp"
#include "demonbox/textio.hpp"

namespace demonbox {
namespace {

constexpr double kLn2 = 0.69314718055994530942;

Eigen::VectorXcd side_projection(const Eigen::VectorXcd& psi, int half_sites,
                                 bool left) {
  const int d = 2 * half_sites + 1;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(d);
  if (left)
    out.head(half_sites) = psi.head(half_sites);
  else
    out.tail(half_sites) = psi.tail(half_sites);
  out(half_sites) = psi(half_sites) * inv_sqrt2;
  return out;
}

}  // namespace

double shannon_entropy(const Eigen::VectorXcd& psi, int half_sites) {
  const int d = 2 * half_sites + 1;
  if (psi.size() != d)
    throw ConfigError("shannon_entropy: state length does not match lattice");
  double sigma = 0.0;
  for (int q = 1; q <= d; ++q) {
    const Eigen::VectorXd mode = free_box_mode(q, half_sites);
    const double rho =
        std::norm(mode.cast<std::complex<double>>().dot(psi));
    if (rho > 0.0) sigma -= rho * std::log(rho);
  }
  return sigma;
}

LateralObservables lateral_observables(const Eigen::VectorXcd& psi,
                                       const HamiltonianMatrix& h) {
  if (psi.size() != h.dim())
    throw ConfigError("lateral_observables: state/Hamiltonian size mismatch");
  const int n = h.half_sites();
  LateralObservables out;
  const Eigen::VectorXcd left = side_projection(psi, n, true);
  const Eigen::VectorXcd right = side_projection(psi, n, false);
  out.p_left = left.squaredNorm();
  out.p_right = right.squaredNorm();
  if (out.p_left >= 1e-12)
    out.e_left = std::real(left.dot(h.matrix() * left)) / out.p_left;
  if (out.p_right >= 1e-12)
    out.e_right = std::real(right.dot(h.matrix() * right)) / out.p_right;
  return out;
}

WorkSeries potential_work(const WaveTrace& trace,
                          const Eigen::MatrixXcd& interaction) {
  const std::size_t steps = trace.taus.size();
  if (interaction.rows() != trace.states.cols() ||
      interaction.cols() != trace.states.cols())
    throw ConfigError("potential_work: interaction matrix size mismatch");
  WorkSeries ws;
  ws.v_avg.resize(steps);
  ws.v_timeavg.resize(steps);
  for (std::size_t k = 0; k < steps; ++k) {
    const Eigen::VectorXcd psi =
        trace.states.row(static_cast<Eigen::Index>(k)).transpose();
    ws.v_avg[k] = std::real(psi.dot(interaction * psi));
  }
  if (steps == 0) return ws;
  ws.v_timeavg[0] = ws.v_avg[0];
  double area = 0.0;
  for (std::size_t k = 1; k < steps; ++k) {
    const double dt = trace.taus[k] - trace.taus[k - 1];
    area += 0.5 * (ws.v_avg[k] + ws.v_avg[k - 1]) * dt;
    const double span = trace.taus[k] - trace.taus[0];
    ws.v_timeavg[k] = (span > 0.0) ? area / span : ws.v_avg[k];
  }
  return ws;
}

EntropyBudget entropy_budget(double delta_s_packet, double delta_v,
                             double inv_temperature) {
  EntropyBudget b;
  b.delta_s_demon = delta_v * inv_temperature;
  b.delta_s_total = delta_s_packet + b.delta_s_demon;
  return b;
}

double two_compartment_entropy_drop(double p_right, double p_left,
                                    double t_right, double t_left,
                                    double volume_factor) {
  if (!(t_right > 0.0) || !(t_left > 0.0))
    throw ConfigError("two_compartment_entropy_drop: temperatures must be > 0");
  return -(p_right / t_right + p_left / t_left) * volume_factor * kLn2;
}

RevivalEstimate revival_estimate(int half_sites) {
  if (half_sites < 1)
    throw ConfigError("revival_estimate: half_sites must be >= 1");
  const double width = 2.0 * half_sites;  // box width in lattice spacings
  RevivalEstimate r;
  r.tau_full = 2.0 * width * width / kPi;
  r.tau_quarter = width * width / (2.0 * kPi);
  return r;
}

double effective_beta_fit(const Eigen::VectorXcd& psi, int half_sites) {
  const int d = 2 * half_sites + 1;
  if (psi.size() != d)
    throw ConfigError("effective_beta_fit: state length does not match lattice");
  // rho_q ~ exp(-2 beta (q^2 - 1)); fit ln rho = c - s (q^2 - 1), beta = s/2
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int kept = 0;
  for (int q = 1; q <= d; ++q) {
    const Eigen::VectorXd mode = free_box_mode(q, half_sites);
    const double rho =
        std::norm(mode.cast<std::complex<double>>().dot(psi));
    if (rho <= 1e-12) continue;
    const double x = static_cast<double>(q) * q - 1.0;
    const double y = std::log(rho);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++kept;
  }
  if (kept < 3)
    throw NumericsError(
        "effective_beta_fit: fewer than 3 occupied modes, fit underdetermined");
  const double det = kept * sxx - sx * sx;
  if (det == 0.0)
    throw NumericsError("effective_beta_fit: degenerate design matrix");
  const double slope = (kept * sxy - sx * sy) / det;  // d ln rho / d(q^2-1)
  return -slope / 2.0;
}

std::vector<double> entropy_series(const WaveTrace& trace, int threads) {
  const int n = trace.half_sites();
  if (2 * n + 1 != trace.states.cols())
    throw ConfigError("entropy_series: trace has even site count");
  const Eigen::MatrixXcd modes_t =
      free_box_mode_matrix(n).transpose().cast<std::complex<double>>();
  std::vector<double> out(trace.taus.size());
  parallel_for(out.size(), threads, [&](std::size_t k) {
    const Eigen::VectorXd rho =
        (modes_t * trace.states.row(static_cast<Eigen::Index>(k)).transpose())
            .cwiseAbs2();
    double sigma = 0.0;
    for (Eigen::Index q = 0; q < rho.size(); ++q)
      if (rho(q) > 0.0) sigma -= rho(q) * std::log(rho(q));
    out[k] = sigma;
  });
  return out;
}

ObservableSeries compute_observables(const WaveTrace& trace,
                                     const HamiltonianMatrix& h,
                                     const Eigen::MatrixXcd& interaction,
                                     int threads) {
  const std::size_t steps = trace.taus.size();
  if (trace.states.cols() != h.dim())
    throw ConfigError("compute_observables: trace/Hamiltonian size mismatch");
  ObservableSeries s;
  s.tau = trace.taus;
  s.entropy.resize(steps);
  s.p_left.resize(steps);
  s.p_right.resize(steps);
  s.e_left.resize(steps);
  s.e_right.resize(steps);

  const int n = h.half_sites();
  const Eigen::MatrixXcd modes_t =
      free_box_mode_matrix(n).transpose().cast<std::complex<double>>();
  parallel_for(steps, threads, [&](std::size_t k) {
    const Eigen::VectorXcd psi =
        trace.states.row(static_cast<Eigen::Index>(k)).transpose();
    const Eigen::VectorXd rho = (modes_t * psi).cwiseAbs2();
    double sigma = 0.0;
    for (Eigen::Index q = 0; q < rho.size(); ++q)
      if (rho(q) > 0.0) sigma -= rho(q) * std::log(rho(q));
    s.entropy[k] = sigma;
    const LateralObservables lat = lateral_observables(psi, h);
    s.p_left[k] = lat.p_left;
    s.p_right[k] = lat.p_right;
    s.e_left[k] = lat.e_left.value_or(std::nan(""));
    s.e_right[k] = lat.e_right.value_or(std::nan(""));
  });

  const WorkSeries ws = potential_work(trace, interaction);
  s.v_avg = ws.v_avg;
  s.v_timeavg = ws.v_timeavg;
  return s;
}

void ObservableSeries::write_csv(std::ostream& os) const {
  os << "tau,entropy,p_left,p_right,e_left,e_right,v_avg,v_timeavg\n";
  for (std::size_t k = 0; k < tau.size(); ++k) {
    os << fmt_double(tau[k]) << ',' << fmt_double(entropy[k]) << ','
       << fmt_double(p_left[k]) << ',' << fmt_double(p_right[k]) << ','
       << fmt_double(e_left[k]) << ',' << fmt_double(e_right[k]) << ','
       << fmt_double(v_avg[k]) << ',' << fmt_double(v_timeavg[k]) << '\n';
  }
}

}  // namespace demonbox
