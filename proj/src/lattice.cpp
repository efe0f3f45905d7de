#include "demonbox/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <ostream>

#include "demonbox/activation.hpp"
#include "demonbox/errors.hpp"

namespace demonbox {

void LatticeConfig::validate() const {
  if (half_sites < 1)
    throw ConfigError("lattice: half_sites must be >= 1");
  if (!std::isfinite(upsilon0))
    throw ConfigError("lattice: upsilon0 must be finite");
  if (!(kappa_r > 0.0 && kappa_r < kappa_d && kappa_d <= kPi))
    throw ConfigError("lattice: need 0 < kappa_r < kappa_d <= pi");
}

HamiltonianMatrix::HamiltonianMatrix(Eigen::MatrixXcd mat, int half_sites)
    : mat_(std::move(mat)), half_sites_(half_sites) {
  const int d = 2 * half_sites + 1;
  if (half_sites < 0 || mat_.rows() != d || mat_.cols() != d)
    throw ConfigError("hamiltonian: matrix dimension must equal 2N+1");
}

std::complex<double> HamiltonianMatrix::at_sites(int n, int np) const {
  if (std::abs(n) > half_sites_ || std::abs(np) > half_sites_)
    throw ConfigError("hamiltonian: site index outside [-N, N]");
  return mat_(n + half_sites_, np + half_sites_);
}

double HamiltonianMatrix::hermiticity_defect() const {
  return (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff();
}

HamiltonianMatrix assemble_hamiltonian(const LatticeConfig& cfg) {
  cfg.validate();
  const int d = cfg.dim();
  const int c = cfg.half_sites;  // flat index of site 0
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    h(i, i) = 2.0;
    if (i + 1 < d) {
      h(i, i + 1) = -1.0;
      h(i + 1, i) = -1.0;
    }
  }
  // interaction column through site 0 and its adjoint row; both land on
  // (0,0), which doubles w(0) there
  for (int n = -c; n <= c; ++n) {
    const std::complex<double> w =
        cfg.upsilon0 * lattice_kernel(n, cfg.kappa_r, cfg.kappa_d);
    h(n + c, c) += w;
    h(c, n + c) += std::conj(w);
  }
  return HamiltonianMatrix(std::move(h), c);
}

Eigen::MatrixXcd interaction_part(const LatticeConfig& cfg) {
  cfg.validate();
  const int d = cfg.dim();
  const int c = cfg.half_sites;
  Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(d, d);
  for (int n = -c; n <= c; ++n) {
    const std::complex<double> w =
        cfg.upsilon0 * lattice_kernel(n, cfg.kappa_r, cfg.kappa_d);
    v(n + c, c) += w;
    v(c, n + c) += std::conj(w);
  }
  return v;
}

EigenSystem eigendecompose(const HamiltonianMatrix& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.matrix());
  if (solver.info() != Eigen::Success)
    throw NumericsError("eigendecompose: solver failed to converge");
  EigenSystem sys;
  sys.values = solver.eigenvalues();
  sys.vectors = solver.eigenvectors();
  return sys;
}

std::vector<double> free_chain_spectrum(int half_sites) {
  if (half_sites < 1)
    throw ConfigError("free_chain_spectrum: half_sites must be >= 1");
  const int d = 2 * half_sites + 1;
  std::vector<double> ev(d);
  for (int q = 1; q <= d; ++q)
    ev[q - 1] = 2.0 * (1.0 - std::cos(q * kPi / (d + 1)));
  return ev;
}

Eigen::MatrixXcd direct_resolvent(const Eigen::MatrixXcd& h, double energy,
                                  double eps) {
  if (h.rows() == 0 || h.rows() != h.cols())
    throw ConfigError("direct_resolvent: nonempty square matrix required");
  const Eigen::Index n = h.rows();
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  const Eigen::MatrixXcd shifted =
      std::complex<double>(energy, eps) * id - h;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(shifted);
  if (!(lu.rcond() > 1e-12))
    throw NumericsError(
        "direct_resolvent: system conditioned worse than 1e12 (energy too "
        "close to the spectrum)");
  return lu.solve(id);
}

double dispersion_parabolic_range(double tol) {
  if (!(tol > 0.0))
    throw ConfigError("dispersion_parabolic_range: tol must be > 0");
  // relative gap 1 - (sin(kappa/2) / (kappa/2))^2 grows monotonically
  auto gap = [](double kappa) {
    const double u = std::sin(0.5 * kappa) / (0.5 * kappa);
    return 1.0 - u * u;
  };
  if (gap(kPi) <= tol) return kPi;
  double lo = 1e-12, hi = kPi;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (gap(mid) <= tol)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

Eigen::VectorXd free_box_mode(int q, int half_sites) {
  if (half_sites < 1)
    throw ConfigError("free_box_mode: half_sites must be >= 1");
  const int d = 2 * half_sites + 1;
  if (q < 1 || q > d)
    throw ConfigError("free_box_mode: q must lie in [1, 2N+1]");
  Eigen::VectorXd v(d);
  for (int i = 0; i < d; ++i)
    v(i) = std::sin(q * kPi * (i + 1.0) / (d + 1.0));
  v.normalize();
  return v;
}

Eigen::MatrixXd free_box_mode_matrix(int half_sites) {
  if (half_sites < 1)
    throw ConfigError("free_box_mode_matrix: half_sites must be >= 1");
  const int d = 2 * half_sites + 1;
  Eigen::MatrixXd u(d, d);
  for (int q = 1; q <= d; ++q) u.col(q - 1) = free_box_mode(q, half_sites);
  return u;
}

void EigenSystem::save(std::ostream& os) const {
  // little-endian layout: u64 dim, dim doubles (values), then the vectors
  // row-major as re,im pairs; assumes a little-endian host
  const std::uint64_t dim = static_cast<std::uint64_t>(values.size());
  if (vectors.rows() != values.size() || vectors.cols() != values.size())
    throw ConfigError("eigensystem: inconsistent dimensions");
  os.write(reinterpret_cast<const char*>(&dim), sizeof(dim));
  os.write(reinterpret_cast<const char*>(values.data()),
           static_cast<std::streamsize>(dim * sizeof(double)));
  for (std::uint64_t r = 0; r < dim; ++r)
    for (std::uint64_t c = 0; c < dim; ++c) {
      const std::complex<double> z = vectors(static_cast<Eigen::Index>(r),
                                             static_cast<Eigen::Index>(c));
      const double re = z.real(), im = z.imag();
      os.write(reinterpret_cast<const char*>(&re), sizeof(re));
      os.write(reinterpret_cast<const char*>(&im), sizeof(im));
    }
  if (!os) throw NumericsError("eigensystem: write failed");
}

EigenSystem EigenSystem::load(std::istream& is) {
  std::uint64_t dim = 0;
  is.read(reinterpret_cast<char*>(&dim), sizeof(dim));
  if (!is || dim == 0 || dim > (1u << 20))
    throw ConfigError("eigensystem: bad or missing dimension header");
  EigenSystem sys;
  sys.values.resize(static_cast<Eigen::Index>(dim));
  is.read(reinterpret_cast<char*>(sys.values.data()),
          static_cast<std::streamsize>(dim * sizeof(double)));
  sys.vectors.resize(static_cast<Eigen::Index>(dim),
                     static_cast<Eigen::Index>(dim));
  for (std::uint64_t r = 0; r < dim; ++r)
    for (std::uint64_t c = 0; c < dim; ++c) {
      double re = 0.0, im = 0.0;
      is.read(reinterpret_cast<char*>(&re), sizeof(re));
      is.read(reinterpret_cast<char*>(&im), sizeof(im));
      sys.vectors(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          {re, im};
    }
  if (!is) throw ConfigError("eigensystem: truncated stream");
  return sys;
}

}  // namespace demonbox
