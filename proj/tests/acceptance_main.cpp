// End-to-end checks of the assembled library against its numeric design
// targets.  Each check prints one PASS/FAIL line with the measured numbers,
// and the exit status is the number of failures, so the suite stays red
// while any target is missed.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "demonbox/activation.hpp"
#include "demonbox/constants.hpp"
#include "demonbox/diagnostics.hpp"
#include "demonbox/evolution.hpp"
#include "demonbox/greens.hpp"
#include "demonbox/lattice.hpp"
#include "demonbox/quadrature.hpp"

using namespace demonbox;

namespace {

int g_failed = 0;
int g_index = 0;

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

void report(bool pass, double seconds, const std::string& text) {
  ++g_index;
  if (!pass) ++g_failed;
  std::printf("[%2d/11] %s %6.2fs  %s\n", g_index, pass ? "PASS" : "FAIL",
              seconds, text.c_str());
  std::fflush(stdout);
}

std::string num(double v, const char* f = "%.6g") {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, v);
  return std::string(buf);
}

LatticeConfig demon_config(int half_sites) {
  LatticeConfig cfg;
  cfg.half_sites = half_sites;
  return cfg;
}

LatticeConfig free_config(int half_sites) {
  LatticeConfig cfg = demon_config(half_sites);
  cfg.upsilon0 = 0.0;
  return cfg;
}

double clearance(double e, const std::vector<double>& spectrum) {
  double best = std::numeric_limits<double>::infinity();
  for (double s : spectrum) best = std::min(best, std::fabs(e - s));
  return best;
}

struct Dip {
  double display = 0.0;
  double value = std::numeric_limits<double>::infinity();
};

std::vector<Dip> local_minima(const std::vector<double>& taus,
                              const std::vector<double>& s) {
  std::vector<Dip> dips;
  for (std::size_t k = 1; k + 1 < s.size(); ++k)
    if (s[k] < s[k - 1] && s[k] < s[k + 1])
      dips.push_back({taus[k] / 1.0e3, s[k]});
  return dips;
}

Dip deepest_in(const std::vector<Dip>& dips, double lo, double hi) {
  Dip best;
  for (const Dip& d : dips)
    if (d.display >= lo && d.display <= hi && d.value < best.value) best = d;
  return best;
}

// 1. The resummed point-interaction resolvent is exact algebra, so it must
// reproduce the dense inverse of the assembled Hamiltonian at machine-level
// accuracy for every lattice size.
void check_filtered_resolvent() {
  Timer timer;
  std::mt19937 rng(20260814u);
  double worst = 0.0;
  for (int half_sites : {4, 16, 32, 63}) {
    const LatticeConfig cfg = demon_config(half_sites);
    const HamiltonianMatrix h = assemble_hamiltonian(cfg);
    const HamiltonianMatrix h0 = assemble_hamiltonian(free_config(half_sites));
    std::vector<double> avoid = free_chain_spectrum(half_sites);
    const EigenSystem sys = eigendecompose(h);
    avoid.insert(avoid.end(), sys.values.data(),
                 sys.values.data() + sys.values.size());
    const QuadratureGrid quad = lattice_sites(half_sites);
    const auto vtilde = [&cfg](double y) {
      return cfg.upsilon0 *
             std::conj(lattice_kernel(static_cast<int>(std::llround(y)),
                                      cfg.kappa_r, cfg.kappa_d));
    };
    std::uniform_int_distribution<int> site(-half_sites, half_sites);
    std::uniform_real_distribution<double> energy(0.2, 3.8);
    for (int k = 0; k < 20; ++k) {
      double e = energy(rng);
      while (clearance(e, avoid) < 1e-2) e = energy(rng);
      // the closed forms use the (H - E)^{-1} sign convention
      const Eigen::MatrixXcd gfree = -direct_resolvent(h0.matrix(), e, 0.0);
      const Eigen::MatrixXcd gfull = -direct_resolvent(h.matrix(), e, 0.0);
      const GreensFn g0 = [&gfree, half_sites](double x, double xp, double) {
        return gfree(static_cast<int>(std::llround(x)) + half_sites,
                     static_cast<int>(std::llround(xp)) + half_sites);
      };
      // skip accidental zeros of the reference entry so the relative error
      // stays well defined
      int n = 0, np = 0;
      Complex want;
      do {
        n = site(rng);
        np = site(rng);
        want = gfull(n + half_sites, np + half_sites);
      } while (std::abs(want) < 1e-3);
      const Complex got = g_p_general(g0, vtilde, n, np, e, quad);
      worst = std::max(worst, std::abs(got - want) / std::abs(want));
    }
  }
  const double secs = timer.seconds();
  report(worst < 1e-9 && secs < 5.0, secs,
         "filtered point interaction vs dense inversion, 9..127 sites: worst "
         "rel err " +
             num(worst) + " (target 1e-9, 5 s)");
}

// 2. Same game for the delta barrier closed form.
void check_delta_resolvent() {
  Timer timer;
  std::mt19937 rng(977u);
  const int half_sites = 32;
  const double v0 = 0.7;
  const HamiltonianMatrix h0 = assemble_hamiltonian(free_config(half_sites));
  Eigen::MatrixXcd hd = h0.matrix();
  hd(half_sites, half_sites) += v0;
  std::vector<double> avoid = free_chain_spectrum(half_sites);
  {
    const Eigen::VectorXd vals =
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(hd,
                                                        Eigen::EigenvaluesOnly)
            .eigenvalues();
    avoid.insert(avoid.end(), vals.data(), vals.data() + vals.size());
  }
  std::uniform_int_distribution<int> site(-half_sites, half_sites);
  std::uniform_real_distribution<double> energy(0.2, 3.8);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    double e = energy(rng);
    while (clearance(e, avoid) < 1e-2) e = energy(rng);
    const Eigen::MatrixXcd gfree = -direct_resolvent(h0.matrix(), e, 0.0);
    const Eigen::MatrixXcd gref = -direct_resolvent(hd, e, 0.0);
    const GreensFn g0 = [&gfree, half_sites](double x, double xp, double) {
      return gfree(static_cast<int>(std::llround(x)) + half_sites,
                   static_cast<int>(std::llround(xp)) + half_sites);
    };
    int n = 0, np = 0;
    Complex want;
    do {
      n = site(rng);
      np = site(rng);
      want = gref(n + half_sites, np + half_sites);
    } while (std::abs(want) < 1e-3);
    const Complex got = g_delta(g0, n, np, e, v0);
    worst = std::max(worst, std::abs(got - want) / std::abs(want));
  }
  const double secs = timer.seconds();
  report(worst < 1e-10 && secs < 1.0, secs,
         "delta barrier vs dense inversion: worst rel err " + num(worst) +
             " (target 1e-10, 1 s)");
}

// 3. Retarded/advanced conjugation for Hermitian generators, symmetry for
// real ones, and a strictly nonsymmetric resolvent once the demon is on.
void check_adjoint_symmetry() {
  Timer timer;
  std::mt19937 rng(4242u);
  std::uniform_int_distribution<int> dim_dist(4, 32);
  std::uniform_real_distribution<double> entry(-1.0, 1.0);
  std::uniform_real_distribution<double> energy(-2.0, 6.0);
  std::uniform_real_distribution<double> log_eps(-2.0, -1.0);
  double worst_adj = 0.0;
  double worst_sym = 0.0;
  for (int k = 0; k < 50; ++k) {
    const int d = dim_dist(rng);
    const bool real_case = (k % 2 == 0);
    Eigen::MatrixXcd m(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        m(i, j) = real_case ? Complex(entry(rng), 0.0)
                            : Complex(entry(rng), entry(rng));
    const Eigen::MatrixXcd h = 0.5 * (m + m.adjoint());
    const auto rep =
        adjoint_symmetry_check(h, energy(rng), std::pow(10.0, log_eps(rng)));
    worst_adj = std::max(worst_adj, rep.adjoint_defect);
    if (real_case) worst_sym = std::max(worst_sym, rep.symmetry_defect);
  }
  const auto demon = adjoint_symmetry_check(
      assemble_hamiltonian(demon_config(124)).matrix(), 1.0, 1e-3);
  const bool ok =
      worst_adj < 1e-10 && worst_sym < 1e-10 && demon.asymmetry_frobenius > 1e-3;
  report(ok, timer.seconds(),
         "adjoint defect " + num(worst_adj) + ", real-H symmetry defect " +
             num(worst_sym) + " (targets 1e-10); demon asymmetry " +
             num(demon.asymmetry_frobenius) + " (must exceed 1e-3)");
}

// 4. Assembly sanity at production size.
void check_assembly() {
  Timer timer;
  const double herm =
      assemble_hamiltonian(demon_config(124)).hermiticity_defect();
  const EigenSystem sys = eigendecompose(assemble_hamiltonian(free_config(124)));
  const std::vector<double> closed = free_chain_spectrum(124);
  double worst = 0.0;
  for (int i = 0; i < sys.values.size(); ++i)
    worst = std::max(worst, std::fabs(sys.values[i] - closed[i]));
  report(herm < 1e-14 && worst < 1e-10, timer.seconds(),
         "249-site assembly: hermiticity defect " + num(herm) +
             " (target 1e-14), free spectrum vs closed form " + num(worst) +
             " (target 1e-10)");
}

// 5. Box resolvent series vs the tangent diagonal, and the step-coefficient
// shortcut for Q1 against the exact sine-integral coefficients.
void check_closed_forms() {
  Timer timer;
  ContainerSpec spec;
  spec.series_terms = 10000;
  double worst_diag = 0.0;
  for (double e : {1.3, 7.3, 13.0, 26.4})
    worst_diag = std::max(
        worst_diag, std::abs(g0_box(0.0, 0.0, e, spec) - g0_box_center(e, spec)));

  ContainerSpec dense = spec;
  dense.series_terms = 20000;
  const ActivationSpec act;
  const auto exact = container_integrals(dense, act, IntegralMode::exact);
  const auto approx = container_integrals(dense, act, IntegralMode::approx);
  const double e_probe = 13.0;  // midway between the resonances at 8 and 18
  const double qe = exact.q1(e_probe).real();
  const double qa = approx.q1(e_probe).real();
  const double rel = std::fabs(qa - qe) / std::fabs(qe);
  const bool ok = worst_diag < 1e-6 && rel < 0.05;
  report(ok, timer.seconds(),
         "diagonal series vs closed form " + num(worst_diag) +
             " (target 1e-6); Q1 exact " + num(qe) + " vs stepped " + num(qa) +
             " deviates " + num(100.0 * rel, "%.2f") + "% (target 5%)");
}

// 6. Quarter-revival time of the N = 124 chain.
void check_revival_time() {
  Timer timer;
  const RevivalEstimate rev = revival_estimate(124);
  const double closed = 248.0 * 248.0 / (2.0 * kPi);
  const bool ok = std::fabs(rev.tau_quarter - closed) < 1e-9 * closed &&
                  std::fabs(rev.tau_quarter / 1.0e4 - 1.0) < 0.05;
  report(ok, timer.seconds(),
         "tau_quarter(124) = " + num(rev.tau_quarter) +
             ", closed form (2N)^2/(2pi) = " + num(closed) +
             ", off 1e4 by " +
             num(100.0 * std::fabs(rev.tau_quarter / 1.0e4 - 1.0), "%.2f") +
             "% (target 5%)");
}

// 7-9. The reference evolutions: Boltzmann and uniform packets on the
// 249-site demon chain, 2001 times up to tau = 2e4, display time = tau/1e3.
void check_reference_evolutions() {
  Timer timer7;
  const LatticeConfig lat = demon_config(124);
  const HamiltonianMatrix h = assemble_hamiltonian(lat);
  const Eigen::MatrixXcd inter = interaction_part(lat);
  const EigenSystem sys = eigendecompose(h);
  const std::vector<double> taus = uniform_time_grid(20000.0, 2001);

  const Eigen::VectorXcd psi0 =
      initial_state(InitialStateSpec::boltzmann(0.01), lat.half_sites);
  const WaveTrace trace = propagate(sys, psi0, taus);
  const ObservableSeries obs = compute_observables(trace, h, inter);

  const double s0 = obs.entropy.front();
  const auto dips = local_minima(obs.tau, obs.entropy);
  const double quarter_display = revival_estimate(lat.half_sites).tau_quarter / 1.0e3;
  int early = 0;
  for (const Dip& d : dips)
    if (d.value < s0 && d.display < quarter_display) ++early;
  const Dip first = deepest_in(dips, 1.0, 3.0);
  const Dip second = deepest_in(dips, 10.0, 14.0);
  const double secs7 = timer7.seconds();
  const bool ok7 =
      early >= 2 && first.value < s0 && second.value < s0 && secs7 < 30.0;
  report(ok7, secs7,
         "Boltzmann entropy: S(0) = " + num(s0) + ", " + num(early, "%.0f") +
             " minima below S(0) before the quarter revival; dips " +
             num(first.value) + " at display " + num(first.display) +
             " (window 2+-1) and " + num(second.value) + " at " +
             num(second.display) + " (window 12+-2); target < 30 s");

  Timer timer8;
  std::size_t k_excess = 0;
  std::size_t k_vmin = 0;
  for (std::size_t k = 0; k < obs.tau.size(); ++k) {
    if (obs.p_right[k] - obs.p_left[k] >
        obs.p_right[k_excess] - obs.p_left[k_excess])
      k_excess = k;
    if (obs.v_avg[k] < obs.v_avg[k_vmin]) k_vmin = k;
  }
  const double excess_display = obs.tau[k_excess] / 1.0e3;
  const double vmin_display = obs.tau[k_vmin] / 1.0e3;
  const bool ok8 = excess_display >= 7.0 && excess_display <= 10.0 &&
                   obs.v_avg[k_vmin] < 0.0 && vmin_display >= 7.5 &&
                   vmin_display <= 10.5;
  report(ok8, timer8.seconds(),
         "right-left excess peaks at +" +
             num(obs.p_right[k_excess] - obs.p_left[k_excess]) + " at display " +
             num(excess_display) + " (window 8.5+-1.5); <V> min " +
             num(obs.v_avg[k_vmin]) + " at " + num(vmin_display) +
             " (negative, window 9+-1.5)");

  Timer timer9;
  const Eigen::VectorXcd u0 =
      initial_state(InitialStateSpec::uniform(), lat.half_sites);
  const WaveTrace utrace = propagate(sys, u0, taus);
  const std::vector<double> us = entropy_series(utrace);
  const auto udips = local_minima(taus, us);
  const Dip d8 = deepest_in(udips, 6.5, 9.5);
  const Dip d16 = deepest_in(udips, 14.0, 18.0);
  const bool ok9 = d8.value < us.front() && d16.value < us.front();
  report(ok9, timer9.seconds(),
         "uniform entropy: S(0) = " + num(us.front()) + ", dips " +
             num(d8.value) + " at display " + num(d8.display) +
             " (window 8+-1.5) and " + num(d16.value) + " at " +
             num(d16.display) + " (window 16+-2)");
}

// 10. Switching the demon off must kill every effect it is blamed for.
void check_free_controls() {
  Timer timer;
  const LatticeConfig lat = free_config(124);
  const HamiltonianMatrix h = assemble_hamiltonian(lat);
  const Eigen::MatrixXcd inter = interaction_part(lat);
  const EigenSystem sys = eigendecompose(h);
  const std::vector<double> taus = uniform_time_grid(20000.0, 2001);

  const WaveTrace boltz = propagate(
      sys, initial_state(InitialStateSpec::boltzmann(0.01), lat.half_sites),
      taus);
  const std::vector<double> bs = entropy_series(boltz);
  const WaveTrace unif = propagate(
      sys, initial_state(InitialStateSpec::uniform(), lat.half_sites), taus);
  const ObservableSeries uobs = compute_observables(unif, h, inter);

  double drift = 0.0;
  for (double s : bs) drift = std::max(drift, std::fabs(s - bs.front()));
  for (double s : uobs.entropy)
    drift = std::max(drift, std::fabs(s - uobs.entropy.front()));
  double psym = 0.0;
  double vmax = 0.0;
  for (std::size_t k = 0; k < uobs.tau.size(); ++k) {
    psym = std::max(psym, std::fabs(uobs.p_left[k] - uobs.p_right[k]));
    vmax = std::max(vmax, std::fabs(uobs.v_avg[k]));
  }
  const bool ok = drift < 1e-10 && psym < 1e-10 && vmax < 1e-15;
  report(ok, timer.seconds(),
         "demon off: entropy drift " + num(drift) +
             ", side imbalance of the even packet " + num(psym) +
             " (targets 1e-10), max |<V>| " + num(vmax));
}

// 11. The resonance scan: polished roots, the flagged band-edge energy kept
// out of the root list, and stability under a tighter bisection.
void check_pole_scan() {
  Timer timer;
  const ContainerSpec spec;
  const ActivationSpec act;
  const PoleReport rep = demon_pole_scan(0.05, 30.0, spec, act);
  const PoleReport tight = demon_pole_scan(0.05, 30.0, spec, act, 5e-13);

  double worst_res = 0.0;
  double near_flagged = std::numeric_limits<double>::infinity();
  std::string roots;
  for (const PoleRoot& r : rep.roots) {
    worst_res = std::max(worst_res, r.residual);
    near_flagged =
        std::min(near_flagged, std::fabs(r.energy - rep.flagged_extra_pole));
    if (!roots.empty()) roots += ", ";
    roots += num(r.energy);
  }
  double drift = 0.0;
  const bool count_ok =
      !rep.roots.empty() && rep.roots.size() == tight.roots.size();
  if (count_ok)
    for (std::size_t i = 0; i < rep.roots.size(); ++i)
      drift = std::max(drift,
                       std::fabs(rep.roots[i].energy - tight.roots[i].energy));
  const bool ok = count_ok && worst_res < 1e-10 &&
                  std::fabs(rep.flagged_extra_pole - 8.0) < 1e-12 &&
                  near_flagged > 1e-6 && drift <= 1e-8;
  report(ok, timer.seconds(),
         "roots {" + roots + "}, worst |D| " + num(worst_res) +
             " (target 1e-10), flagged energy " + num(rep.flagged_extra_pole) +
             " excluded, tol-halving drift " + num(drift) + " (target 1e-8)");
}

}  // namespace

int main() {
  std::printf("demonbox acceptance checks\n");
  check_filtered_resolvent();
  check_delta_resolvent();
  check_adjoint_symmetry();
  check_assembly();
  check_closed_forms();
  check_revival_time();
  check_reference_evolutions();
  check_free_controls();
  check_pole_scan();
  std::printf("%d/11 passed, %d failed\n", 11 - g_failed, g_failed);
  return g_failed;
}
