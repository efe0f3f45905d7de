#include "demonbox/greens.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "demonbox/errors.hpp"
#include "demonbox/parallel.hpp"
#include "demonbox/sine_integral.hpp"
#include "demonbox/textio.hpp"

namespace demonbox {
namespace {

// Absolute distance to an eigenenergy below which a nonvanishing series term
// counts as a pole hit.
constexpr double kPoleWindow = 1e-9;

// Unnormalized box eigenfunction: cosine for odd modes, sine for even ones.
double mode_function(int n, double x, const ContainerSpec& spec) {
  const double kx = spec.wavenumber(n) * x;
  return (n % 2 == 1) ? std::cos(kx) : std::sin(kx);
}

void require_inside(double x, const ContainerSpec& spec, const char* who) {
  if (std::fabs(x) > 0.5 * spec.box_length)
    throw ConfigError(std::string(who) + ": position outside [-L/2, L/2]");
}

}  // namespace

void ContainerSpec::validate() const {
  if (!(box_length > 0.0) || !std::isfinite(box_length))
    throw ConfigError("container: box_length must be finite and > 0");
  if (!(hbar > 0.0) || !std::isfinite(hbar))
    throw ConfigError("container: hbar must be finite and > 0");
  if (series_terms < 32)
    throw ConfigError("container: series_terms must be >= 32");
}

double g0_box_static(double x, double xp, const ContainerSpec& spec) {
  require_inside(x, spec, "g0_box");
  require_inside(xp, spec, "g0_box");
  const double half = 0.5 * spec.box_length;
  const double lo = std::min(x, xp);
  const double hi = std::max(x, xp);
  return 2.0 * (lo + half) * (half - hi) /
         (spec.box_length * spec.hbar * spec.hbar);
}

Complex g0_box(double x, double xp, double E, const ContainerSpec& spec) {
  spec.validate();
  // Kummer-accelerated series around the closed E = 0 sum:
  //   G0 = G0|_{E=0} + E (2/L) sum_n phi_n(x) phi_n(x') / (E_n (E_n - E)).
  const double base = g0_box_static(x, xp, spec);
  double acc = 0.0;
  for (int n = 1; n <= spec.series_terms; ++n) {
    const double ph = mode_function(n, x, spec) * mode_function(n, xp, spec);
    if (ph == 0.0) continue;  // vanishing residue, no pole felt here
    const double en = spec.eigen_energy(n);
    const double d = en - E;
    if (std::fabs(d) < kPoleWindow)
      throw PoleError("g0_box: energy within 1e-9 of eigenenergy E_" +
                          fmt_int(n),
                      n, E);
    acc += ph / (en * d);
  }
  return {base + E * (2.0 / spec.box_length) * acc, 0.0};
}

Complex g0_box_center(double E, const ContainerSpec& spec) {
  spec.validate();
  if (E == 0.0) return {g0_box_static(0.0, 0.0, spec), 0.0};
  const Complex s = std::sqrt(Complex(2.0 * E, 0.0));
  const Complex z = spec.box_length * s / (2.0 * spec.hbar);
  return std::tan(z) / (spec.hbar * s);
}

Complex g_delta(const GreensFn& g0, double x, double xp, double E, double v0) {
  const Complex den = 1.0 + v0 * g0(0.0, 0.0, E);
  if (std::abs(den) == 0.0)
    throw NumericsError("g_delta: resonance, 1 + v0 g0(0,0) vanished");
  return g0(x, xp, E) - v0 * g0(x, 0.0, E) * g0(0.0, xp, E) / den;
}

ContainerIntegrals container_integrals(const ContainerSpec& spec,
                                       const ActivationSpec& act,
                                       IntegralMode mode) {
  spec.validate();
  act.validate();
  if (act.finite_uv())
    throw ConfigError(
        "container_integrals: finite p_uv unsupported here (breaks q2 = 0 "
        "and the sine-integral reduction)");
  const double L = spec.box_length;
  const double a = 0.5 * act.p_ref * L;
  const double api = a / kPi;
  const int m = static_cast<int>(std::floor(api));
  const double frac = api - m;
  if (std::min(frac, 1.0 - frac) < 1e-9)
    throw ConfigError(
        "container_integrals: p_ref L/2 sits on a band edge (integer "
        "multiple of pi)");

  // Series coefficients S_n = Si(n pi + a) + Si(n pi - a) - Si(n pi); the
  // approximate mode replaces them by their step-function limits.
  auto coeff = std::make_shared<std::vector<double>>(spec.series_terms + 1, 0.0);
  for (int n = 1; n <= spec.series_terms; ++n) {
    if (mode == IntegralMode::exact)
      (*coeff)[n] = si(n * kPi + a) + si(n * kPi - a) - si(n * kPi);
    else
      (*coeff)[n] = (n < m) ? -0.5 * kPi : (n == m ? -kPi * frac : 0.5 * kPi);
  }
  const double half_v = 0.5 * act.strength;

  ContainerIntegrals out;
  out.band_a = a;
  out.band_index = m;
  out.band_fraction = frac;
  out.extra_pole_energy = (m >= 1) ? spec.eigen_energy(2 * m) : 0.0;

  auto p1 = [spec, coeff, half_v](double x, double E) -> Complex {
    require_inside(x, spec, "container p1");
    double acc = 0.0;
    for (int n = 1; n <= spec.series_terms; ++n) {
      const double num = (*coeff)[n] * std::sin(spec.wavenumber(2 * n) * x);
      if (num == 0.0) continue;
      const double d = spec.eigen_energy(2 * n) - E;
      if (std::fabs(d) < kPoleWindow)
        throw PoleError("container p1: energy within 1e-9 of E_" +
                            fmt_int(2 * n),
                        2 * n, E);
      acc += num / d;
    }
    // -(V0/2) (2/(i pi L)) acc = +i (V0/2) (2/(pi L)) acc
    return {0.0, half_v * 2.0 / (kPi * spec.box_length) * acc};
  };
  out.p1 = p1;
  out.p2 = [p1](double x, double E) { return -p1(x, E); };

  if (mode == IntegralMode::exact) {
    out.q1 = [spec, coeff, half_v](double E) -> Complex {
      double acc = 0.0;
      for (int n = 1; n <= spec.series_terms; ++n) {
        const double s2 = (*coeff)[n] * (*coeff)[n];
        if (s2 == 0.0) continue;
        const double d = spec.eigen_energy(2 * n) - E;
        if (std::fabs(d) < kPoleWindow)
          throw PoleError("container q1: energy within 1e-9 of E_" +
                              fmt_int(2 * n),
                          2 * n, E);
        acc += s2 / d;
      }
      return {half_v * half_v * 2.0 / (kPi * kPi * spec.box_length) * acc,
              0.0};
    };
  } else {
    const double ek = out.extra_pole_energy;
    out.q1 = [spec, half_v, ek, m](double E) -> Complex {
      // Closed resummation of the stepped series; the explicit E_{2m} term
      // cancels the cotangent pole there, leaving a removable point.
      if (E == 0.0)
        throw NumericsError("container q1: closed form undefined at E = 0");
      const Complex s = std::sqrt(Complex(2.0 * E, 0.0));
      const Complex z = spec.box_length * s / (2.0 * spec.hbar);
      Complex val =
          1.0 / (2.0 * E) -
          spec.box_length / (std::tan(z) * 2.0 * spec.hbar * s);
      if (m >= 1) val -= 1.0 / (ek - E);
      return half_v * half_v * val / (2.0 * spec.box_length);
    };
  }
  return out;
}

Complex g_p_general(const GreensFn& g0,
                    const std::function<Complex(double)>& vtilde, double x,
                    double xp, double E, const QuadratureGrid& quad) {
  const std::size_t n = quad.size();
  if (n == 0) throw ConfigError("g_p_general: empty quadrature grid");

  std::vector<Complex> v_pos(n), v_neg(n);
  for (std::size_t i = 0; i < n; ++i) {
    v_pos[i] = vtilde(quad.nodes[i]);
    v_neg[i] = vtilde(-quad.nodes[i]);
  }

  Complex p1{};   // int dy vtilde(y) g0(y, x')
  Complex q2{};   // int dy vtilde(y) g0(y, 0)
  Complex p2x{};  // int dy g0(x, y) vtilde(-y)
  Complex p20{};  // int dy g0(0, y) vtilde(-y)
  for (std::size_t i = 0; i < n; ++i) {
    const double y = quad.nodes[i];
    const double w = quad.weights[i];
    if (v_pos[i] != 0.0) {
      p1 += w * v_pos[i] * g0(y, xp, E);
      q2 += w * v_pos[i] * g0(y, 0.0, E);
    }
    if (v_neg[i] != 0.0) {
      p2x += w * g0(x, y, E) * v_neg[i];
      p20 += w * g0(0.0, y, E) * v_neg[i];
    }
  }
  Complex q1{};  // int dy dy' vtilde(y) g0(y, y') vtilde(-y')
  for (std::size_t i = 0; i < n; ++i) {
    if (v_pos[i] == 0.0) continue;
    Complex row{};
    for (std::size_t j = 0; j < n; ++j) {
      if (v_neg[j] == 0.0) continue;
      row += quad.weights[j] * g0(quad.nodes[i], quad.nodes[j], E) * v_neg[j];
    }
    q1 += quad.weights[i] * v_pos[i] * row;
  }

  const Complex one_q2 = 1.0 + q2;
  if (std::abs(one_q2) == 0.0)
    throw NumericsError("g_p_general: 1 + q2 vanished");
  const Complex r1 = p1 / one_q2;
  const Complex q3 = q1 / one_q2;
  const Complex g00 = g0(0.0, 0.0, E);
  const Complex den = 1.0 + p20 - g00 * q3;
  if (std::abs(den) == 0.0)
    throw NumericsError("g_p_general: resonance denominator vanished");
  const Complex gx0 = g0(x, 0.0, E);
  const Complex g0xp = g0(0.0, xp, E);
  return g0(x, xp, E) + gx0 * g0xp * q3 / den -
         gx0 * r1 * (1.0 + p20) / den - p2x * (g0xp - g00 * r1) / den;
}

Complex g_p_box(double x, double xp, double E, const ContainerSpec& spec,
                const ContainerIntegrals& integrals) {
  const Complex g00 = g0_box(0.0, 0.0, E, spec);
  const Complex q1 = integrals.q1(E);
  const Complex den = 1.0 - g00 * q1;
  if (std::abs(den) == 0.0)
    throw NumericsError("g_p_box: resonance denominator vanished");
  const Complex p1x = integrals.p1(x, E);
  const Complex p1xp = integrals.p1(xp, E);
  const Complex gx0 = g0_box(x, 0.0, E, spec);
  const Complex g0xp = g0_box(0.0, xp, E, spec);
  return g0_box(x, xp, E, spec) + (p1x * g0xp - gx0 * p1xp) / den +
         gx0 * g0xp * q1 / den - p1x * g00 * p1xp / den;
}

Complex g_p_box(double x, double xp, double E, const ContainerSpec& spec,
                const ActivationSpec& act, IntegralMode mode) {
  return g_p_box(x, xp, E, spec, container_integrals(spec, act, mode));
}

SymmetrySplit antisymmetric_part(const GreensFn& g, double x, double xp,
                                 double E) {
  const Complex fwd = g(x, xp, E);
  const Complex bwd = g(xp, x, E);
  return {0.5 * (fwd + bwd), 0.5 * (fwd - bwd)};
}

AdjointSymmetryReport adjoint_symmetry_check(const Eigen::MatrixXcd& h,
                                             double energy, double eps) {
  if (h.rows() == 0 || h.rows() != h.cols())
    throw ConfigError("adjoint_symmetry_check: nonempty square matrix required");
  if (!(eps > 0.0))
    throw ConfigError("adjoint_symmetry_check: eps must be > 0");
  const Eigen::Index n = h.rows();
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  const Eigen::MatrixXcd g_plus =
      (Complex(energy, eps) * id - h).partialPivLu().solve(id);
  const Eigen::MatrixXcd g_minus =
      (Complex(energy, -eps) * id - h).partialPivLu().solve(id);

  AdjointSymmetryReport rep;
  rep.adjoint_defect = (g_plus.adjoint() - g_minus).cwiseAbs().maxCoeff();
  const Eigen::MatrixXcd skew = g_plus - g_plus.transpose();
  rep.symmetry_defect = skew.cwiseAbs().maxCoeff();
  rep.asymmetry_frobenius = skew.norm();
  return rep;
}

namespace {

struct Bracket {
  double lo, hi;
};

// Bisect to |hi - lo| <= tol (exact zeros shrink toward the lower edge),
// then a few secant steps confined to the bracket.
PoleRoot polish_root(const std::function<double(double)>& f, Bracket b,
                     double tol) {
  double flo = f(b.lo);
  double fhi = f(b.hi);
  while (b.hi - b.lo > tol) {
    const double mid = 0.5 * (b.lo + b.hi);
    const double fm = f(mid);
    if (fm == 0.0) {
      b.hi = mid;
      fhi = fm;
      continue;
    }
    if ((fm > 0.0) == (flo > 0.0)) {
      b.lo = mid;
      flo = fm;
    } else {
      b.hi = mid;
      fhi = fm;
    }
  }
  double x0 = b.lo, f0 = flo;
  double x1 = b.hi, f1 = fhi;
  for (int it = 0; it < 5; ++it) {
    if (f1 == f0) break;
    double x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
    x2 = std::clamp(x2, b.lo, b.hi);
    x0 = x1;
    f0 = f1;
    x1 = x2;
    f1 = f(x2);
  }
  PoleRoot r;
  if (std::fabs(f1) <= std::fabs(f0)) {
    r.energy = x1;
    r.residual = std::fabs(f1);
  } else {
    r.energy = x0;
    r.residual = std::fabs(f0);
  }
  r.bracket_width = b.hi - b.lo;
  return r;
}

}  // namespace

PoleReport demon_pole_scan(double e_lo, double e_hi, const ContainerSpec& spec,
                           const ActivationSpec& act, double bisect_tol,
                           int threads) {
  if (!(e_lo > 0.0) || !(e_hi > e_lo))
    throw ConfigError("demon_pole_scan: need 0 < e_lo < e_hi");
  if (!(bisect_tol > 0.0))
    throw ConfigError("demon_pole_scan: bisect_tol must be > 0");
  const ContainerIntegrals ci =
      container_integrals(spec, act, IntegralMode::approx);
  auto dval = [&spec, &ci](double E) {
    return std::real(1.0 - g0_box_center(E, spec) * ci.q1(E));
  };

  PoleReport rep;
  rep.e_lo = e_lo;
  rep.e_hi = e_hi;
  rep.flagged_extra_pole = ci.extra_pole_energy;

  // Partition the window at every eigenenergy (tan or cot singularity) and
  // at the flagged band-edge energy; roots are hunted strictly inside the
  // open subintervals.
  std::vector<double> cuts{e_lo, e_hi};
  for (int n = 1;; ++n) {
    const double en = spec.eigen_energy(n);
    if (en >= e_hi) break;
    if (en > e_lo) {
      cuts.push_back(en);
      rep.excluded.push_back(en);
    }
  }
  const double ek = ci.extra_pole_energy;
  if (ek > e_lo && ek < e_hi &&
      std::none_of(cuts.begin(), cuts.end(),
                   [ek](double c) { return std::fabs(c - ek) < 1e-12; }))
    cuts.push_back(ek);
  std::sort(cuts.begin(), cuts.end());

  const double pad = 1e-9;
  std::vector<Bracket> intervals;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i] + pad;
    const double hi = cuts[i + 1] - pad;
    if (hi > lo) intervals.push_back({lo, hi});
  }

  std::vector<std::vector<PoleRoot>> found(intervals.size());
  parallel_for(intervals.size(), threads, [&](std::size_t i) {
    const Bracket iv = intervals[i];
    constexpr int kSamples = 256;
    const double h = (iv.hi - iv.lo) / kSamples;
    double prev_x = iv.lo;
    double prev_f = dval(prev_x);
    for (int k = 1; k <= kSamples; ++k) {
      const double x = (k == kSamples) ? iv.hi : iv.lo + k * h;
      const double fx = dval(x);
      if (prev_f == 0.0) {
        found[i].push_back({prev_x, 0.0, 0.0});
      } else if (fx != 0.0 && (fx > 0.0) != (prev_f > 0.0)) {
        found[i].push_back(polish_root(dval, {prev_x, x}, bisect_tol));
      }
      prev_x = x;
      prev_f = fx;
    }
  });

  for (auto& block : found)
    for (const PoleRoot& r : block) {
      // the band-edge energy is a removable point of the denominator, never
      // a reported root
      if (ek > 0.0 && std::fabs(r.energy - ek) < 1e-9) continue;
      rep.roots.push_back(r);
    }
  std::sort(rep.roots.begin(), rep.roots.end(),
            [](const PoleRoot& a, const PoleRoot& b) {
              return a.energy < b.energy;
            });
  return rep;
}

void PoleReport::write(std::ostream& os) const {
  os << "window " << fmt_double(e_lo) << ' ' << fmt_double(e_hi) << '\n';
  if (flagged_extra_pole > 0.0)
    os << "flagged " << fmt_double(flagged_extra_pole) << '\n';
  else
    os << "flagged none\n";
  for (double e : excluded) os << "excluded " << fmt_double(e) << '\n';
  for (const PoleRoot& r : roots)
    os << "root " << fmt_double(r.energy) << ' ' << fmt_double(r.residual)
       << ' ' << fmt_double(r.bracket_width) << '\n';
}

PoleReport PoleReport::read(std::istream& is) {
  PoleReport rep;
  bool saw_window = false;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    std::string f1, f2, f3;
    if (tag == "window") {
      ls >> f1 >> f2;
      rep.e_lo = parse_double(f1);
      rep.e_hi = parse_double(f2);
      saw_window = true;
    } else if (tag == "flagged") {
      ls >> f1;
      rep.flagged_extra_pole = (f1 == "none") ? 0.0 : parse_double(f1);
    } else if (tag == "excluded") {
      ls >> f1;
      rep.excluded.push_back(parse_double(f1));
    } else if (tag == "root") {
      ls >> f1 >> f2 >> f3;
      rep.roots.push_back(
          {parse_double(f1), parse_double(f2), parse_double(f3)});
    } else {
      throw ConfigError("pole report: unknown line tag '" + tag + "'");
    }
    if (ls.fail())
      throw ConfigError("pole report: malformed line '" + line + "'");
  }
  if (!saw_window) throw ConfigError("pole report: missing window line");
  return rep;
}

}  // namespace demonbox
