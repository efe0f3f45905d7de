#include "demonbox/quadrature.hpp"

#include <cmath>

#include "demonbox/errors.hpp"

namespace demonbox {

QuadratureGrid gauss_legendre(int n) {
  if (n < 1) throw ConfigError("gauss_legendre: need n >= 1");
  QuadratureGrid g;
  g.nodes.resize(n);
  g.weights.resize(n);
  // Newton on P_n with the Chebyshev-like initial guess; symmetric pairs.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    g.nodes[i] = -x;
    g.nodes[n - 1 - i] = x;
    g.weights[i] = w;
    g.weights[n - 1 - i] = w;
  }
  return g;
}

QuadratureGrid panelized_gauss_legendre(double lo, double hi, int panels,
                                        int nodes_per_panel) {
  if (!(hi > lo)) throw ConfigError("panelized_gauss_legendre: need hi > lo");
  if (panels < 1) throw ConfigError("panelized_gauss_legendre: need panels >= 1");
  const QuadratureGrid base = gauss_legendre(nodes_per_panel);
  QuadratureGrid g;
  g.nodes.reserve(static_cast<std::size_t>(panels) * nodes_per_panel);
  g.weights.reserve(static_cast<std::size_t>(panels) * nodes_per_panel);
  const double h = (hi - lo) / panels;
  for (int p = 0; p < panels; ++p) {
    const double a = lo + p * h;
    const double mid = a + 0.5 * h;
    for (int i = 0; i < nodes_per_panel; ++i) {
      g.nodes.push_back(mid + 0.5 * h * base.nodes[i]);
      g.weights.push_back(0.5 * h * base.weights[i]);
    }
  }
  return g;
}

QuadratureGrid lattice_sites(int half_sites) {
  if (half_sites < 0) throw ConfigError("lattice_sites: need half_sites >= 0");
  QuadratureGrid g;
  g.nodes.reserve(2 * half_sites + 1);
  g.weights.assign(2 * half_sites + 1, 1.0);
  for (int n = -half_sites; n <= half_sites; ++n)
    g.nodes.push_back(static_cast<double>(n));
  return g;
}

}  // namespace demonbox
