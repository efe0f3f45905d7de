#pragma once

#include <vector>

namespace demonbox {

// Nodes and weights for discretizing \int f(y) dy ~ sum_i w_i f(y_i),
// or a plain weighted sum over lattice sites.
struct QuadratureGrid {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

// Gauss-Legendre rule on [-1, 1]; nodes ascending, exact for degree 2n-1.
QuadratureGrid gauss_legendre(int n);

// Composite rule: `panels` equal panels over [lo, hi], `nodes_per_panel`
// Gauss-Legendre points each.  Panel edges never coincide with nodes, so an
// even panel count around a symmetric interval keeps integrable odd
// singularities at the midpoint balanced (principal-value behaviour).
QuadratureGrid panelized_gauss_legendre(double lo, double hi, int panels,
                                        int nodes_per_panel);

// Integer sites -half_sites..half_sites with unit weights.
QuadratureGrid lattice_sites(int half_sites);

}  // namespace demonbox
