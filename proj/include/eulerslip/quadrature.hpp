#pragma once

#include <vector>

namespace eulerslip {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule (Newton on the Legendre recurrence).
const GaussRule& gauss_legendre(int n);

/// Composite Gauss-Legendre integral of f over [a, b].
template <typename F>
double integrate(F&& f, double a, double b, int panels = 16, int order = 20) {
  const GaussRule& g = gauss_legendre(order);
  const double h = (b - a) / panels;
  double acc = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    double panel = 0.0;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      panel += g.weights[i] * f(lo + 0.5 * h * (g.nodes[i] + 1.0));
    }
    acc += 0.5 * h * panel;
  }
  return acc;
}

}  // namespace eulerslip
