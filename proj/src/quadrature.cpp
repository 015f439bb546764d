#include "vdmlab/quadrature.hpp"

#include <gsl/gsl_integration.h>

#include <cmath>
#include <memory>
#include <numbers>

#include "vdmlab/types.hpp"

namespace vdmlab {

Rule1D gauss_legendre(int n, double a, double b) {
  require(n >= 1, "Gauss-Legendre order must be >= 1");
  require(a < b, "Gauss-Legendre interval must satisfy a < b");
  std::unique_ptr<gsl_integration_glfixed_table, decltype(&gsl_integration_glfixed_table_free)> table(
      gsl_integration_glfixed_table_alloc(static_cast<size_t>(n)), &gsl_integration_glfixed_table_free);
  if (!table) fail(ErrorKind::ResourceLimit, "could not allocate Gauss-Legendre table");
  Rule1D rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i)
    gsl_integration_glfixed_point(a, b, static_cast<size_t>(i), &rule.nodes[i], &rule.weights[i], table.get());
  return rule;
}

Rule1D composite_gauss_legendre(int panels, int order, double a, double b) {
  require(panels >= 1, "panel count must be >= 1");
  const Rule1D ref = gauss_legendre(order, 0.0, 1.0);
  Rule1D rule;
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    for (int i = 0; i < order; ++i) {
      rule.nodes.push_back(lo + h * ref.nodes[i]);
      rule.weights.push_back(h * ref.weights[i]);
    }
  }
  return rule;
}

Rule1D gauss_chebyshev(int n, double a, double b) {
  require(n >= 1, "Gauss-Chebyshev order must be >= 1");
  require(a < b, "Gauss-Chebyshev interval must satisfy a < b");
  Rule1D rule;
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  for (int k = n - 1; k >= 0; --k) {
    rule.nodes.push_back(c + h * std::cos(std::numbers::pi * (2.0 * k + 1.0) / (2.0 * n)));
    rule.weights.push_back(1.0 / n);
  }
  return rule;
}

}  // namespace vdmlab
