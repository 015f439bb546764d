#pragma once

#include <vector>

namespace vdmlab {

struct Rule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [a, b]; exact for degree <= 2n - 1.
Rule1D gauss_legendre(int n, double a, double b);

/// `panels` equal panels of `order`-point Gauss-Legendre on [a, b].
Rule1D composite_gauss_legendre(int panels, int order, double a, double b);

/// n-point Gauss-Chebyshev rule for the arcsine probability measure
/// dx / (pi sqrt((x-a)(b-x))) on [a, b]; exact for degree <= 2n - 1.
Rule1D gauss_chebyshev(int n, double a, double b);

}  // namespace vdmlab
