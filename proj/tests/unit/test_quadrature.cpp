#include <doctest.h>

#include <cmath>

#include "vdmlab/quadrature.hpp"

using namespace vdmlab;

namespace {
double apply(const Rule1D& r, int k) {
  double s = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], k);
  return s;
}
}  // namespace

TEST_CASE("Gauss-Legendre integrates polynomials of degree 2n-1") {
  for (int n : {1, 4, 9, 20}) {
    const Rule1D r = gauss_legendre(n, -0.5, 2.0);
    for (int k = 0; k <= 2 * n - 1; ++k) {
      const double exact = (std::pow(2.0, k + 1) - std::pow(-0.5, k + 1)) / (k + 1);
      CHECK(apply(r, k) == doctest::Approx(exact).epsilon(1e-12));
    }
  }
}

TEST_CASE("composite rule") {
  const Rule1D r = composite_gauss_legendre(8, 16, 0.0, 3.0);
  CHECK(r.nodes.size() == 128);
  double s = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::exp(-r.nodes[i]);
  CHECK(s == doctest::Approx(1.0 - std::exp(-3.0)).epsilon(1e-14));
}

TEST_CASE("Gauss-Chebyshev reproduces arcsine moments") {
  // int x^{2k} d(arcsine on [-1,1]) = C(2k,k) / 4^k
  const Rule1D r = gauss_chebyshev(12, -1.0, 1.0);
  double c = 1.0;
  for (int k = 0; k < 12; ++k) {
    CHECK(apply(r, 2 * k) == doctest::Approx(c).epsilon(1e-13));
    CHECK(std::abs(apply(r, 2 * k + 1)) < 1e-14);
    c *= (2.0 * k + 1) * (2.0 * k + 2) / ((k + 1.0) * (k + 1.0) * 4.0);
  }
  const Rule1D s = gauss_chebyshev(5, 0.0, 4.0);
  CHECK(apply(s, 0) == doctest::Approx(1.0));
  CHECK(apply(s, 1) == doctest::Approx(2.0));
}
