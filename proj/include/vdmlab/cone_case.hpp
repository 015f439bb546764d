#pragma once

// Z_d on an unbounded real cone with d mu = |R(x)| dx and Q >= c |x|^gamma,
// computed on the truncation Gamma cap B_T.

#include <cstdint>
#include <vector>

#include "vdmlab/domain_models.hpp"
#include "vdmlab/log_value.hpp"

namespace vdmlab {

/// Half-line [0, inf) for N = 1; the sector {theta0 <= arg x <= theta1} of
/// R^2 for N = 2 (the quadrant by default).
struct ConeProblem {
  int dimension = 1;
  double theta0 = 0.0;
  double theta1 = 1.5707963267948966;
  RealPolynomial density = RealPolynomial::constant(1, 1.0);
  WeightModel weight = WeightModel::power(0.5, 1.0);
  double T = 0.0;       // 0: from truncate_cone per degree
  double tol = 1e-9;    // truncation tolerance

  static ConeProblem half_line(WeightModel w, RealPolynomial r = RealPolynomial::constant(1, 1.0));
  static ConeProblem sector(double theta0, double theta1, WeightModel w,
                            RealPolynomial r = RealPolynomial::constant(2, 1.0));
};

/// Quadrature for |R| dx on Gamma cap B_T. Radial Gauss-Legendre panels of
/// 16 points sized so that 2 d Q changes by at most 8 / resolution per panel
/// and at least 4(d+1) radial points; sign changes of R on the half-line
/// become panel boundaries.
MeasureModel cone_measure(const ConeProblem& problem, int d, double T, int resolution = 1);

struct ConeRow {
  int d = 0;
  double T = 0.0;
  double log_z = 0.0;       // log Z_d on Gamma cap B_T
  double root = 0.0;        // Z_d^{1/(2 l_d)}
  double log_z_2T = 0.0;    // recomputed on Gamma cap B_{2T}
  double stability = 0.0;   // |log_z - log_z_2T|
  double condition = 0.0;
  bool ill_conditioned = false;
};

struct ConeSeries {
  std::vector<ConeRow> rows;
  double stability_tol = 1e-6;
};

/// Rows d = 1..d_max. Throws TruncationInsufficient when a row is less
/// stable under T -> 2T than stability_tol.
ConeSeries cone_zd_series(const ConeProblem& problem, int d_max, int resolution = 1, double stability_tol = 1e-6);

/// (d+1)! prod_{n=0}^{d} (n!)^2 beta^{-2n-1} with beta = 2 d c: Z_d on
/// [0, inf) for Q = c x, R = 1, from monic Laguerre norms.
double laguerre_log_zd(int d, double c);

struct LocalizationProbe {
  int samples = 0;
  int interior = 0;            // maximizer strictly inside B_T
  double max_radius_ratio = 0.0;  // largest |argmax| / T seen
};

/// Random combinations of the orthonormal family of w^{2d} |R| dx, maximized
/// as |w^d p| over a mesh of Gamma cap B_T.
LocalizationProbe localization_probe(const ConeProblem& problem, int d, int samples, std::uint64_t seed);

}  // namespace vdmlab
