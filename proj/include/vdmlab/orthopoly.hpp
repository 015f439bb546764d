#pragma once

// Gram matrices of the graded basis in L^2(w^{2d} mu), monic orthogonal
// polynomials via Cholesky, the product formula Z_d = m_d! prod ||q_j||^2,
// its circled-lift counterpart and Christoffel functions.
//
// Entries are assembled in a working basis b_j = e_j + (lower-index terms)
// (products of the marginals' monic orthogonal polynomials on real node
// sets, which keeps weighted Gram matrices well scaled). The change of basis is unit
// lower-triangular, so the Cholesky pivots, det G, the monic norms and K_d
// are those of the monomial Gram matrix.

#include <optional>
#include <string>
#include <vector>

#include "vdmlab/domain_models.hpp"
#include "vdmlab/graded_basis.hpp"
#include "vdmlab/log_value.hpp"
#include "vdmlab/poly_basis.hpp"
#include "vdmlab/vandermonde.hpp"

namespace vdmlab {

inline constexpr double kIllConditioned = 1e12;
inline constexpr std::size_t kMaxGramSize = 4096;

struct GramMatrix {
  int degree = 0;
  GradedBasis basis;
  EvalBasis eval;
  CMatrix entries;
  // R with G = R^H R and a real positive diagonal, from Householder QR of the
  // weighted evaluation matrix; empty when there are fewer nodes than basis
  // functions. Pivots taken from R avoid squaring the condition number.
  CMatrix factor;
  double condition = 0.0;  // 2-norm condition of the diagonally scaled matrix
  bool ill_conditioned = false;
  bool from_cache = false;
};

/// G_ij = int b_i conj(b_j) w^{2d} dmu for |alpha| <= d. Needs an exact
/// (atomic or quadrature) measure; a sampler throws Unsupported. With
/// VDMLAB_CACHE naming a directory, matrices are memoized there.
GramMatrix gram(const MeasureModel& mu, const WeightModel& w, int d,
                const std::optional<EvalBasis>& eval = std::nullopt);

/// Gram matrix of an arbitrary basis (plain or homogeneous lift block) with
/// the measure weights used as given.
GramMatrix gram_of(const MeasureModel& mu, const GradedBasis& basis, const EvalBasis& eval,
                   const std::vector<double>& node_factor = {});

struct OrthoBasis {
  GradedBasis basis;
  EvalBasis eval;
  CMatrix chol;                    // G = L L^H
  std::vector<double> norms_sq;    // ||q_j||^2 = L_jj^2 of the monic family
  CMatrix monic;                   // unit lower-triangular: q_j = sum_k monic(j,k) b_k
  double det_discrepancy = 0.0;    // |log prod norms_sq - log det G (LU)|
  double condition = 0.0;
  bool ill_conditioned = false;

  double log_norm_product() const;
  /// q_hat(z) = L^{-1} b(z); orthonormal values at z.
  std::vector<Complex> orthonormal_values(const Point& z) const;
};

/// L = R^H when the QR factor is present, Cholesky of G otherwise; the pivot
/// test is L_jj^2 >= 1e-13 G_jj and failure throws NumericalDegeneracy
/// naming the index j and its exponent.
OrthoBasis orthonormalize(const GramMatrix& g);

struct ZdResult {
  LogValue z;           // Z_d
  double root = 0.0;    // Z_d^{1/(2 l_d)} (d >= 1)
  double condition = 0.0;
  bool ill_conditioned = false;
  OrthoBasis ortho;
};

ZdResult z_d_product(const MeasureModel& mu, const WeightModel& w, int d);

/// tilde-Z_d from the degree-d homogeneous lift block orthonormalized in
/// L^2(nu), nu = m_lambda (x) mu with `phase_resolution` >= 2d+1 circle nodes.
ZdResult z_d_lift(const MeasureModel& mu, const WeightModel& w, int d, int phase_resolution);

struct ChristoffelReport {
  std::vector<double> kernel;   // K_d at the evaluation points
  std::vector<double> density;  // K_d w^{2d} / m_d at the evaluation points
  double mass = 0.0;            // int K_d w^{2d} / m_d dmu
  std::vector<MultiIndex> moment_indices;
  std::vector<Complex> moments; // of the measure K_d w^{2d} / m_d dmu, |alpha| <= 4
};

ChristoffelReport christoffel(const MeasureModel& mu, const WeightModel& w, int d, const std::vector<Point>& points);

struct BernsteinMarkovProbe {
  std::vector<std::pair<int, double>> ratios;  // (d, sup |w^d p| / ||w^d p||) maximized over p
  double epsilon = 0.0;                        // fitted growth ratio ~ C (1 + eps)^d
};

/// Ratios sqrt(max over sup_mesh of K_d w^{2d}) for d = 1..d_max.
BernsteinMarkovProbe bernstein_markov_probe(const MeasureModel& mu, const WeightModel& w, int d_max,
                                            const std::vector<Point>& sup_mesh);

}  // namespace vdmlab
