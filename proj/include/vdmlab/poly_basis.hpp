#pragma once

// Evaluation bases for graded polynomial spaces.
//
// Any family b_alpha = z^alpha + (terms of lower total degree) is related to
// the monomials by a unit lower-triangular matrix in the graded order, so
// determinants over a prefix of the graded basis, Gram pivots and Christoffel
// functions are identical in either family. Products of monic Chebyshev
// polynomials scaled to a bounding box, or of monic orthogonal polynomials of
// a discrete measure, keep the matrices well conditioned on real sets at
// high degree.

#include <span>
#include <vector>

#include "vdmlab/graded_basis.hpp"
#include "vdmlab/types.hpp"

namespace vdmlab {

enum class EvalBasisKind { Monomial, ScaledChebyshev, Recurrence };

struct EvalBasis {
  EvalBasisKind kind = EvalBasisKind::Monomial;
  std::vector<double> center;      // per coordinate (ScaledChebyshev)
  std::vector<double> half_width;  // per coordinate (ScaledChebyshev), > 0
  // Recurrence: per coordinate, p_{n+1} = (x - alpha[n]) p_n - beta[n] p_{n-1}
  std::vector<std::vector<double>> alpha, beta;

  static EvalBasis monomial() { return {}; }
  static EvalBasis scaled_chebyshev(const std::vector<double>& lo, const std::vector<double>& hi);

  /// Scaled Chebyshev on the bounding box when every point is real,
  /// otherwise monomials. Points with mask[i] == false are ignored.
  static EvalBasis fit(const std::vector<Point>& points, const std::vector<bool>& mask = {});

  /// Products of the monic orthogonal polynomials of each coordinate's
  /// marginal of sum_k weights[k] delta_{points[k]} (real points only), up to
  /// degree max_degree; computed by Lanczos with reorthogonalization. Where
  /// a marginal has too few atoms the last coefficients are repeated.
  static EvalBasis discrete_orthogonal(const std::vector<Point>& points, const std::vector<double>& weights,
                                       int max_degree);

  const char* name() const noexcept;
  std::size_t dimension() const noexcept {
    return kind == EvalBasisKind::Recurrence ? alpha.size() : center.size();
  }
};

/// out[i] = b_{basis[i]}(z) for i < out.size(). Throws for ScaledChebyshev on a
/// homogeneous-only basis (the change of basis would leave the block).
void evaluate_basis(const EvalBasis& eval, const GradedBasis& basis, const Point& z, std::span<Complex> out);

/// Degree-d homogeneous lift functions at (t, z) in C^{N+1}: for the lift
/// index (d-j, alpha) the value is t^{d-j} z^alpha (monomial) or
/// t^d b_alpha(z / t) (scaled Chebyshev; needs t != 0).
void evaluate_lift_basis(const EvalBasis& eval, const GradedBasis& lift, const Point& tz, std::span<Complex> out);

/// z^alpha
Complex monomial(const MultiIndex& alpha, const Point& z);

}  // namespace vdmlab
