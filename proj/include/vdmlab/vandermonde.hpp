#pragma once

#include <Eigen/Dense>

#include <vector>

#include "vdmlab/domain_models.hpp"
#include "vdmlab/graded_basis.hpp"
#include "vdmlab/log_value.hpp"
#include "vdmlab/poly_basis.hpp"

namespace vdmlab {

using CMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;

/// Determinant of a square matrix in log-domain: rows and columns are
/// prescaled by their max-abs entry, then LU with partial pivoting. An
/// exactly zero row, column or pivot gives LogValue::zero().
LogValue log_det(CMatrix a);

/// [b_i(zeta_j)], i over the first n basis entries, j over the n points.
CMatrix vandermonde_matrix(const std::vector<Point>& points, const GradedBasis& basis,
                           const EvalBasis& eval = EvalBasis::monomial());

/// det [e_i(zeta_j)] over the first n = |points| basis entries. Equal points
/// give an exact zero.
LogValue vdm(const std::vector<Point>& points, const GradedBasis& basis, const EvalBasis& eval = EvalBasis::monomial());

/// vdm with the smallest graded basis holding |points| entries.
LogValue vdm(const std::vector<Point>& points);

/// Degree-d homogeneous Vandermonde of h_d^{(N+1)} points in C^{N+1}.
LogValue vdmh(const std::vector<Point>& points, int degree, const EvalBasis& eval = EvalBasis::monomial());

/// vdm * prod_j w(zeta_j)^{|alpha(n)|}; a zero weight gives zero.
LogValue weighted_vdm(const std::vector<Point>& points, const GradedBasis& basis, const WeightModel& weight,
                      const EvalBasis& eval = EvalBasis::monomial());

struct LiftCheck {
  double log_vdmh = 0.0;      // log |VDMH_d((t_i, t_i lambda_i))|
  double log_factored = 0.0;  // d sum log|t_i| + log |VDM(lambda)|
  double discrepancy = 0.0;   // |difference|, a relative error in log form
};

/// Both sides of the circled-lift factorization for m_d base points.
LiftCheck lift_factorization_check(const std::vector<Point>& base_points, const std::vector<Complex>& t, int degree);

/// True if two points coincide exactly.
bool has_duplicate(const std::vector<Point>& points);

}  // namespace vdmlab
