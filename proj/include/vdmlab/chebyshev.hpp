#pragma once

// Chebyshev constants on meshes:
//   plain       Y1(alpha) = min ||z^alpha + sum_{j<i} c_j e_j||_mesh
//   homogeneous Y2(alpha) = same with competitors of degree |alpha| only
//   weighted    Y3(alpha) = min ||w^{|alpha|} (z^alpha + sum_{j<i} c_j e_j)||_mesh
// each solved as a discrete complex minimax problem.

#include <optional>
#include <string>
#include <vector>

#include "vdmlab/domain_models.hpp"
#include "vdmlab/graded_basis.hpp"
#include "vdmlab/poly_basis.hpp"

namespace vdmlab {

enum class ChebMode { Plain, Homogeneous, Weighted };

std::string_view to_string(ChebMode mode) noexcept;
ChebMode parse_cheb_mode(const std::string& name);

struct ChebyshevProblem {
  ChebMode mode = ChebMode::Plain;
  MultiIndex target;
  std::vector<Point> mesh;
  std::vector<Point> fine_mesh;  // optional; used for the mesh gap
  WeightModel weight = WeightModel::unit_weight();  // weighted mode only
};

struct ChebResult {
  double value = 0.0;        // best upper value: sup-norm of the returned polynomial on the mesh
  double lower_bound = 0.0;  // certified lower bound for the mesh minimax value
  double residual = 0.0;     // (value - lower_bound) / value
  double mesh_gap = 0.0;     // sup over fine_mesh / sup over mesh - 1 (0 without a fine mesh)
  int iterations = 0;
  EvalBasis eval;                         // basis the coefficients refer to
  std::vector<MultiIndex> competitors;    // e_j, j < i, in graded order
  std::vector<Complex> coefficients;      // c_j for b_j in `eval`
  // real meshes in one variable: b_j are instead the discrete orthonormal
  // polynomials of w^{2d} on the mesh, and coefficients refer to those
  bool discrete_orthonormal = false;
};

/// Competitor exponents for `target` under `mode`.
std::vector<MultiIndex> competitors(const MultiIndex& target, ChebMode mode);

/// Discrete minimax by Lawson's iteratively reweighted least squares with a
/// pruned active set. Any probability weighting of the mesh gives a lower
/// bound (its weighted least-squares optimum); iteration stops once the
/// certified relative gap is below tol.
ChebResult cheb_constant(const ChebyshevProblem& problem, double tol = 1e-6, int max_iterations = 20000);

struct SubmultiplicativityProbe {
  double y_sum = 0.0;      // Y(alpha + beta)
  double y_product = 0.0;  // Y(alpha) Y(beta)
  bool holds(double slack) const { return y_sum <= y_product * (1.0 + slack); }
};

struct ChebSetup {
  std::vector<Point> mesh;
  std::vector<Point> fine_mesh;
  WeightModel weight = WeightModel::unit_weight();
  double tol = 1e-6;
};

SubmultiplicativityProbe submultiplicativity_probe(const ChebSetup& setup, ChebMode mode, const MultiIndex& alpha,
                                                   const MultiIndex& beta);

/// alpha with |alpha| = d nearest to d * theta by largest remainders (ties
/// broken toward earlier coordinates).
MultiIndex round_direction(const std::vector<double>& theta, int d);

struct DirectionalEstimate {
  std::vector<double> theta;
  std::vector<std::pair<int, double>> values;  // (d, tau(alpha_d) = Y(alpha_d)^{1/d})
  double extrapolated = 0.0;                   // mean of the last `tail` values
  double spread = 0.0;                         // max - min over those values
};

/// Throws InvalidArgument ("boundary direction") unless theta is strictly
/// positive and sums to 1.
DirectionalEstimate directional_constant(const ChebSetup& setup, ChebMode mode, const std::vector<double>& theta,
                                         const std::vector<int>& d_list, int tail = 3);

struct TauMean {
  double full = 0.0;   // (prod_{|alpha|<=d} Y)^{1/l_d}
  double slice = 0.0;  // (prod_{|alpha|=d} Y)^{1/(d h_d)}
  bool degenerate = false;
  std::vector<std::pair<MultiIndex, ChebResult>> constants;  // graded order
};

TauMean tau_geometric_mean(const ChebSetup& setup, int dimension, ChebMode mode, int d);

/// exp of the normalized integral of log T(theta) over the simplex, with
/// T(k/d, 1 - k/d) ~ tau((k, d-k)) on the lattice and the trapezoid rule;
/// N = 1 reduces to tau((d)). Supported for N <= 2.
double zaharjuta_integral(const ChebSetup& setup, int dimension, ChebMode mode, int d);

/// Same rule applied to a known directional function (used as an oracle).
double zaharjuta_trapezoid(const std::vector<double>& log_tau_on_lattice);

}  // namespace vdmlab
