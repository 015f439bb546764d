#include "vdmlab/vandermonde.hpp"

#include <algorithm>
#include <cmath>

namespace vdmlab {

namespace {

void check_finite(const std::vector<Point>& points) {
  for (const Point& p : points)
    for (const Complex& c : p)
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
        fail(ErrorKind::InvalidArgument, "non-finite point coordinate");
}

int degree_for(std::size_t n, int dimension) {
  int d = 0;
  while (count_monomials(dimension, d) < n) ++d;
  return d;
}

bool lex_less(const Point& a, const Point& b) {
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k].real() != b[k].real()) return a[k].real() < b[k].real();
    if (a[k].imag() != b[k].imag()) return a[k].imag() < b[k].imag();
  }
  return false;
}

}  // namespace

bool has_duplicate(const std::vector<Point>& points) {
  std::vector<const Point*> sorted;
  for (const Point& p : points) sorted.push_back(&p);
  std::sort(sorted.begin(), sorted.end(), [](const Point* a, const Point* b) { return lex_less(*a, *b); });
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (*sorted[i] == *sorted[i - 1]) return true;
  return false;
}

LogValue log_det(CMatrix a) {
  require(a.rows() == a.cols(), "determinant needs a square matrix");
  const Eigen::Index n = a.rows();
  if (n == 0) return LogValue::one();
  double log_scale = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double s = a.row(i).cwiseAbs().maxCoeff();
    if (s == 0.0) return LogValue::zero();
    a.row(i) /= s;
    log_scale += std::log(s);
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    const double s = a.col(j).cwiseAbs().maxCoeff();
    if (s == 0.0) return LogValue::zero();
    a.col(j) /= s;
    log_scale += std::log(s);
  }
  Eigen::PartialPivLU<CMatrix> lu(a);
  const CMatrix& m = lu.matrixLU();
  LogValue out = LogValue::from_log(log_scale, Complex{lu.permutationP().determinant() * 1.0, 0.0});
  for (Eigen::Index i = 0; i < n; ++i) {
    out *= LogValue::from(m(i, i));
    if (out.is_zero()) return out;
  }
  return out;
}

CMatrix vandermonde_matrix(const std::vector<Point>& points, const GradedBasis& basis, const EvalBasis& eval) {
  const std::size_t n = points.size();
  require(n >= 1, "Vandermonde needs at least one point");
  require(basis.size() >= n, "basis has fewer entries than points");
  check_finite(points);
  CMatrix v(n, n);
  std::vector<Complex> col(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (basis.homogeneous)
      evaluate_lift_basis(eval, basis, points[j], col);
    else
      evaluate_basis(eval, basis, points[j], col);
    for (std::size_t i = 0; i < n; ++i) v(i, j) = col[i];
  }
  return v;
}

LogValue vdm(const std::vector<Point>& points, const GradedBasis& basis, const EvalBasis& eval) {
  const CMatrix v = vandermonde_matrix(points, basis, eval);
  if (has_duplicate(points)) return LogValue::zero();
  return log_det(v);
}

LogValue vdm(const std::vector<Point>& points) {
  require(!points.empty(), "Vandermonde needs at least one point");
  const int N = static_cast<int>(points.front().size());
  return vdm(points, enumerate_basis(N, degree_for(points.size(), N)));
}

LogValue vdmh(const std::vector<Point>& points, int degree, const EvalBasis& eval) {
  require(!points.empty(), "homogeneous Vandermonde needs points");
  const int dim = static_cast<int>(points.front().size());
  require(dim >= 2, "homogeneous Vandermonde points live in C^{N+1}, N >= 1");
  const GradedBasis lift = lift_basis(dim - 1, degree);
  require(points.size() == lift.size(),
          "homogeneous Vandermonde needs exactly h_d = " + std::to_string(lift.size()) + " points");
  for (const Point& p : points)
    if (std::all_of(p.begin(), p.end(), [](Complex c) { return c == Complex{}; }))
      return degree == 0 ? LogValue::one() : LogValue::zero();
  return vdm(points, lift, eval);
}

LogValue weighted_vdm(const std::vector<Point>& points, const GradedBasis& basis, const WeightModel& weight,
                      const EvalBasis& eval) {
  LogValue v = vdm(points, basis, eval);
  if (v.is_zero() || weight.unit) return v;
  const int exponent = basis[points.size() - 1].degree;
  double s = 0.0;
  for (const Point& p : points) {
    const double q = weight.q(p);
    if (std::isnan(q)) fail(ErrorKind::InvalidArgument, "weight evaluator returned NaN");
    if (q == std::numeric_limits<double>::infinity()) return exponent == 0 ? v : LogValue::zero();
    s -= exponent * q;
  }
  return v * LogValue::from_log(s);
}

LiftCheck lift_factorization_check(const std::vector<Point>& base_points, const std::vector<Complex>& t, int degree) {
  require(!base_points.empty() && base_points.size() == t.size(), "need one t per base point");
  const int N = static_cast<int>(base_points.front().size());
  const GradedBasis plain = enumerate_basis(N, degree);
  require(base_points.size() == plain.size(), "lift check needs exactly m_d base points");
  std::vector<Point> lifted;
  double log_t = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] == Complex{}) fail(ErrorKind::InvalidArgument, "lift factorization needs every t_i != 0");
    Point p{t[i]};
    for (const Complex& c : base_points[i]) p.push_back(t[i] * c);
    lifted.push_back(std::move(p));
    log_t += std::log(std::abs(t[i]));
  }
  LiftCheck out;
  const LogValue lhs = vdmh(lifted, degree);
  const LogValue base = vdm(base_points, plain);
  out.log_vdmh = lhs.log_abs;
  out.log_factored = base.is_zero() ? base.log_abs : degree * log_t + base.log_abs;
  out.discrepancy = (lhs.is_zero() && base.is_zero()) ? 0.0 : std::abs(out.log_vdmh - out.log_factored);
  return out;
}

}  // namespace vdmlab
