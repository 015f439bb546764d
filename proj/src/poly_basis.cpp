#include "vdmlab/poly_basis.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

namespace vdmlab {

EvalBasis EvalBasis::scaled_chebyshev(const std::vector<double>& lo, const std::vector<double>& hi) {
  require(lo.size() == hi.size() && !lo.empty(), "box bounds must have matching nonzero length");
  EvalBasis e;
  e.kind = EvalBasisKind::ScaledChebyshev;
  for (std::size_t k = 0; k < lo.size(); ++k) {
    require(std::isfinite(lo[k]) && std::isfinite(hi[k]) && lo[k] <= hi[k], "invalid box bounds");
    e.center.push_back(0.5 * (lo[k] + hi[k]));
    const double h = 0.5 * (hi[k] - lo[k]);
    e.half_width.push_back(h > 0.0 ? h : 1.0);
  }
  return e;
}

EvalBasis EvalBasis::fit(const std::vector<Point>& points, const std::vector<bool>& mask) {
  if (points.empty()) return monomial();
  const std::size_t dim = points.front().size();
  std::vector<double> lo(dim, std::numeric_limits<double>::infinity());
  std::vector<double> hi(dim, -std::numeric_limits<double>::infinity());
  bool any = false;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!mask.empty() && !mask[i]) continue;
    for (std::size_t k = 0; k < dim; ++k) {
      const Complex z = points[i][k];
      if (z.imag() != 0.0) return monomial();
      lo[k] = std::min(lo[k], z.real());
      hi[k] = std::max(hi[k], z.real());
    }
    any = true;
  }
  if (!any) return monomial();
  return scaled_chebyshev(lo, hi);
}

const char* EvalBasis::name() const noexcept {
  switch (kind) {
    case EvalBasisKind::Monomial: return "monomial";
    case EvalBasisKind::ScaledChebyshev: return "scaled-chebyshev";
    case EvalBasisKind::Recurrence: return "discrete-orthogonal";
  }
  return "?";
}

EvalBasis EvalBasis::discrete_orthogonal(const std::vector<Point>& points, const std::vector<double>& weights,
                                         int max_degree) {
  require(!points.empty() && points.size() == weights.size(), "need matching points and weights");
  require(max_degree >= 0, "degree must be >= 0");
  const std::size_t N = points.front().size();
  const auto M = static_cast<Eigen::Index>(points.size());
  EvalBasis e;
  e.kind = EvalBasisKind::Recurrence;
  e.alpha.assign(N, std::vector<double>(max_degree + 1, 0.0));
  e.beta.assign(N, std::vector<double>(max_degree + 1, 0.0));
  Eigen::VectorXd s(M);
  for (Eigen::Index i = 0; i < M; ++i) {
    require(weights[i] >= 0.0, "weights must be nonnegative");
    s(i) = std::sqrt(weights[i]);
  }
  require(s.norm() > 0.0, "weights must not all vanish");
  for (std::size_t k = 0; k < N; ++k) {
    Eigen::VectorXd x(M);
    for (Eigen::Index i = 0; i < M; ++i) {
      require(points[i][k].imag() == 0.0, "discrete orthogonal basis needs real points");
      x(i) = points[i][k].real();
    }
    // orthonormal vectors v_n = s * p_n / ||p_n||
    std::vector<Eigen::VectorXd> v{s / s.norm()};
    int n = 0;
    for (; n < max_degree; ++n) {
      Eigen::VectorXd u = x.cwiseProduct(v[n]);
      e.alpha[k][n] = u.dot(v[n]);
      for (int pass = 0; pass < 2; ++pass)
        for (const auto& w : v) u -= w.dot(u) * w;
      const double b = u.norm();
      if (!(b > 1e-13 * (x.cwiseAbs().maxCoeff() + 1e-300))) break;
      e.beta[k][n + 1] = b * b;
      v.push_back(u / b);
    }
    // too few atoms: continue with the last coefficients (still monic)
    for (int m = n; m <= max_degree; ++m) {
      e.alpha[k][m] = n > 0 ? e.alpha[k][n - 1] : e.alpha[k][0];
      if (m >= 1) e.beta[k][m] = m > 1 ? e.beta[k][m - 1] : 1.0;
    }
  }
  return e;
}

Complex monomial(const MultiIndex& alpha, const Point& z) {
  Complex v{1.0, 0.0};
  for (std::size_t k = 0; k < alpha.exponents.size(); ++k)
    for (int e = 0; e < alpha.exponents[k]; ++e) v *= z[k];
  return v;
}

namespace {

// table[k][n] = value of the 1D family of degree n in coordinate k
void coordinate_table(const EvalBasis& eval, const Point& z, int max_degree,
                      std::vector<std::vector<Complex>>& table) {
  table.assign(z.size(), std::vector<Complex>(static_cast<std::size_t>(max_degree) + 1));
  for (std::size_t k = 0; k < z.size(); ++k) {
    auto& row = table[k];
    row[0] = 1.0;
    if (max_degree == 0) continue;
    if (eval.kind == EvalBasisKind::Monomial) {
      for (int n = 1; n <= max_degree; ++n) row[n] = row[n - 1] * z[k];
      continue;
    }
    if (eval.kind == EvalBasisKind::Recurrence) {
      const auto& a = eval.alpha[k];
      const auto& b = eval.beta[k];
      require(static_cast<int>(a.size()) > max_degree - 1, "recurrence basis holds too few degrees");
      row[1] = z[k] - a[0];
      for (int n = 1; n < max_degree; ++n) row[n + 1] = (z[k] - a[n]) * row[n] - b[n] * row[n - 1];
      continue;
    }
    const Complex x = z[k] - eval.center[k];
    const double q = 0.25 * eval.half_width[k] * eval.half_width[k];
    row[1] = x;
    if (max_degree >= 2) row[2] = x * row[1] - 2.0 * q;
    for (int n = 2; n < max_degree; ++n) row[n + 1] = x * row[n] - q * row[n - 1];
  }
}

int max_degree_of(const GradedBasis& basis, std::size_t count) {
  int md = 0;
  for (std::size_t i = 0; i < count; ++i)
    for (int e : basis.indices[i].exponents) md = std::max(md, e);
  return md;
}

}  // namespace

void evaluate_basis(const EvalBasis& eval, const GradedBasis& basis, const Point& z, std::span<Complex> out) {
  require(out.size() <= basis.size(), "requested more basis values than the basis holds");
  require(z.size() == static_cast<std::size_t>(basis.dimension), "point dimension does not match basis");
  if (eval.kind != EvalBasisKind::Monomial) {
    if (basis.homogeneous) fail(ErrorKind::InvalidArgument, "non-monomial basis on a homogeneous block");
    require(eval.dimension() == z.size(), "evaluation basis dimension mismatch");
  }
  thread_local std::vector<std::vector<Complex>> table;
  coordinate_table(eval, z, max_degree_of(basis, out.size()), table);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto& e = basis.indices[i].exponents;
    Complex v = table[0][e[0]];
    for (std::size_t k = 1; k < e.size(); ++k) v *= table[k][e[k]];
    out[i] = v;
  }
}

void evaluate_lift_basis(const EvalBasis& eval, const GradedBasis& lift, const Point& tz, std::span<Complex> out) {
  require(lift.homogeneous, "lift evaluation needs a homogeneous lift basis");
  require(tz.size() == static_cast<std::size_t>(lift.dimension), "lifted point dimension mismatch");
  require(out.size() <= lift.size(), "requested more lift values than the basis holds");
  if (eval.kind == EvalBasisKind::Monomial) {
    thread_local std::vector<std::vector<Complex>> table;
    coordinate_table(eval, tz, max_degree_of(lift, out.size()), table);
    for (std::size_t i = 0; i < out.size(); ++i) {
      const auto& e = lift.indices[i].exponents;
      Complex v = table[0][e[0]];
      for (std::size_t k = 1; k < e.size(); ++k) v *= table[k][e[k]];
      out[i] = v;
    }
    return;
  }
  const Complex t = tz[0];
  require(t != Complex{}, "homogenized Chebyshev lift needs t != 0");
  require(eval.dimension() + 1 == tz.size(), "evaluation basis dimension mismatch");
  Point lambda(tz.size() - 1);
  for (std::size_t k = 0; k < lambda.size(); ++k) lambda[k] = tz[k + 1] / t;
  thread_local std::vector<std::vector<Complex>> table;
  coordinate_table(eval, lambda, lift.max_degree, table);
  Complex td{1.0, 0.0};
  for (int n = 0; n < lift.max_degree; ++n) td *= t;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto& e = lift.indices[i].exponents;
    Complex v = td;
    for (std::size_t k = 1; k < e.size(); ++k) v *= table[k - 1][e[k]];
    out[i] = v;
  }
}

}  // namespace vdmlab
