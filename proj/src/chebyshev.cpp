#include "vdmlab/chebyshev.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>

#include "vdmlab/parallel.hpp"

namespace vdmlab {

namespace {

using CMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
using CVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

struct Columns {
  CVector f;  // target values (weighted)
  CMatrix g;  // competitor values (weighted)
  std::vector<double> wfactor;
};

// Values of the target and competitors on `pts` (rows), weight applied.
Columns assemble(const ChebyshevProblem& p, const EvalBasis& eval, const std::vector<MultiIndex>& comp,
                 const std::vector<Point>& pts) {
  const int N = static_cast<int>(p.target.dimension());
  const int d = p.target.degree;
  const bool homogeneous = p.mode == ChebMode::Homogeneous;
  GradedBasis basis;
  if (homogeneous) {
    basis.dimension = N;
    basis.max_degree = d;
    basis.homogeneous = true;
    basis.indices = homogeneous_block(N, d);
  } else {
    basis = enumerate_basis(N, d);
  }
  const std::size_t target_pos = basis.position(p.target);
  std::vector<std::size_t> comp_pos;
  for (const auto& c : comp) comp_pos.push_back(basis.position(c));
  Columns out;
  out.f.resize(static_cast<Eigen::Index>(pts.size()));
  out.g.resize(static_cast<Eigen::Index>(pts.size()), static_cast<Eigen::Index>(comp.size()));
  out.wfactor.assign(pts.size(), 1.0);
  std::vector<Complex> vals(target_pos + 1);
  for (std::size_t k = 0; k < pts.size(); ++k) {
    require(pts[k].size() == static_cast<std::size_t>(N), "mesh point dimension does not match the index");
    if (homogeneous) {
      // monomials of one degree; no lower-order change of basis available
      for (std::size_t i = 0; i <= target_pos; ++i) vals[i] = monomial(basis.indices[i], pts[k]);
    } else {
      evaluate_basis(eval, basis, pts[k], vals);
    }
    double wf = 1.0;
    if (p.mode == ChebMode::Weighted && d > 0) wf = std::exp(-d * p.weight.q(pts[k]));
    out.wfactor[k] = wf;
    out.f(k) = wf * vals[target_pos];
    for (std::size_t j = 0; j < comp_pos.size(); ++j) out.g(k, j) = wf * vals[comp_pos[j]];
  }
  return out;
}

// Discrete orthonormal polynomials of s^2 on a real mesh, s = w^d / max w^d,
// via Lanczos with full reorthogonalization; evaluated anywhere by the
// three-term recurrence. Their columns stay well conditioned where the
// weighted problem lives even if that is a small part of the mesh hull.
struct Recurrence {
  std::vector<double> a, b;  // p_0 = 1/b_0; b_{j+1} p_{j+1} = (x - a_j) p_j - b_j p_{j-1}
  double q_min = 0.0;
  int d = 0;
  bool weighted = false;

  double log_lead(int j) const {  // p_j = lead_j x^j + ...
    double s = 0.0;
    for (int i = 0; i <= j; ++i) s -= std::log(b[i]);
    return s;
  }
  double scale(const ChebyshevProblem& p, const Point& z) const {
    if (!weighted) return 1.0;
    const double q = p.weight.q(z);
    return std::isfinite(q) ? std::exp(-d * (q - q_min)) : 0.0;
  }
};

bool real_line_problem(const ChebyshevProblem& p) {
  if (p.mode == ChebMode::Homogeneous || p.target.dimension() != 1) return false;
  for (const Point& z : p.mesh)
    if (z.size() != 1 || z[0].imag() != 0.0) return false;
  return true;
}

std::optional<Recurrence> lanczos(const ChebyshevProblem& p) {
  Recurrence rec;
  rec.d = p.target.degree;
  rec.weighted = p.mode == ChebMode::Weighted && rec.d > 0 && !p.weight.unit;
  rec.q_min = std::numeric_limits<double>::infinity();
  const auto M = static_cast<Eigen::Index>(p.mesh.size());
  Eigen::VectorXd x(M), s(M);
  for (Eigen::Index k = 0; k < M; ++k) {
    x(k) = p.mesh[k][0].real();
    if (rec.weighted) rec.q_min = std::min(rec.q_min, p.weight.q(p.mesh[k]));
  }
  if (rec.weighted && !std::isfinite(rec.q_min)) return std::nullopt;
  if (!rec.weighted) rec.q_min = 0.0;
  for (Eigen::Index k = 0; k < M; ++k) s(k) = rec.scale(p, p.mesh[k]);
  const int n = rec.d + 1;
  Eigen::MatrixXd v(M, n);
  rec.b.push_back(s.norm());
  if (!(rec.b[0] > 0.0)) return std::nullopt;
  v.col(0) = s / rec.b[0];
  for (int j = 0; j + 1 < n; ++j) {
    Eigen::VectorXd u = x.cwiseProduct(v.col(j));
    rec.a.push_back(u.dot(v.col(j)));
    u -= rec.a[j] * v.col(j);
    if (j > 0) u -= rec.b[j] * v.col(j - 1);
    for (int pass = 0; pass < 2; ++pass)
      for (int i = 0; i <= j; ++i) u -= v.col(i).dot(u) * v.col(i);
    const double nb = u.norm();
    if (!(nb > 1e-13 * x.cwiseAbs().maxCoeff())) return std::nullopt;
    rec.b.push_back(nb);
    v.col(j + 1) = u / nb;
  }
  return rec;
}

// Target s p_d and competitors s p_j, j < d, on `pts`.
Columns assemble_line(const ChebyshevProblem& p, const Recurrence& rec, const std::vector<Point>& pts) {
  const int d = rec.d;
  Columns out;
  out.f.resize(static_cast<Eigen::Index>(pts.size()));
  out.g.resize(static_cast<Eigen::Index>(pts.size()), d);
  out.wfactor.assign(pts.size(), 1.0);
  std::vector<double> pv(d + 1);
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const double x = pts[k][0].real();
    pv[0] = 1.0 / rec.b[0];
    for (int j = 0; j < d; ++j)
      pv[j + 1] = ((x - rec.a[j]) * pv[j] - (j > 0 ? rec.b[j] * pv[j - 1] : 0.0)) / rec.b[j + 1];
    const double sc = rec.scale(p, pts[k]);
    out.wfactor[k] = sc;
    out.f(k) = sc * pv[d];
    for (int j = 0; j < d; ++j) out.g(k, j) = sc * pv[j];
  }
  return out;
}

double sup_residual(const Columns& c, const CVector& coef) {
  if (c.g.cols() == 0) return c.f.cwiseAbs().maxCoeff();
  return (c.f - c.g * coef).cwiseAbs().maxCoeff();
}


bool is_real_line(const std::vector<Point>& mesh, const Columns& c) {
  for (const Point& p : mesh)
    if (p.size() != 1 || p[0].imag() != 0.0) return false;
  return c.f.imag().isZero(0.0) && c.g.imag().isZero(0.0);
}

struct Solution {
  CVector coef;
  double upper = 0.0;
  double lower = 0.0;
  int iterations = 0;
};

// Discrete Remez exchange for a real Haar system on points of the real line.
// The levelled error on a reference of n+1 points is the minimax value on
// that reference, hence a lower bound for the whole mesh.
std::optional<Solution> remez_real(const std::vector<Point>& mesh, const Columns& c, const std::vector<Eigen::Index>& rows,
                                   double tol) {
  const Eigen::Index n = c.g.cols();
  std::vector<Eigen::Index> order(rows);
  std::sort(order.begin(), order.end(),
            [&](Eigen::Index a, Eigen::Index b) { return mesh[a][0].real() < mesh[b][0].real(); });
  const std::size_t M = order.size();
  if (M < static_cast<std::size_t>(n) + 1) return std::nullopt;
  // initial reference: mesh points nearest to the Chebyshev extrema of the hull
  const double lo = mesh[order.front()][0].real(), hi = mesh[order.back()][0].real();
  std::vector<std::size_t> ref(n + 1);  // positions in `order`
  std::size_t pos = 0;
  for (Eigen::Index j = 0; j <= n; ++j) {
    const double x = 0.5 * (lo + hi) - 0.5 * (hi - lo) * std::cos(std::numbers::pi * j / n);
    while (pos + 1 < M && std::abs(mesh[order[pos + 1]][0].real() - x) <= std::abs(mesh[order[pos]][0].real() - x)) ++pos;
    ref[j] = pos;
  }
  for (std::size_t j = 1; j < ref.size(); ++j) ref[j] = std::max(ref[j], ref[j - 1] + 1);
  for (std::size_t j = ref.size(); j-- > 0;) ref[j] = std::min(ref[j], M - (ref.size() - j));
  for (std::size_t j = 1; j < ref.size(); ++j)
    if (ref[j] <= ref[j - 1]) return std::nullopt;
  Eigen::MatrixXd g = c.g.real();
  Eigen::VectorXd f = c.f.real();
  Solution best;
  best.upper = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 200; ++it) {
    Eigen::MatrixXd a(n + 1, n + 1);
    Eigen::VectorXd b(n + 1);
    for (Eigen::Index j = 0; j <= n; ++j) {
      const Eigen::Index k = order[ref[j]];
      a.row(j).head(n) = g.row(k);
      a(j, n) = (j % 2 == 0) ? 1.0 : -1.0;
      b(j) = f(k);
    }
    // monic Chebyshev columns shrink like 2^{-j}; equilibrate before the rank test
    Eigen::VectorXd scale(n + 1);
    for (Eigen::Index j = 0; j <= n; ++j) {
      scale(j) = a.col(j).cwiseAbs().maxCoeff();
      if (scale(j) == 0.0) return std::nullopt;
      a.col(j) /= scale(j);
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    if (!lu.isInvertible()) return std::nullopt;
    const Eigen::VectorXd x = lu.solve(b).cwiseQuotient(scale);
    const Eigen::VectorXd r = f - g * x.head(n);
    double upper = 0.0;
    std::size_t arg = 0;
    for (std::size_t i = 0; i < M; ++i)
      if (std::abs(r(order[i])) > upper) upper = std::abs(r(order[i])), arg = i;
    best.iterations = it + 1;
    best.lower = std::max(best.lower, std::abs(x(n)));
    if (upper < best.upper) {
      best.upper = upper;
      best.coef = x.head(n).cast<Complex>();
    }
    if (best.upper - best.lower <= std::max(tol * 1e-3, 1e-14) * best.upper) return best;
    // signed runs of the residual; keep the extreme point of each run
    std::vector<std::size_t> ext;
    for (std::size_t i = 0; i < M; ++i) {
      const double v = r(order[i]);
      if (v == 0.0) continue;
      if (!ext.empty() && (r(order[ext.back()]) > 0) == (v > 0)) {
        if (std::abs(v) > std::abs(r(order[ext.back()]))) ext.back() = i;
      } else {
        ext.push_back(i);
      }
    }
    if (ext.size() < ref.size()) return std::nullopt;
    while (ext.size() > ref.size()) {
      // drop an end point, never the global maximum
      const bool front_is_max = ext.front() == arg, back_is_max = ext.back() == arg;
      if (back_is_max || (!front_is_max && std::abs(r(order[ext.front()])) < std::abs(r(order[ext.back()]))))
        ext.erase(ext.begin());
      else
        ext.pop_back();
    }
    if (ext == ref) return best;  // stationary reference: the levelled error is final
    ref = ext;
  }
  return best.upper - best.lower <= tol * best.upper ? std::optional<Solution>(best) : std::nullopt;
}

}  // namespace

std::string_view to_string(ChebMode mode) noexcept {
  switch (mode) {
    case ChebMode::Plain: return "plain";
    case ChebMode::Homogeneous: return "homogeneous";
    case ChebMode::Weighted: return "weighted";
  }
  return "unknown";
}

ChebMode parse_cheb_mode(const std::string& name) {
  if (name == "plain") return ChebMode::Plain;
  if (name == "homogeneous") return ChebMode::Homogeneous;
  if (name == "weighted") return ChebMode::Weighted;
  fail(ErrorKind::InvalidArgument, "unknown Chebyshev mode '" + name + "'");
}

std::vector<MultiIndex> competitors(const MultiIndex& target, ChebMode mode) {
  const int N = static_cast<int>(target.dimension());
  require(N >= 1, "target index needs dimension >= 1");
  std::vector<MultiIndex> out;
  const int lo = mode == ChebMode::Homogeneous ? target.degree : 0;
  for (int j = lo; j <= target.degree; ++j)
    for (auto& a : homogeneous_block(N, j)) {
      if (a == target) return out;
      out.push_back(std::move(a));
    }
  return out;
}

ChebResult cheb_constant(const ChebyshevProblem& p, double tol, int max_iterations) {
  require(tol > 0.0, "tolerance must be positive");
  require(!p.mesh.empty(), "Chebyshev problem needs a nonempty mesh");
  ChebResult res;
  res.competitors = competitors(p.target, p.mode);
  require(p.mesh.size() >= res.competitors.size() + 1, "mesh is smaller than the number of competitors + 1");
  if (p.mode != ChebMode::Homogeneous) {
    std::vector<bool> mask(p.mesh.size(), true);
    if (p.mode == ChebMode::Weighted)
      for (std::size_t k = 0; k < p.mesh.size(); ++k) mask[k] = p.weight.w(p.mesh[k]) > 0.0;
    res.eval = EvalBasis::fit(p.mesh, mask);
  }
  // real line: work with the discrete orthonormal family and undo its
  // normalization at the end (Y = value * exp(-d q_min) / lead_d)
  std::optional<Recurrence> line;
  if (real_line_problem(p)) line = lanczos(p);
  double log_factor = 0.0;
  if (line) {
    log_factor = -line->d * line->q_min - line->log_lead(line->d);
    res.discrete_orthonormal = true;
  }
  const Columns all = line ? assemble_line(p, *line, p.mesh) : assemble(p, res.eval, res.competitors, p.mesh);

  std::vector<Eigen::Index> rows;
  for (std::size_t k = 0; k < all.wfactor.size(); ++k)
    if (all.wfactor[k] > 0.0) rows.push_back(static_cast<Eigen::Index>(k));
  if (rows.empty()) fail(ErrorKind::DegenerateProblem, "weight vanishes on the whole mesh");

  const Eigen::Index n = all.g.cols();
  CVector best_coef = CVector::Zero(n);
  double best_upper = sup_residual(all, best_coef);
  double best_lower = 0.0;

  std::optional<Solution> exact;
  if (n > 0 && is_real_line(p.mesh, all)) exact = remez_real(p.mesh, all, rows, tol);
  if (exact) {
    best_coef = exact->coef;
    best_upper = exact->upper;
    best_lower = std::min(exact->lower, exact->upper);
    res.iterations = exact->iterations;
  } else if (n > 0) {
    std::vector<double> lambda(all.f.size(), 0.0);
    for (auto k : rows) lambda[k] = 1.0 / rows.size();
    std::vector<Eigen::Index> active = rows;
    for (int it = 0; it < max_iterations; ++it) {
      res.iterations = it + 1;
      const Eigen::Index m = static_cast<Eigen::Index>(active.size());
      CMatrix a(m, n);
      CVector b(m);
      for (Eigen::Index r = 0; r < m; ++r) {
        const double s = std::sqrt(lambda[active[r]]);
        a.row(r) = s * all.g.row(active[r]);
        b(r) = s * all.f(active[r]);
      }
      Eigen::CompleteOrthogonalDecomposition<CMatrix> cod(a);
      const CVector coef = cod.solve(b);
      // weighted least-squares optimum for a probability weighting: a lower bound
      const double lower = std::sqrt(std::max(0.0, (b - a * coef).squaredNorm()));
      const CVector r = all.f - all.g * coef;
      double upper = 0.0, active_max = 0.0;
      for (auto k : rows) upper = std::max(upper, std::abs(r(k)));
      for (auto k : active) active_max = std::max(active_max, std::abs(r(k)));
      if (upper < best_upper) {
        best_upper = upper;
        best_coef = coef;
      }
      best_lower = std::max(best_lower, std::min(lower, best_upper));
      if (best_upper - best_lower <= tol * best_upper) break;

      // Lawson update on the active set, then prune and re-admit violators
      double total = 0.0;
      for (auto k : active) total += (lambda[k] *= std::abs(r(k)));
      if (!(total > 0.0)) break;  // zero residual on the active set: exact interpolation
      double lmax = 0.0;
      for (auto k : active) lmax = std::max(lmax, lambda[k] /= total);
      std::vector<Eigen::Index> next;
      for (auto k : active)
        if (lambda[k] > 1e-15 * lmax) next.push_back(k);
        else lambda[k] = 0.0;
      const double admit = std::max(active_max, upper * (1.0 - 1e-9));
      double fresh = 0.0;
      for (auto k : rows)
        if (lambda[k] == 0.0 && std::abs(r(k)) >= admit) {
          lambda[k] = lmax * 1e-3;
          fresh += lambda[k];
          next.push_back(k);
        }
      if (fresh > 0.0) {
        std::sort(next.begin(), next.end());
        double s = 0.0;
        for (auto k : next) s += lambda[k];
        for (auto k : next) lambda[k] /= s;
      }
      active = std::move(next);
    }
  } else {
    best_lower = best_upper;
  }

  const double factor = std::exp(log_factor);
  res.value = best_upper * factor;
  res.lower_bound = best_lower * factor;
  res.residual = best_upper > 0.0 ? (best_upper - best_lower) / best_upper : 0.0;
  res.coefficients.assign(best_coef.data(), best_coef.data() + n);
  if (!p.fine_mesh.empty() && best_upper > 0.0) {
    const Columns fine =
        line ? assemble_line(p, *line, p.fine_mesh) : assemble(p, res.eval, res.competitors, p.fine_mesh);
    res.mesh_gap = sup_residual(fine, best_coef) / best_upper - 1.0;
  }
  return res;
}

SubmultiplicativityProbe submultiplicativity_probe(const ChebSetup& s, ChebMode mode, const MultiIndex& alpha,
                                                   const MultiIndex& beta) {
  require(alpha.dimension() == beta.dimension(), "indices must share one dimension");
  std::vector<int> sum(alpha.exponents);
  for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += beta.exponents[k];
  auto y = [&](const MultiIndex& a) {
    return cheb_constant({mode, a, s.mesh, {}, s.weight}, s.tol).value;
  };
  return {y(MultiIndex(sum)), y(alpha) * y(beta)};
}

MultiIndex round_direction(const std::vector<double>& theta, int d) {
  require(!theta.empty() && d >= 0, "direction needs entries and d >= 0");
  std::vector<int> a(theta.size());
  std::vector<std::pair<double, std::size_t>> rem;
  int used = 0;
  for (std::size_t k = 0; k < theta.size(); ++k) {
    const double x = d * theta[k];
    a[k] = static_cast<int>(std::floor(x));
    used += a[k];
    rem.emplace_back(x - a[k], k);
  }
  std::stable_sort(rem.begin(), rem.end(), [](const auto& l, const auto& r) { return l.first > r.first; });
  for (int i = 0; used < d; ++i, ++used) ++a[rem[i % rem.size()].second];
  return MultiIndex(a);
}

DirectionalEstimate directional_constant(const ChebSetup& s, ChebMode mode, const std::vector<double>& theta,
                                         const std::vector<int>& d_list, int tail) {
  double sum = 0.0;
  for (double t : theta) {
    if (!(t > 0.0)) fail(ErrorKind::InvalidArgument, "boundary direction: theta must be strictly positive");
    sum += t;
  }
  require(std::abs(sum - 1.0) <= 1e-12, "theta must sum to 1");
  require(!d_list.empty() && tail >= 1, "need at least one degree");
  for (std::size_t i = 0; i < d_list.size(); ++i) {
    require(d_list[i] >= 1, "degrees must be >= 1");
    if (i > 0) require(d_list[i] > d_list[i - 1], "degree list must be increasing");
  }
  DirectionalEstimate out;
  out.theta = theta;
  out.values.resize(d_list.size());
  parallel_for(d_list.size(), [&](std::size_t i) {
    const int d = d_list[i];
    const double y = cheb_constant({mode, round_direction(theta, d), s.mesh, {}, s.weight}, s.tol).value;
    out.values[i] = {d, std::pow(y, 1.0 / d)};
  });
  const std::size_t k = std::min<std::size_t>(tail, out.values.size());
  double lo = std::numeric_limits<double>::infinity(), hi = -lo, acc = 0.0;
  for (std::size_t i = out.values.size() - k; i < out.values.size(); ++i) {
    acc += out.values[i].second;
    lo = std::min(lo, out.values[i].second);
    hi = std::max(hi, out.values[i].second);
  }
  out.extrapolated = acc / k;
  out.spread = hi - lo;
  return out;
}

TauMean tau_geometric_mean(const ChebSetup& s, int dimension, ChebMode mode, int d) {
  require(d >= 1, "geometric mean needs d >= 1");
  const GradedBasis basis = enumerate_basis(dimension, d);
  TauMean out;
  out.constants.resize(basis.size());
  parallel_for(basis.size(), [&](std::size_t i) {
    out.constants[i] = {basis[i], cheb_constant({mode, basis[i], s.mesh, s.fine_mesh, s.weight}, s.tol)};
  });
  double log_full = 0.0, log_slice = 0.0;
  for (const auto& [alpha, r] : out.constants) {
    if (!(r.value > 0.0)) {
      out.degenerate = true;
      return out;
    }
    log_full += std::log(r.value);
    if (alpha.degree == d) log_slice += std::log(r.value);
  }
  out.full = std::exp(log_full / static_cast<double>(degree_sum(dimension, d)));
  out.slice = std::exp(log_slice / (static_cast<double>(d) * count_homogeneous(dimension, d)));
  return out;
}

double zaharjuta_trapezoid(const std::vector<double>& v) {
  require(!v.empty(), "need lattice values");
  if (v.size() == 1) return std::exp(v.front());
  double s = 0.5 * (v.front() + v.back());
  for (std::size_t k = 1; k + 1 < v.size(); ++k) s += v[k];
  return std::exp(s / (v.size() - 1));
}

double zaharjuta_integral(const ChebSetup& s, int dimension, ChebMode mode, int d) {
  require(d >= 1, "Zaharjuta integral needs d >= 1");
  if (dimension > 2) fail(ErrorKind::Unsupported, "Zaharjuta integral is implemented for N <= 2");
  require(dimension >= 1, "dimension must be >= 1");
  if (dimension == 1) {
    const double y = cheb_constant({mode, MultiIndex({d}), s.mesh, {}, s.weight}, s.tol).value;
    return std::pow(y, 1.0 / d);
  }
  std::vector<double> logs(static_cast<std::size_t>(d) + 1);
  parallel_for(logs.size(), [&](std::size_t k) {
    const MultiIndex a({static_cast<int>(k), d - static_cast<int>(k)});
    const double y = cheb_constant({mode, a, s.mesh, {}, s.weight}, s.tol).value;
    if (!(y > 0.0)) fail(ErrorKind::DegenerateProblem, "vanishing Chebyshev constant in the directional mean");
    logs[k] = std::log(y) / d;
  });
  return zaharjuta_trapezoid(logs);
}

}  // namespace vdmlab
