#include "vdmlab/orthopoly.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "vdmlab/parallel.hpp"

namespace vdmlab {

namespace {

constexpr double kPivotFloor = 1e-13;

void require_exact(const MeasureModel& mu) {
  if (!mu.is_exact()) fail(ErrorKind::Unsupported, "Gram matrices need an atomic or quadrature measure");
  require(!mu.nodes.empty(), "measure has no nodes");
}

std::string exponent_string(const MultiIndex& a) {
  std::ostringstream os;
  os << "(";
  for (std::size_t k = 0; k < a.exponents.size(); ++k) os << (k ? "," : "") << a.exponents[k];
  os << ")";
  return os.str();
}

double scaled_condition(const CMatrix& g) {
  const Eigen::VectorXd d = g.diagonal().real().cwiseSqrt().cwiseInverse();
  const CMatrix s = d.asDiagonal() * g * d.asDiagonal();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(s, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff(), hi = es.eigenvalues().maxCoeff();
  return lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
}

// FNV-1a over raw bytes.
struct Fnv {
  std::uint64_t h = 1469598103934665603ULL;
  void add(const void* p, std::size_t n) {
    const auto* b = static_cast<const unsigned char*>(p);
    for (std::size_t i = 0; i < n; ++i) h = (h ^ b[i]) * 1099511628211ULL;
  }
  template <class T>
  void add(const T& v) {
    add(&v, sizeof v);
  }
};

std::optional<std::filesystem::path> cache_path(const MeasureModel& mu, const GradedBasis& basis,
                                                const EvalBasis& eval, const std::vector<double>& factor) {
  const char* dir = std::getenv("VDMLAB_CACHE");
  if (!dir || !*dir) return std::nullopt;
  Fnv f;
  f.add(basis.dimension);
  f.add(basis.max_degree);
  f.add(basis.homogeneous);
  f.add(static_cast<int>(eval.kind));
  for (double c : eval.center) f.add(c);
  for (double c : eval.half_width) f.add(c);
  for (const auto& v : eval.alpha)
    for (double c : v) f.add(c);
  for (const auto& v : eval.beta)
    for (double c : v) f.add(c);
  for (std::size_t k = 0; k < mu.nodes.size(); ++k) {
    for (const Complex& c : mu.nodes[k]) f.add(c);
    f.add(mu.weights[k]);
    if (!factor.empty()) f.add(factor[k]);
  }
  std::ostringstream name;
  name << "gram-" << std::hex << f.h << ".bin";
  return std::filesystem::path(dir) / name.str();
}

// Layout: rows of G, G, then rows of R (0 when absent), R.
bool load_cached(const std::filesystem::path& p, CMatrix& g, CMatrix& r, Eigen::Index m) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return false;
  std::int64_t rows = 0;
  in.read(reinterpret_cast<char*>(&rows), sizeof rows);
  if (!in || rows != m) return false;
  g.resize(m, m);
  in.read(reinterpret_cast<char*>(g.data()), static_cast<std::streamsize>(sizeof(Complex) * m * m));
  in.read(reinterpret_cast<char*>(&rows), sizeof rows);
  if (!in || (rows != m && rows != 0)) return false;
  r.resize(rows, rows);
  in.read(reinterpret_cast<char*>(r.data()), static_cast<std::streamsize>(sizeof(Complex) * rows * rows));
  return static_cast<bool>(in);
}

void store_cached(const std::filesystem::path& p, const CMatrix& g, const CMatrix& r) {
  std::error_code ec;
  std::filesystem::create_directories(p.parent_path(), ec);
  const auto tmp = p.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) return;
    const std::int64_t rows = g.rows();
    out.write(reinterpret_cast<const char*>(&rows), sizeof rows);
    out.write(reinterpret_cast<const char*>(g.data()), static_cast<std::streamsize>(sizeof(Complex) * g.size()));
    const std::int64_t r_rows = r.rows();
    out.write(reinterpret_cast<const char*>(&r_rows), sizeof r_rows);
    out.write(reinterpret_cast<const char*>(r.data()), static_cast<std::streamsize>(sizeof(Complex) * r.size()));
  }
  std::filesystem::rename(tmp, p, ec);
}

std::vector<double> weight_factors(const MeasureModel& mu, const WeightModel& w, int d) {
  std::vector<double> f(mu.nodes.size(), 1.0);
  if (w.unit || d == 0) return f;
  for (std::size_t k = 0; k < f.size(); ++k) f[k] = std::exp(-2.0 * d * w.q(mu.nodes[k]));
  return f;
}

bool all_real(const std::vector<Point>& pts) {
  for (const Point& z : pts)
    for (const Complex& c : z)
      if (c.imag() != 0.0) return false;
  return true;
}

// Monic orthogonal products of the coordinate marginals of w^{2d} mu on real
// nodes; the monomial-triangular fit otherwise.
EvalBasis default_eval(const MeasureModel& mu, const std::vector<double>& factor, int d) {
  if (!all_real(mu.nodes)) return EvalBasis::fit(mu.nodes);
  std::vector<double> w(mu.weights);
  for (std::size_t k = 0; k < w.size(); ++k) w[k] *= factor[k];
  return EvalBasis::discrete_orthogonal(mu.nodes, w, d);
}

ZdResult finish(OrthoBasis ortho, std::uint64_t m, int N, int d) {
  ZdResult r;
  const double log_z = std::lgamma(static_cast<double>(m) + 1.0) + ortho.log_norm_product();
  r.z = LogValue::from_log(log_z);
  if (d >= 1) r.root = std::exp(log_z / (2.0 * degree_sum(N, d)));
  r.condition = ortho.condition;
  r.ill_conditioned = ortho.ill_conditioned;
  r.ortho = std::move(ortho);
  return r;
}

}  // namespace

GramMatrix gram_of(const MeasureModel& mu, const GradedBasis& basis, const EvalBasis& eval,
                   const std::vector<double>& factor) {
  require_exact(mu);
  const std::size_t m = basis.size();
  const std::size_t K = mu.nodes.size();
  if (m > kMaxGramSize)
    fail(ErrorKind::ResourceLimit, "Gram matrix of size " + std::to_string(m) + " exceeds the cap " +
                                       std::to_string(kMaxGramSize));
  GramMatrix g;
  g.degree = basis.max_degree;
  g.basis = basis;
  g.eval = eval;
  const auto cached = cache_path(mu, basis, eval, factor);
  if (cached && load_cached(*cached, g.entries, g.factor, static_cast<Eigen::Index>(m))) {
    g.from_cache = true;
  } else {
    // rows: sqrt(omega_k) b(z_k); G = V^H V with V(k, i) = sqrt(omega_k) b_i(z_k)
    CMatrix v(static_cast<Eigen::Index>(K), static_cast<Eigen::Index>(m));
    parallel_for(K, [&](std::size_t k) {
      std::vector<Complex> vals(m);
      if (basis.homogeneous)
        evaluate_lift_basis(eval, basis, mu.nodes[k], vals);
      else
        evaluate_basis(eval, basis, mu.nodes[k], vals);
      const double s = std::sqrt(mu.weights[k] * (factor.empty() ? 1.0 : factor[k]));
      for (std::size_t i = 0; i < m; ++i) v(k, i) = s * std::conj(vals[i]);
    });
    // G_ij = sum_k omega_k b_i conj(b_j) = (V^H V)_{ij} with V = sqrt(omega) conj(b)
    g.entries = v.adjoint() * v;
    g.entries = 0.5 * (g.entries + g.entries.adjoint().eval());
    if (K >= m) {
      const Eigen::HouseholderQR<CMatrix> qr(v);
      g.factor = qr.matrixQR().topRows(static_cast<Eigen::Index>(m)).triangularView<Eigen::Upper>();
      for (Eigen::Index j = 0; j < g.factor.rows(); ++j) {
        const double a = std::abs(g.factor(j, j));
        if (a > 0.0) g.factor.row(j) *= std::conj(g.factor(j, j)) / a;
      }
    }
    if (cached) store_cached(*cached, g.entries, g.factor);
  }
  for (Eigen::Index i = 0; i < g.entries.rows(); ++i)
    if (!(g.entries(i, i).real() > 0.0))
      fail(ErrorKind::NumericalDegeneracy,
           "Gram diagonal vanishes at index " + std::to_string(i) + " " + exponent_string(basis[i]));
  g.condition = scaled_condition(g.entries);
  g.ill_conditioned = g.condition > kIllConditioned;
  return g;
}

GramMatrix gram(const MeasureModel& mu, const WeightModel& w, int d, const std::optional<EvalBasis>& eval) {
  require_exact(mu);
  require(d >= 0, "degree must be >= 0");
  const GradedBasis basis = enumerate_basis(static_cast<int>(mu.dimension()), d);
  const std::vector<double> factor = weight_factors(mu, w, d);
  const EvalBasis e = eval ? *eval : default_eval(mu, factor, d);
  return gram_of(mu, basis, e, factor);
}

double OrthoBasis::log_norm_product() const {
  double s = 0.0;
  for (double v : norms_sq) s += std::log(v);
  return s;
}

std::vector<Complex> OrthoBasis::orthonormal_values(const Point& z) const {
  std::vector<Complex> b(basis.size());
  if (basis.homogeneous)
    evaluate_lift_basis(eval, basis, z, b);
  else
    evaluate_basis(eval, basis, z, b);
  // forward substitution L q = b
  std::vector<Complex> q(b.size());
  for (std::size_t j = 0; j < b.size(); ++j) {
    Complex s = b[j];
    for (std::size_t k = 0; k < j; ++k) s -= chol(j, k) * q[k];
    q[j] = s / chol(j, j);
  }
  return q;
}

OrthoBasis orthonormalize(const GramMatrix& g) {
  const Eigen::Index m = g.entries.rows();
  require(m >= 1 && g.entries.cols() == m, "Gram matrix must be square and nonempty");
  OrthoBasis o;
  o.basis = g.basis;
  o.eval = g.eval;
  o.condition = g.condition;
  o.ill_conditioned = g.ill_conditioned;
  o.chol = CMatrix::Zero(m, m);
  CMatrix& L = o.chol;
  if (g.factor.rows() == m) {
    L = g.factor.adjoint();
    for (Eigen::Index j = 0; j < m; ++j) {
      const double pivot = std::norm(L(j, j));
      if (!(pivot >= kPivotFloor * g.entries(j, j).real()) || !(pivot > 0.0))
        fail(ErrorKind::NumericalDegeneracy, "Cholesky pivot " + std::to_string(j) + " for exponent " +
                                                 exponent_string(g.basis[j]) +
                                                 " is nearly dependent on earlier basis functions");
      L(j, j) = std::sqrt(pivot);
      o.norms_sq.push_back(pivot);
    }
  }
  for (Eigen::Index j = o.norms_sq.size(); j < m; ++j) {
    const double gjj = g.entries(j, j).real();
    double pivot = gjj;
    for (Eigen::Index k = 0; k < j; ++k) pivot -= std::norm(L(j, k));
    if (!(pivot >= kPivotFloor * gjj) || !(pivot > 0.0))
      fail(ErrorKind::NumericalDegeneracy, "Cholesky pivot " + std::to_string(j) + " for exponent " +
                                               exponent_string(g.basis[j]) +
                                               " is nearly dependent on earlier basis functions");
    L(j, j) = std::sqrt(pivot);
    for (Eigen::Index i = j + 1; i < m; ++i) {
      Complex s = g.entries(i, j);
      for (Eigen::Index k = 0; k < j; ++k) s -= L(i, k) * std::conj(L(j, k));
      L(i, j) = s / L(j, j);
    }
    o.norms_sq.push_back(pivot);
  }
  // q = D L^{-1} b is monic: D = diag(L_jj)
  const CMatrix inv = L.triangularView<Eigen::Lower>().solve(CMatrix::Identity(m, m));
  o.monic = L.diagonal().asDiagonal() * inv;
  const LogValue det = log_det(g.entries);
  o.det_discrepancy = det.is_zero() ? std::numeric_limits<double>::infinity()
                                    : std::abs(o.log_norm_product() - det.log_abs);
  return o;
}

ZdResult z_d_product(const MeasureModel& mu, const WeightModel& w, int d) {
  const GramMatrix g = gram(mu, w, d);
  const int N = static_cast<int>(mu.dimension());
  return finish(orthonormalize(g), count_monomials(N, d), N, d);
}

ZdResult z_d_lift(const MeasureModel& mu, const WeightModel& w, int d, int phase_resolution) {
  require_exact(mu);
  require(d >= 0, "degree must be >= 0");
  require(phase_resolution >= 2 * d + 1, "phase resolution must be at least 2d + 1 for exact circle quadrature");
  const int N = static_cast<int>(mu.dimension());
  LiftedSet lift{SetModel::point_cloud(mu.nodes), w, phase_resolution};
  const MeasureModel nu = lift_measure(lift, mu);
  const GradedBasis basis = lift_basis(N, d);
  const EvalBasis eval = default_eval(mu, weight_factors(mu, w, d), d);
  const GramMatrix g = gram_of(nu, basis, eval);
  return finish(orthonormalize(g), count_monomials(N, d), N, d);
}

ChristoffelReport christoffel(const MeasureModel& mu, const WeightModel& w, int d, const std::vector<Point>& points) {
  const GramMatrix g = gram(mu, w, d);
  const OrthoBasis o = orthonormalize(g);
  const double m = static_cast<double>(o.basis.size());
  auto kernel = [&](const Point& z) {
    double s = 0.0;
    for (const Complex& v : o.orthonormal_values(z)) s += std::norm(v);
    return s;
  };
  auto wfac = [&](const Point& z) { return (w.unit || d == 0) ? 1.0 : std::exp(-2.0 * d * w.q(z)); };
  ChristoffelReport r;
  for (const Point& z : points) {
    r.kernel.push_back(kernel(z));
    r.density.push_back(r.kernel.back() * wfac(z) / m);
  }
  const GradedBasis mb = enumerate_basis(static_cast<int>(mu.dimension()), 4);
  r.moment_indices = mb.indices;
  r.moments.assign(mb.size(), Complex{});
  for (std::size_t k = 0; k < mu.nodes.size(); ++k) {
    const double mass = mu.weights[k] * wfac(mu.nodes[k]) * kernel(mu.nodes[k]) / m;
    r.mass += mass;
    for (std::size_t i = 0; i < mb.size(); ++i) r.moments[i] += mass * monomial(mb[i], mu.nodes[k]);
  }
  return r;
}

BernsteinMarkovProbe bernstein_markov_probe(const MeasureModel& mu, const WeightModel& w, int d_max,
                                            const std::vector<Point>& sup_mesh) {
  require(d_max >= 1, "d_max must be >= 1");
  require(!sup_mesh.empty(), "need a mesh for the sup norm");
  BernsteinMarkovProbe p;
  for (int d = 1; d <= d_max; ++d) {
    const OrthoBasis o = orthonormalize(gram(mu, w, d));
    double best = 0.0;
    for (const Point& z : sup_mesh) {
      double k = 0.0;
      for (const Complex& v : o.orthonormal_values(z)) k += std::norm(v);
      if (!w.unit) k *= std::exp(-2.0 * d * w.q(z));
      best = std::max(best, k);
    }
    p.ratios.emplace_back(d, std::sqrt(best));
  }
  // least-squares slope of log ratio against d
  if (p.ratios.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(p.ratios.size());
    for (const auto& [d, r] : p.ratios) {
      sx += d;
      sy += std::log(r);
      sxx += double(d) * d;
      sxy += d * std::log(r);
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    p.epsilon = std::exp(slope) - 1.0;
  }
  return p;
}

}  // namespace vdmlab
