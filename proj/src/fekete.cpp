#include "vdmlab/fekete.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>

#include "vdmlab/parallel.hpp"
#include "vdmlab/seeding.hpp"
#include "vdmlab/vandermonde.hpp"

namespace vdmlab {

namespace {

using CVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;
constexpr double kSwapSlack = 1e-12;

int degree_for(std::size_t n, int dimension) {
  int d = 0;
  while (count_monomials(dimension, d) < n) ++d;
  return d;
}

// Weighted basis values at every mesh point (columns), each row scaled to
// max-abs 1; `log_scale` collects the row factors.
struct Assembled {
  CMatrix a;
  std::vector<char> valid;
  double log_scale = 0.0;
};

bool real_line(const FeketeProblem& p) {
  if (p.basis.homogeneous || p.basis.dimension != 1) return false;
  for (const Point& z : p.mesh)
    if (z.size() != 1 || z[0].imag() != 0.0) return false;
  return true;
}

// Real mesh in one variable: rows are the discrete orthonormal polynomials of
// s_k^2 = w(x_k)^{2e} / max w^{2e}, built by Lanczos with full
// reorthogonalization and multiplied by s_k. Monic q_j = p_j / lead_j, so
// log_scale collects -sum log lead_j and the weight normalization.
Assembled assemble_orthonormal(const FeketeProblem& p) {
  const std::size_t M = p.mesh.size();
  const auto n = static_cast<Eigen::Index>(p.n);
  Assembled out;
  out.valid.assign(M, 1);
  Eigen::VectorXd x(M), s(M);
  double q_min = std::numeric_limits<double>::infinity();
  std::vector<double> q(M, 0.0);
  if (p.weight_exponent > 0 && !p.weight.unit)
    for (std::size_t k = 0; k < M; ++k) q[k] = p.weight.q(p.mesh[k]);
  for (std::size_t k = 0; k < M; ++k) {
    x(k) = p.mesh[k][0].real();
    if (std::isfinite(q[k])) q_min = std::min(q_min, q[k]);
  }
  if (!std::isfinite(q_min)) fail(ErrorKind::DegenerateProblem, "the weight vanishes on the whole mesh");
  for (std::size_t k = 0; k < M; ++k) {
    s(k) = std::isfinite(q[k]) ? std::exp(-p.weight_exponent * (q[k] - q_min)) : 0.0;
    if (!(s(k) > 0.0)) out.valid[k] = 0;
  }
  // orthonormal rows v_j(k) = s_k p_j(x_k)
  Eigen::MatrixXd v(n, static_cast<Eigen::Index>(M));
  double lead = 0.0, lead_sum = 0.0;  // log lead_j and its running sum
  Eigen::VectorXd cur = s;
  for (Eigen::Index j = 0; j < n; ++j) {
    if (j > 0) cur = v.row(j - 1).transpose().cwiseProduct(x);
    for (int pass = 0; pass < 2; ++pass)
      for (Eigen::Index i = 0; i < j; ++i) cur -= v.row(i).dot(cur) * v.row(i).transpose();
    const double norm = cur.norm();
    if (!(norm > 0.0) || (j > 0 && norm < 1e-13 * v.row(j - 1).cwiseProduct(x.transpose()).norm()))
      fail(ErrorKind::DegenerateProblem, "fewer distinct weighted mesh points than the configuration size");
    v.row(j) = cur.transpose() / norm;
    // p_j = lead_j x^j + ...: lead_0 = 1/||s||, lead_j = lead_{j-1} / norm
    lead -= std::log(norm);
    lead_sum += lead;
  }
  out.a = v.cast<Complex>();
  out.log_scale = -lead_sum - static_cast<double>(n) * p.weight_exponent * q_min;
  return out;
}

Assembled assemble(const FeketeProblem& p) {
  if (real_line(p)) return assemble_orthonormal(p);
  const std::size_t M = p.mesh.size();
  Assembled out;
  out.a.resize(static_cast<Eigen::Index>(p.n), static_cast<Eigen::Index>(M));
  out.valid.assign(M, 1);
  std::vector<Complex> col(p.n);
  for (std::size_t k = 0; k < M; ++k) {
    double wf = 1.0;
    if (p.weight_exponent > 0 && !p.weight.unit) wf = std::exp(-p.weight_exponent * p.weight.q(p.mesh[k]));
    if (!(wf > 0.0)) {
      out.valid[k] = 0;
      out.a.col(k).setZero();
      continue;
    }
    if (p.basis.homogeneous)
      evaluate_lift_basis(p.eval, p.basis, p.mesh[k], col);
    else
      evaluate_basis(p.eval, p.basis, p.mesh[k], col);
    for (std::size_t i = 0; i < p.n; ++i) out.a(i, k) = wf * col[i];
  }
  for (Eigen::Index i = 0; i < out.a.rows(); ++i) {
    const double s = out.a.row(i).cwiseAbs().maxCoeff();
    if (s == 0.0) fail(ErrorKind::DegenerateProblem, "a basis function vanishes on the whole mesh");
    out.a.row(i) /= s;
    out.log_scale += std::log(s);
  }
  return out;
}

// Greedy elimination: each step picks the column with the largest remaining
// pivot (scaled by a random factor when rng is given).
std::vector<std::size_t> greedy(const Assembled& as, std::mt19937_64* rng) {
  CMatrix r = as.a;
  const Eigen::Index n = r.rows(), M = r.cols();
  std::vector<char> used(as.valid.begin(), as.valid.end());
  for (auto& u : used) u = !u;
  std::vector<std::size_t> picked;
  std::uniform_real_distribution<double> u(0.25, 1.0);
  for (Eigen::Index j = 0; j < n; ++j) {
    double best = 0.0;
    Eigen::Index arg = -1;
    for (Eigen::Index k = 0; k < M; ++k) {
      if (used[k]) continue;
      double v = std::abs(r(j, k));
      if (rng && v > 0.0) v *= u(*rng);
      if (v > best) best = v, arg = k;
    }
    if (arg < 0) return {};
    used[arg] = 1;
    picked.push_back(static_cast<std::size_t>(arg));
    const Complex piv = r(j, arg);
    for (Eigen::Index i = j + 1; i < n; ++i) {
      const Complex f = r(i, arg) / piv;
      if (f != Complex{}) r.row(i) -= f * r.row(j);
    }
  }
  return picked;
}

CMatrix selected(const Assembled& as, const std::vector<std::size_t>& idx) {
  CMatrix s(as.a.rows(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t j = 0; j < idx.size(); ++j) s.col(j) = as.a.col(idx[j]);
  return s;
}

struct Run {
  std::vector<std::size_t> idx;
  double log_det = -std::numeric_limits<double>::infinity();    // tracked
  double final_log = -std::numeric_limits<double>::infinity();  // recomputed
  int swaps = 0;
  std::vector<double> history;
};

Run exchange(const Assembled& as, std::vector<std::size_t> idx, int max_swaps) {
  Run run;
  const Eigen::Index n = as.a.rows(), M = as.a.cols();
  LogValue start = log_det(selected(as, idx));
  if (start.is_zero()) return run;
  double tracked = start.log_abs;
  run.history.push_back(tracked + as.log_scale);
  std::vector<char> in(M, 0);
  for (auto k : idx) in[k] = 1;
  int since_refresh = 0;
  CMatrix b;
  auto refresh = [&] {
    Eigen::PartialPivLU<CMatrix> lu(selected(as, idx));
    b = lu.solve(as.a);
    since_refresh = 0;
  };
  refresh();
  while (run.swaps < max_swaps) {
    double best = 0.0;
    Eigen::Index bi = -1, bk = -1;
    for (Eigen::Index k = 0; k < M; ++k) {
      if (in[k] || !as.valid[k]) continue;
      for (Eigen::Index i = 0; i < n; ++i) {
        const double v = std::abs(b(i, k));
        if (v > best) best = v, bi = i, bk = k;
      }
    }
    if (best <= 1.0 + kSwapSlack) {
      if (since_refresh == 0) break;
      refresh();  // certify on a freshly solved B
      continue;
    }
    const CVector col = b.col(bk);
    const Eigen::Matrix<Complex, 1, Eigen::Dynamic> row = b.row(bi);
    CVector delta = col;
    delta(bi) -= 1.0;
    b.noalias() -= (delta / col(bi)) * row;
    in[idx[bi]] = 0;
    in[bk] = 1;
    idx[bi] = static_cast<std::size_t>(bk);
    tracked += std::log(best);
    run.history.push_back(tracked + as.log_scale);
    ++run.swaps;
    if (++since_refresh >= std::max<Eigen::Index>(n, 8)) refresh();
  }
  run.idx = std::move(idx);
  run.log_det = tracked + as.log_scale;
  return run;
}

double normalizer(FeketeKind kind, int N, int d) {
  if (kind == FeketeKind::Homogeneous) return static_cast<double>(d) * count_homogeneous(N, d);
  return static_cast<double>(degree_sum(N, d));
}

void finish_series(DiameterSeries& s) {
  const std::size_t k = std::min<std::size_t>(3, s.entries.size());
  if (k == 0) return;
  double lo = std::numeric_limits<double>::infinity(), hi = -lo, acc = 0.0;
  for (std::size_t i = s.entries.size() - k; i < s.entries.size(); ++i) {
    acc += s.entries[i].root;
    lo = std::min(lo, s.entries[i].root);
    hi = std::max(hi, s.entries[i].root);
  }
  s.extrapolated = acc / k;
  s.spread = hi - lo;
}

}  // namespace

std::string_view to_string(FeketeKind kind) noexcept {
  switch (kind) {
    case FeketeKind::Plain: return "plain";
    case FeketeKind::Homogeneous: return "homogeneous";
    case FeketeKind::Weighted: return "weighted";
  }
  return "unknown";
}

FeketeProblem FeketeProblem::plain(std::vector<Point> mesh, std::size_t n) {
  require(!mesh.empty() && n >= 1, "Fekete problem needs a mesh and n >= 1");
  FeketeProblem p;
  const int N = static_cast<int>(mesh.front().size());
  p.basis = enumerate_basis(N, degree_for(n, N));
  p.n = n;
  p.eval = EvalBasis::fit(mesh);
  p.mesh = std::move(mesh);
  return p;
}

FeketeProblem FeketeProblem::weighted(std::vector<Point> mesh, int d, WeightModel w) {
  require(!mesh.empty() && d >= 0, "weighted Fekete problem needs a mesh and d >= 0");
  FeketeProblem p;
  const int N = static_cast<int>(mesh.front().size());
  p.basis = enumerate_basis(N, d);
  p.n = p.basis.size();
  std::vector<bool> mask(mesh.size());
  for (std::size_t k = 0; k < mesh.size(); ++k) mask[k] = w.w(mesh[k]) > 0.0;
  p.eval = EvalBasis::fit(mesh, mask);
  p.weight = std::move(w);
  p.weight_exponent = d;
  p.mesh = std::move(mesh);
  return p;
}

FeketeProblem FeketeProblem::homogeneous(std::vector<Point> mesh, int d) {
  require(!mesh.empty() && d >= 0, "homogeneous Fekete problem needs a mesh and d >= 0");
  const int M = static_cast<int>(mesh.front().size());
  require(M >= 1, "mesh points need dimension >= 1");
  FeketeProblem p;
  if (M == 1) {
    // one variable: the block is the single monomial z^d
    p.basis.dimension = 1;
    p.basis.max_degree = d;
    p.basis.homogeneous = true;
    p.basis.indices = homogeneous_block(1, d);
  } else {
    p.basis = lift_basis(M - 1, d);
  }
  p.n = p.basis.size();
  p.mesh = std::move(mesh);
  return p;
}

PointConfiguration fekete_search(const FeketeProblem& p, const SearchOptions& opt) {
  require(p.n >= 1 && p.n <= p.basis.size(), "configuration size must be in [1, basis size]");
  require(opt.restarts >= 1, "restarts must be >= 1");
  std::size_t valid_count = 0;
  const Assembled as = assemble(p);
  for (char v : as.valid) valid_count += v ? 1 : 0;
  if (valid_count < p.n) fail(ErrorKind::DegenerateProblem, "fewer usable mesh points than the configuration size");

  std::vector<Run> runs(opt.restarts);
  parallel_for(runs.size(), [&](std::size_t r) {
    std::mt19937_64 rng(derive_seed(opt.seed, r));
    std::vector<std::size_t> start = greedy(as, r == 0 ? nullptr : &rng);
    if (start.empty()) return;
    runs[r] = exchange(as, std::move(start), opt.max_swaps);
    if (!runs[r].idx.empty()) runs[r].final_log = log_det(selected(as, runs[r].idx)).log_abs + as.log_scale;
  });
  std::size_t best = 0;
  for (std::size_t r = 1; r < runs.size(); ++r)
    if (runs[r].final_log > runs[best].final_log) best = r;  // ties keep the lower restart index
  if (runs[best].idx.empty() || std::isinf(runs[best].final_log))
    fail(ErrorKind::DegenerateProblem, "every configuration on this mesh has zero Vandermonde value");

  PointConfiguration c;
  c.mesh_indices = runs[best].idx;
  std::sort(c.mesh_indices.begin(), c.mesh_indices.end());
  for (auto k : c.mesh_indices) c.points.push_back(p.mesh[k]);
  c.tracked_log = runs[best].log_det;
  c.value = log_det(selected(as, c.mesh_indices)) * LogValue::from_log(as.log_scale);
  c.seed = opt.seed;
  c.restart = static_cast<int>(best);
  c.restarts = opt.restarts;
  c.swaps = runs[best].swaps;
  c.history = runs[best].history;
  return c;
}

double best_swap_ratio(const FeketeProblem& p, const PointConfiguration& c) {
  const Assembled as = assemble(p);
  const CMatrix sel = selected(as, c.mesh_indices);
  Eigen::PartialPivLU<CMatrix> lu(sel);
  const CMatrix b = lu.solve(as.a);
  std::vector<char> in(as.a.cols(), 0);
  for (auto k : c.mesh_indices) in[k] = 1;
  double best = 0.0;
  for (Eigen::Index k = 0; k < b.cols(); ++k)
    if (!in[k] && as.valid[k]) best = std::max(best, b.col(k).cwiseAbs().maxCoeff());
  return best;
}

int default_resolution(const SetModel& set, int d_max) {
  require(d_max >= 1, "d_max must be >= 1");
  switch (set.kind) {
    case SetKind::Interval:
    case SetKind::ConeTruncation: return 20 * d_max + 1;
    case SetKind::Circle:
    case SetKind::Torus: return std::max(8, 4 * d_max);
    case SetKind::ComplexDisk: return std::max(8, 4 * d_max);
    case SetKind::Polydisk: return std::max(6, 2 * d_max);
    case SetKind::ComplexBall: return d_max + 4;
    case SetKind::RealBox:
    case SetKind::RealSimplex: return 4 * d_max + 1;
    case SetKind::PointCloud: return 1;
  }
  return 4 * d_max;
}

DiameterSeries diameter_series(const SetModel& set, FeketeKind kind, const SeriesOptions& o, const WeightModel& weight) {
  require(o.d_max >= 1 && o.d_min >= 1 && o.d_min <= o.d_max, "need 1 <= d_min <= d_max");
  const int res = o.mesh_resolution > 0 ? o.mesh_resolution : default_resolution(set, o.d_max);
  const std::vector<Point> pts = mesh(set, res);
  const int N = set.dimension;
  DiameterSeries s;
  s.kind = kind;
  for (int d = o.d_min; d <= o.d_max; ++d) {
    const auto t0 = std::chrono::steady_clock::now();
    FeketeProblem p = kind == FeketeKind::Plain      ? FeketeProblem::plain(pts, count_monomials(N, d))
                      : kind == FeketeKind::Weighted ? FeketeProblem::weighted(pts, d, weight)
                                                     : FeketeProblem::homogeneous(pts, d);
    DiameterEntry e;
    e.d = d;
    e.m_d = count_monomials(N, d);
    e.l_d = static_cast<std::uint64_t>(normalizer(kind, N, d));
    if (kind == FeketeKind::Weighted) e.admissible = positive_weight_count(weight, pts) >= e.m_d;
    const PointConfiguration c = fekete_search(p, o.search);
    e.log_max = c.value.log_abs;
    e.root = std::exp(e.log_max / normalizer(kind, N, d));
    e.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    s.entries.push_back(e);
  }
  finish_series(s);
  return s;
}

DiameterSeries lift_diameter_series(const SetModel& set, const WeightModel& weight, const SeriesOptions& o) {
  require(o.d_max >= 1 && o.d_min >= 1 && o.d_min <= o.d_max, "need 1 <= d_min <= d_max");
  const int res = o.mesh_resolution > 0 ? o.mesh_resolution : default_resolution(set, o.d_max);
  const int P = o.phase_resolution > 0 ? o.phase_resolution : 2 * o.d_max + 1;
  LiftedSet lift{set, weight, P};
  std::vector<Point> base;
  const std::vector<Point> pts = lift_mesh(lift, res, nullptr, &base);
  if (pts.empty()) fail(ErrorKind::DegenerateWeight, "weight vanishes on the whole base mesh");
  const int N = set.dimension;
  DiameterSeries s;
  s.kind = FeketeKind::Homogeneous;
  for (int d = o.d_min; d <= o.d_max; ++d) {
    const auto t0 = std::chrono::steady_clock::now();
    FeketeProblem p = FeketeProblem::homogeneous(pts, d);
    if (set.is_real()) p.eval = EvalBasis::fit(base);
    DiameterEntry e;
    e.d = d;
    e.m_d = count_monomials(N, d);
    e.l_d = static_cast<std::uint64_t>(normalizer(FeketeKind::Homogeneous, N + 1, d));
    e.admissible = positive_weight_count(weight, base) >= e.m_d;
    const PointConfiguration c = fekete_search(p, o.search);
    e.log_max = c.value.log_abs;
    e.root = std::exp(e.log_max / static_cast<double>(e.l_d));
    e.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    s.entries.push_back(e);
  }
  finish_series(s);
  return s;
}

std::vector<LiftConsistencyRow> lift_consistency(const SetModel& set, const WeightModel& weight,
                                                 const SeriesOptions& o) {
  const int P = o.phase_resolution > 0 ? o.phase_resolution : 2 * o.d_max + 1;
  require(P >= 2 * o.d_max + 1, "phase resolution must be at least 2 d_max + 1");
  SeriesOptions lo = o;
  lo.phase_resolution = P;
  const DiameterSeries w = diameter_series(set, FeketeKind::Weighted, o, weight);
  const DiameterSeries h = lift_diameter_series(set, weight, lo);
  const int N = set.dimension;
  std::vector<LiftConsistencyRow> rows;
  for (std::size_t i = 0; i < w.entries.size(); ++i) {
    LiftConsistencyRow r;
    r.d = w.entries[i].d;
    r.log_weighted = w.entries[i].log_max;
    r.log_lift = h.entries[i].log_max;
    r.gap = std::abs(r.log_weighted - r.log_lift);
    r.delta_w = w.entries[i].root;
    r.lift_root = h.entries[i].root;
    r.lift_adjusted = std::pow(r.lift_root, (N + 1.0) / N);
    r.series_gap = std::abs(r.lift_adjusted / r.delta_w - 1.0);
    rows.push_back(r);
  }
  return rows;
}

MeasureModel fekete_measure(const PointConfiguration& c) {
  require(!c.points.empty(), "configuration is empty");
  const double m = 1.0 / c.points.size();
  MeasureModel mu = MeasureModel::atomic(c.points, std::vector<double>(c.points.size(), m));
  mu.total_mass = 1.0;
  mu.label = "fekete";
  return mu;
}

MomentReport moments(const MeasureModel& mu, int max_degree) {
  require(mu.is_exact(), "moments need an exact measure");
  require(mu.total_mass > 0.0, "moments need positive total mass");
  const GradedBasis basis = enumerate_basis(static_cast<int>(mu.dimension()), max_degree);
  MomentReport r;
  r.indices = basis.indices;
  r.moments.assign(basis.size(), Complex{});
  for (std::size_t j = 0; j < mu.nodes.size(); ++j)
    for (std::size_t i = 0; i < basis.size(); ++i) r.moments[i] += mu.weights[j] * monomial(basis[i], mu.nodes[j]);
  for (auto& v : r.moments) v /= mu.total_mass;
  return r;
}

}  // namespace vdmlab
