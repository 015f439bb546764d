#include "vdmlab/domain_models.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <sstream>

#include "vdmlab/quadrature.hpp"

namespace vdmlab {

namespace {

constexpr double kPi = std::numbers::pi;

double euclidean_norm(const Point& z) {
  double s = 0.0;
  for (const Complex& c : z) s += std::norm(c);
  return std::sqrt(s);
}

// Chebyshev-Lobatto nodes on [a, b], ascending, with the midpoint for r = 1.
std::vector<double> lobatto(double a, double b, int r) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  if (r == 1) return {c};
  std::vector<double> x(r);
  // -cos(pi k / (r-1)) written as a sine so the nodes are exactly symmetric
  for (int k = 0; k < r; ++k) x[k] = c + h * std::sin(kPi * (2.0 * k - (r - 1)) / (2.0 * (r - 1)));
  x.front() = a;
  x.back() = b;
  return x;
}

Complex unit_phase(int k, int n) {
  if (n == 1 || k == 0) return {1.0, 0.0};
  if (4 * k == n) return {0.0, 1.0};
  if (2 * k == n) return {-1.0, 0.0};
  if (4 * k == 3 * n) return {0.0, -1.0};
  const double a = 2.0 * kPi * k / n;
  return {std::cos(a), std::sin(a)};
}

std::vector<Point> tensor(const std::vector<std::vector<Complex>>& axes) {
  std::vector<Point> out{Point{}};
  for (const auto& axis : axes) {
    std::vector<Point> next;
    next.reserve(out.size() * axis.size());
    for (const Point& p : out)
      for (const Complex& v : axis) {
        Point q = p;
        q.push_back(v);
        next.push_back(std::move(q));
      }
    out = std::move(next);
  }
  return out;
}

std::vector<Complex> disk_points(double radius, int r, bool boundary_only) {
  std::vector<Complex> pts;
  if (boundary_only) {
    for (int j = 0; j < r; ++j) pts.push_back(radius * unit_phase(j, r));
    return pts;
  }
  pts.push_back(0.0);
  for (int k = 1; k <= r; ++k) {
    const double rho = radius * k / r;
    for (int j = 0; j < r; ++j) pts.push_back(rho * unit_phase(j, r));
  }
  return pts;
}

// Compositions of `total` into `parts` nonnegative integers, descending lex.
void compositions(int parts, int total, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == parts - 1) {
    cur.push_back(total);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int v = total; v >= 0; --v) {
    cur.push_back(v);
    compositions(parts, total - v, cur, out);
    cur.pop_back();
  }
}

void ball_shell(int N, double rho, int r, std::vector<Point>& out) {
  std::vector<std::vector<int>> lattice;
  std::vector<int> cur;
  compositions(N, r, cur, lattice);
  for (const auto& s : lattice) {
    std::vector<std::vector<Complex>> axes(N);
    for (int j = 0; j < N; ++j) {
      const double mod = rho * std::sqrt(static_cast<double>(s[j]) / r);
      if (s[j] == 0) {
        axes[j] = {0.0};
      } else {
        for (int p = 0; p < r; ++p) axes[j].push_back(mod * unit_phase(p, r));
      }
    }
    for (Point& p : tensor(axes)) out.push_back(std::move(p));
  }
}

double param(const SetModel& s, std::size_t i) {
  require(i < s.params.size(), "set model is missing a parameter");
  return s.params[i];
}

}  // namespace

std::string_view to_string(SetKind kind) noexcept {
  switch (kind) {
    case SetKind::Interval: return "interval";
    case SetKind::RealBox: return "real-box";
    case SetKind::Circle: return "circle";
    case SetKind::Torus: return "torus";
    case SetKind::ComplexDisk: return "complex-disk";
    case SetKind::ComplexBall: return "complex-ball";
    case SetKind::Polydisk: return "polydisk";
    case SetKind::RealSimplex: return "real-simplex";
    case SetKind::ConeTruncation: return "cone-truncation";
    case SetKind::PointCloud: return "point-cloud";
  }
  return "unknown";
}

SetModel SetModel::interval(double a, double b) {
  require(std::isfinite(a) && std::isfinite(b) && a < b, "interval needs finite a < b");
  return {SetKind::Interval, 1, {a, b}, {}, false};
}

SetModel SetModel::real_box(const std::vector<double>& lo, const std::vector<double>& hi) {
  require(!lo.empty() && lo.size() == hi.size(), "real box bounds must match in length");
  SetModel s{SetKind::RealBox, static_cast<int>(lo.size()), lo, {}, false};
  for (std::size_t k = 0; k < lo.size(); ++k) {
    require(lo[k] < hi[k], "real box needs lo < hi on every axis");
    s.params.push_back(hi[k]);
  }
  return s;
}

SetModel SetModel::circle(double radius) {
  require(radius > 0.0, "circle radius must be positive");
  return {SetKind::Circle, 1, {radius}, {}, true};
}

SetModel SetModel::torus(int dimension, double radius) {
  require(dimension >= 1 && radius > 0.0, "torus needs N >= 1 and positive radius");
  return {SetKind::Torus, dimension, {radius}, {}, true};
}

SetModel SetModel::disk(double radius, bool boundary_only) {
  require(radius > 0.0, "disk radius must be positive");
  return {SetKind::ComplexDisk, 1, {radius}, {}, boundary_only};
}

SetModel SetModel::ball(int dimension, double radius, bool boundary_only) {
  require(dimension >= 1 && radius > 0.0, "ball needs N >= 1 and positive radius");
  return {SetKind::ComplexBall, dimension, {radius}, {}, boundary_only};
}

SetModel SetModel::polydisk(int dimension, double radius, bool boundary_only) {
  require(dimension >= 1 && radius > 0.0, "polydisk needs N >= 1 and positive radius");
  return {SetKind::Polydisk, dimension, {radius}, {}, boundary_only};
}

SetModel SetModel::real_simplex(int dimension) {
  require(dimension >= 1, "simplex dimension must be >= 1");
  return {SetKind::RealSimplex, dimension, {}, {}, false};
}

SetModel SetModel::cone_truncation(int dimension, double T) {
  require(dimension >= 1 && T > 0.0 && std::isfinite(T), "cone truncation needs N >= 1 and finite T > 0");
  return {SetKind::ConeTruncation, dimension, {T}, {}, false};
}

SetModel SetModel::point_cloud(std::vector<Point> points) {
  require(!points.empty(), "point cloud needs at least one point");
  const std::size_t n = points.front().size();
  require(n >= 1, "point cloud points must have dimension >= 1");
  for (const Point& p : points) {
    require(p.size() == n, "point cloud points must share one dimension");
    for (const Complex& c : p) require(std::isfinite(c.real()) && std::isfinite(c.imag()), "non-finite point");
  }
  SetModel s{SetKind::PointCloud, static_cast<int>(n), {}, std::move(points), false};
  return s;
}

bool SetModel::is_real() const noexcept {
  switch (kind) {
    case SetKind::Interval:
    case SetKind::RealBox:
    case SetKind::RealSimplex:
    case SetKind::ConeTruncation: return true;
    case SetKind::PointCloud:
      for (const Point& p : points)
        for (const Complex& c : p)
          if (c.imag() != 0.0) return false;
      return true;
    default: return false;
  }
}

bool SetModel::is_circled() const noexcept {
  switch (kind) {
    case SetKind::Circle:
    case SetKind::Torus:
    case SetKind::ComplexDisk:
    case SetKind::ComplexBall:
    case SetKind::Polydisk: return true;
    default: return false;
  }
}

std::string SetModel::label() const {
  std::ostringstream os;
  os << to_string(kind);
  if (kind != SetKind::PointCloud) os << "(N=" << dimension;
  else os << "(" << points.size() << " points";
  for (double p : params) os << "," << p;
  if (boundary_only && kind != SetKind::Circle && kind != SetKind::Torus) os << ",boundary";
  os << ")";
  return os.str();
}

std::vector<Point> mesh(const SetModel& set, int resolution) {
  require(resolution >= 1, "mesh resolution must be >= 1");
  const int r = resolution;
  const int N = set.dimension;
  std::vector<Point> pts;
  switch (set.kind) {
    case SetKind::Interval:
      for (double x : lobatto(param(set, 0), param(set, 1), r)) pts.push_back({Complex{x, 0.0}});
      return pts;
    case SetKind::RealBox: {
      std::vector<std::vector<Complex>> axes(N);
      for (int k = 0; k < N; ++k)
        for (double x : lobatto(param(set, k), param(set, N + k), r)) axes[k].push_back(x);
      return tensor(axes);
    }
    case SetKind::Circle:
    case SetKind::Torus: {
      std::vector<std::vector<Complex>> axes(N, disk_points(param(set, 0), r, true));
      return tensor(axes);
    }
    case SetKind::ComplexDisk:
    case SetKind::Polydisk: {
      std::vector<std::vector<Complex>> axes(N, disk_points(param(set, 0), r, set.boundary_only));
      return tensor(axes);
    }
    case SetKind::ComplexBall: {
      const double R = param(set, 0);
      if (set.boundary_only) {
        ball_shell(N, R, r, pts);
        return pts;
      }
      pts.push_back(Point(N, 0.0));
      for (int k = 1; k <= r; ++k) ball_shell(N, R * k / r, r, pts);
      return pts;
    }
    case SetKind::RealSimplex: {
      std::vector<std::vector<int>> lattice;
      for (int total = 0; total <= r; ++total) {
        std::vector<int> cur;
        compositions(N, total, cur, lattice);
      }
      for (const auto& s : lattice) {
        Point p(N);
        for (int j = 0; j < N; ++j) p[j] = static_cast<double>(s[j]) / r;
        pts.push_back(std::move(p));
      }
      return pts;
    }
    case SetKind::ConeTruncation: {
      const double T = param(set, 0);
      if (N == 1) {
        for (double x : lobatto(0.0, T, r)) pts.push_back({Complex{x, 0.0}});
        return pts;
      }
      if (N == 2) {
        pts.push_back({0.0, 0.0});
        for (int k = 1; k <= r; ++k) {
          const double rho = T * k / r;
          for (int j = 0; j < r; ++j) {
            const double a = r == 1 ? kPi / 4 : 0.5 * kPi * j / (r - 1);
            const double c = (r > 1 && j == r - 1) ? 0.0 : std::cos(a);
            const double s = j == 0 ? 0.0 : std::sin(a);
            pts.push_back({Complex{rho * c, 0.0}, Complex{rho * s, 0.0}});
          }
        }
        return pts;
      }
      std::vector<std::vector<Complex>> axes(N);
      for (int k = 0; k < N; ++k)
        for (double x : lobatto(0.0, T, r)) axes[k].push_back(x);
      for (Point& p : tensor(axes))
        if (euclidean_norm(p) <= T * (1.0 + 1e-15)) pts.push_back(std::move(p));
      return pts;
    }
    case SetKind::PointCloud: return set.points;
  }
  fail(ErrorKind::InvalidArgument, "unknown set kind");
}

WeightModel WeightModel::unit_weight() {
  WeightModel w;
  w.label = "unit";
  w.unit = true;
  w.Q = [](const Point&) { return 0.0; };
  return w;
}

WeightModel WeightModel::power(double coeff, double power, double shift) {
  require(std::isfinite(coeff) && std::isfinite(power) && std::isfinite(shift), "non-finite weight parameter");
  require(power > 0.0, "weight exponent must be positive");
  WeightModel w;
  std::ostringstream os;
  os << "power(c=" << coeff << ",p=" << power << ",shift=" << shift << ")";
  w.label = os.str();
  w.unit = false;
  w.Q = [coeff, power, shift](const Point& z) { return shift + coeff * std::pow(euclidean_norm(z), power); };
  if (coeff > 0.0 && shift >= 0.0) w.growth = GrowthCertificate{coeff, power};
  w.power_form = PowerForm{coeff, power, shift};
  return w;
}

WeightModel WeightModel::custom(std::string label, std::function<double(const Point&)> q,
                                std::optional<GrowthCertificate> growth) {
  require(static_cast<bool>(q), "custom weight needs an evaluator");
  WeightModel w;
  w.label = std::move(label);
  w.unit = false;
  w.Q = std::move(q);
  w.growth = growth;
  w.power_form.reset();
  return w;
}

double WeightModel::w(const Point& z) const {
  const double qz = q(z);
  if (std::isnan(qz)) fail(ErrorKind::InvalidArgument, "weight evaluator returned NaN");
  return std::exp(-qz);
}

WeightModel WeightModel::shifted(double c) const {
  WeightModel out = *this;
  std::ostringstream os;
  os << label << "+" << c;
  out.label = os.str();
  out.unit = false;
  auto base = unit ? std::function<double(const Point&)>([](const Point&) { return 0.0; }) : Q;
  out.Q = [base, c](const Point& z) { return base(z) + c; };
  if (growth && c < 0.0) out.growth.reset();
  if (out.power_form) out.power_form->shift += c;
  return out;
}

std::size_t positive_weight_count(const WeightModel& w, const std::vector<Point>& pts) {
  std::size_t n = 0;
  for (const Point& p : pts)
    if (w.w(p) > 0.0) ++n;
  return n;
}

bool growth_holds(const WeightModel& w, const std::vector<Point>& samples) {
  if (!w.growth) return false;
  for (const Point& p : samples) {
    const double bound = w.growth->c * std::pow(euclidean_norm(p), w.growth->gamma);
    if (w.q(p) < bound * (1.0 - 1e-12) - 1e-300) return false;
  }
  return true;
}

std::size_t MeasureModel::dimension() const {
  if (!nodes.empty()) return nodes.front().size();
  return dim_;
}

MeasureModel MeasureModel::atomic(std::vector<Point> points, std::vector<double> masses) {
  require(!points.empty() && points.size() == masses.size(), "atomic measure needs matching points and masses");
  MeasureModel m;
  m.kind = MeasureKind::Atomic;
  m.label = "atomic";
  for (double v : masses) require(std::isfinite(v) && v >= 0.0, "atom masses must be finite and nonnegative");
  const std::size_t n = points.front().size();
  for (const Point& p : points) require(p.size() == n, "atoms must share one dimension");
  m.nodes = std::move(points);
  m.weights = std::move(masses);
  for (double v : m.weights) m.total_mass += v;
  m.dim_ = n;
  return m;
}

MeasureModel MeasureModel::quadrature(std::vector<Point> nodes, std::vector<double> weights, std::string label) {
  MeasureModel m = atomic(std::move(nodes), std::move(weights));
  m.kind = MeasureKind::Quadrature;
  m.label = std::move(label);
  return m;
}

MeasureModel MeasureModel::density_on_mesh(std::vector<Point> nodes, const std::vector<double>& cell_weights,
                                           const std::function<double(const Point&)>& density, std::string label) {
  require(nodes.size() == cell_weights.size(), "density mesh needs one cell weight per node");
  std::vector<double> w(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) w[i] = cell_weights[i] * density(nodes[i]);
  MeasureModel m = atomic(std::move(nodes), std::move(w));
  m.kind = MeasureKind::DensityOnMesh;
  m.label = std::move(label);
  return m;
}

MeasureModel MeasureModel::sampler(std::string label, double total_mass, std::function<Point(std::mt19937_64&)> draw,
                                   std::size_t dimension) {
  require(total_mass > 0.0 && std::isfinite(total_mass), "sampler total mass must be positive");
  require(static_cast<bool>(draw), "sampler needs a draw function");
  MeasureModel m;
  m.kind = MeasureKind::Sampler;
  m.label = std::move(label);
  m.total_mass = total_mass;
  m.draw = std::move(draw);
  m.dim_ = dimension;
  return m;
}

MeasureModel MeasureModel::circle_arc(double radius, int nodes) {
  require(nodes >= 1 && radius > 0.0, "arc measure needs >= 1 node and positive radius");
  std::vector<Point> pts;
  for (int j = 0; j < nodes; ++j) pts.push_back({radius * unit_phase(j, nodes)});
  return quadrature(std::move(pts), std::vector<double>(nodes, 1.0 / nodes), "arc");
}

MeasureModel MeasureModel::lebesgue_interval(double a, double b, int nodes) {
  const Rule1D rule = gauss_legendre(nodes, a, b);
  std::vector<Point> pts;
  for (double x : rule.nodes) pts.push_back({Complex{x, 0.0}});
  return quadrature(std::move(pts), rule.weights, "lebesgue");
}

MeasureModel MeasureModel::arcsine(double a, double b, int nodes) {
  const Rule1D rule = gauss_chebyshev(nodes, a, b);
  std::vector<Point> pts;
  for (double x : rule.nodes) pts.push_back({Complex{x, 0.0}});
  return quadrature(std::move(pts), rule.weights, "arcsine");
}

MeasureModel MeasureModel::uniform_circle_sampler(double radius) {
  require(radius > 0.0, "circle radius must be positive");
  return sampler("uniform-circle", 1.0,
                 [radius](std::mt19937_64& g) {
                   std::uniform_real_distribution<double> u(0.0, 2.0 * kPi);
                   return Point{std::polar(radius, u(g))};
                 },
                 1);
}

MeasureModel MeasureModel::uniform_interval_sampler(double a, double b) {
  require(a < b, "interval sampler needs a < b");
  return sampler("uniform-interval", b - a,
                 [a, b](std::mt19937_64& g) {
                   std::uniform_real_distribution<double> u(a, b);
                   return Point{Complex{u(g), 0.0}};
                 },
                 1);
}

MeasureModel MeasureModel::atom_sampler(std::vector<Point> points, std::vector<double> masses) {
  const MeasureModel exact = atomic(points, masses);
  require(exact.total_mass > 0.0, "atom sampler needs positive total mass");
  auto pts = std::make_shared<std::vector<Point>>(std::move(points));
  auto cdf = std::make_shared<std::vector<double>>();
  double acc = 0.0;
  for (double v : masses) cdf->push_back(acc += v / exact.total_mass);
  MeasureModel m = sampler("atoms", exact.total_mass,
                           [pts, cdf](std::mt19937_64& g) {
                             const double u = std::uniform_real_distribution<double>(0.0, 1.0)(g);
                             auto it = std::upper_bound(cdf->begin(), cdf->end(), u);
                             std::size_t i = std::min<std::size_t>(it - cdf->begin(), pts->size() - 1);
                             while (i > 0 && (*cdf)[i] == (*cdf)[i - 1]) --i;  // never land on a zero-mass atom
                             return (*pts)[i];
                           },
                           exact.dimension());
  return m;
}

std::vector<Point> lift_sample(const LiftedSet& lift, const std::vector<Point>& base_points) {
  require(lift.phase_resolution >= 1, "phase resolution must be >= 1");
  const int P = lift.phase_resolution;
  std::vector<Point> out;
  out.reserve(base_points.size() * P);
  for (const Point& lambda : base_points) {
    const double w = lift.weight.w(lambda);
    if (!(w > 0.0)) fail(ErrorKind::DegenerateWeight, "weight vanishes at a base point; it cannot be lifted");
    for (int k = 0; k < P; ++k) {
      const Complex t = w * unit_phase(k, P);
      Point p;
      p.reserve(lambda.size() + 1);
      p.push_back(t);
      for (const Complex& c : lambda) p.push_back(t * c);
      out.push_back(std::move(p));
    }
  }
  return out;
}

std::vector<Point> lift_mesh(const LiftedSet& lift, int resolution, std::vector<std::size_t>* base_of,
                             std::vector<Point>* base_mesh) {
  std::vector<Point> base = mesh(lift.base, resolution);
  std::vector<Point> kept;
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < base.size(); ++i)
    if (lift.weight.w(base[i]) > 0.0) {
      kept.push_back(base[i]);
      idx.push_back(i);
    }
  std::vector<Point> out = lift_sample(lift, kept);
  if (base_of) {
    base_of->clear();
    for (std::size_t i : idx)
      for (int k = 0; k < lift.phase_resolution; ++k) base_of->push_back(i);
  }
  if (base_mesh) *base_mesh = std::move(base);
  return out;
}

MeasureModel lift_measure(const LiftedSet& lift, const MeasureModel& mu) {
  const int P = lift.phase_resolution;
  require(P >= 1, "phase resolution must be >= 1");
  if (mu.kind == MeasureKind::Sampler) {
    const WeightModel w = lift.weight;
    auto draw = mu.draw;
    return MeasureModel::sampler("lift(" + mu.label + ")", mu.total_mass,
                                 [w, draw](std::mt19937_64& g) {
                                   for (;;) {
                                     const Point lambda = draw(g);
                                     const double wl = w.w(lambda);
                                     if (!(wl > 0.0))
                                       fail(ErrorKind::DegenerateWeight, "sampled base point has zero weight");
                                     std::uniform_real_distribution<double> u(0.0, 2.0 * kPi);
                                     const Complex t = std::polar(wl, u(g));
                                     Point p{t};
                                     for (const Complex& c : lambda) p.push_back(t * c);
                                     return p;
                                   }
                                 },
                                 mu.dimension() + 1);
  }
  std::vector<Point> base;
  std::vector<double> base_w;
  for (std::size_t i = 0; i < mu.nodes.size(); ++i) {
    if (mu.weights[i] == 0.0) continue;
    base.push_back(mu.nodes[i]);
    base_w.push_back(mu.weights[i]);
  }
  require(!base.empty(), "measure has no positive-mass nodes");
  std::vector<Point> nodes = lift_sample(lift, base);
  std::vector<double> weights;
  weights.reserve(nodes.size());
  for (double omega : base_w)
    for (int k = 0; k < P; ++k) weights.push_back(omega / P);
  MeasureModel nu = MeasureModel::quadrature(std::move(nodes), std::move(weights), "lift(" + mu.label + ")");
  nu.total_mass = mu.total_mass;  // exact: the phase weights sum to omega
  return nu;
}

RealPolynomial RealPolynomial::constant(int dimension, double c) {
  require(dimension >= 1, "polynomial dimension must be >= 1");
  RealPolynomial p;
  p.dimension = dimension;
  p.terms.emplace_back(c, MultiIndex(std::vector<int>(dimension, 0)));
  return p;
}

RealPolynomial RealPolynomial::monomial(double coeff, std::vector<int> exponents) {
  RealPolynomial p;
  p.dimension = static_cast<int>(exponents.size());
  p.terms.emplace_back(coeff, MultiIndex(std::move(exponents)));
  return p;
}

double RealPolynomial::operator()(const Point& x) const {
  require(x.size() == static_cast<std::size_t>(dimension), "polynomial argument dimension mismatch");
  double s = 0.0;
  for (const auto& [c, alpha] : terms) {
    double v = c;
    for (int k = 0; k < dimension; ++k)
      for (int e = 0; e < alpha.exponents[k]; ++e) v *= x[k].real();
    s += v;
  }
  return s;
}

int RealPolynomial::degree() const {
  int d = 0;
  for (const auto& t : terms)
    if (t.first != 0.0) d = std::max(d, t.second.degree);
  return d;
}

double RealPolynomial::abs_coefficient_sum() const {
  double s = 0.0;
  for (const auto& t : terms) s += std::abs(t.first);
  return s;
}

double cone_tail_bound(const GrowthCertificate& g, const RealPolynomial& density, int degree, double T) {
  require(g.c > 0.0 && g.gamma > 0.0, "growth certificate needs c > 0 and gamma > 0");
  require(degree >= 1, "truncation needs degree >= 1");
  require(T >= 1.0, "tail bound is stated for T >= 1");
  const int N = density.dimension;
  const int k = density.degree();
  const double A = density.abs_coefficient_sum();
  if (A == 0.0) return 0.0;
  const double a = 0.5 * g.c * degree;
  const double s = (k + N) / g.gamma;
  const double x = a * std::pow(T, g.gamma);
  // area of the unit sphere in R^N
  const double sphere = 2.0 * std::pow(kPi, 0.5 * N) / std::tgamma(0.5 * N);
  const double q = boost::math::gamma_q(s, x);
  if (q == 0.0) return 0.0;
  const double log_tail = std::log(q) + std::lgamma(s) - s * std::log(a) - std::log(g.gamma);
  return sphere * A * std::exp(log_tail);
}

TruncationResult truncate_cone(const WeightModel& weight, const RealPolynomial& density, int degree, double tol) {
  if (!weight.growth) fail(ErrorKind::Unsupported, "cone truncation needs a growth certificate Q >= c|x|^gamma");
  require(tol > 0.0, "truncation tolerance must be positive");
  const GrowthCertificate g = *weight.growth;
  TruncationResult out;
  out.c0 = 0.5 * g.c;
  double lo = 1.0;
  if (cone_tail_bound(g, density, degree, lo) <= tol) {
    out.T = lo;
    out.tail_bound = cone_tail_bound(g, density, degree, lo);
    return out;
  }
  double hi = 2.0;
  while (cone_tail_bound(g, density, degree, hi) > tol) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e12) fail(ErrorKind::TruncationInsufficient, "no finite truncation radius meets the tolerance");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (cone_tail_bound(g, density, degree, mid) <= tol ? hi : lo) = mid;
  }
  out.T = hi;
  out.tail_bound = cone_tail_bound(g, density, degree, hi);
  return out;
}

}  // namespace vdmlab
