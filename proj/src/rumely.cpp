#include "vdmlab/rumely.hpp"

#include <cmath>
#include <numbers>

#include "vdmlab/chebyshev.hpp"
#include "vdmlab/parallel.hpp"
#include "vdmlab/quadrature.hpp"

namespace vdmlab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMaxDrift = 0.01;

// 0, uniform up to a node at r = 1, geometric out to R.
std::vector<double> polar_radii(double R, int n) {
  const int inner = std::max(2, n / 2);
  const int outer = std::max(2, n - inner);
  std::vector<double> r{0.0};
  for (int k = 1; k <= inner; ++k) r.push_back(static_cast<double>(k) / inner);
  const double ratio = std::pow(R, 1.0 / outer);
  for (int k = 1; k < outer; ++k) r.push_back(std::pow(ratio, k));
  r.push_back(R);
  return r;
}

}  // namespace

std::string_view to_string(RobinKind kind) noexcept {
  switch (kind) {
    case RobinKind::Ball: return "ball";
    case RobinKind::Polydisk: return "polydisk";
    case RobinKind::Product: return "product";
    case RobinKind::Custom: return "custom";
  }
  return "?";
}

RobinKind parse_robin_kind(std::string_view name) {
  if (name == "ball") return RobinKind::Ball;
  if (name == "polydisk") return RobinKind::Polydisk;
  if (name == "product") return RobinKind::Product;
  fail(ErrorKind::InvalidArgument, "unknown Robin model '" + std::string(name) + "' (ball, polydisk, product)");
}

RobinModel RobinModel::ball(double radius) {
  require(radius > 0.0, "ball radius must be positive");
  const double lr = std::log(radius);
  return {RobinKind::Ball, "ball",
          [lr](Complex a, Complex b) { return 0.5 * std::log(std::norm(a) + std::norm(b)) - lr; }, true};
}

RobinModel RobinModel::polydisk() {
  return {RobinKind::Polydisk, "polydisk",
          [](Complex a, Complex b) { return std::log(std::max(std::abs(a), std::abs(b))); }, true};
}

RobinModel RobinModel::product(double a, double b) {
  require(a > 0.0 && b > 0.0, "disk radii must be positive");
  const double la = std::log(a), lb = std::log(b);
  return {RobinKind::Product, "product",
          [la, lb](Complex x, Complex y) { return std::max(std::log(std::abs(x)) - la, std::log(std::abs(y)) - lb); },
          true};
}

RobinModel RobinModel::custom(std::string label, std::function<double(Complex, Complex)> rho, bool radial) {
  require(static_cast<bool>(rho), "custom Robin model needs an evaluator");
  return {RobinKind::Custom, std::move(label), std::move(rho), radial};
}

RobinModel RobinModel::scaled(double s) const {
  require(s > 0.0, "scale must be positive");
  RobinModel out = *this;
  const double ls = std::log(s);
  auto base = rho;
  out.rho = [base, ls](Complex a, Complex b) { return base(a, b) - ls; };
  out.label = label + "*" + std::to_string(s);
  return out;
}

RumelyResult rumely_diameter_2d(const RobinModel& model, const RumelyGrid& grid) {
  require(grid.radius > 2.0, "grid radius must exceed 2");
  require(grid.radial >= 8, "need at least 8 radial nodes");
  const std::vector<double> r = polar_radii(grid.radius, grid.radial);
  const int n = static_cast<int>(r.size()) - 1;  // node n sits on the outer boundary
  const int J = grid.angular > 0 ? grid.angular : (model.radial_slice ? 1 : 64);
  const double dth = 2.0 * kPi / J;

  std::vector<std::vector<double>> u(n + 1, std::vector<double>(J));
  const double u0 = model.slice(Complex{0.0, 0.0});
  for (int i = 1; i <= n; ++i)
    for (int j = 0; j < J; ++j) u[i][j] = model.slice(std::polar(r[i], j * dth));
  auto face = [&](int i) { return 0.5 * (r[i] + r[i + 1]); };  // between nodes i and i+1

  // origin cell: disk of radius face(0)
  double origin_mass = 0.0;
  for (int j = 0; j < J; ++j) origin_mass += face(0) * dth * (u[1][j] - u0) / r[1];
  origin_mass /= 2.0 * kPi;

  std::vector<double> ring_mass(n, 0.0), ring_energy(n, 0.0);
  parallel_for(static_cast<std::size_t>(n - 1), [&](std::size_t k) {
    const int i = static_cast<int>(k) + 1;
    const double fo = face(i), fi = face(i - 1);
    double mass = 0.0, energy = 0.0;
    for (int j = 0; j < J; ++j) {
      const double inner = i == 1 ? u0 : u[i - 1][j];
      double net = fo * dth * (u[i + 1][j] - u[i][j]) / (r[i + 1] - r[i]) -
                   fi * dth * (u[i][j] - inner) / (r[i] - r[i - 1]);
      if (J > 1)
        net += (fo - fi) / (r[i] * dth) * (u[i][(j + 1) % J] + u[i][(j + J - 1) % J] - 2.0 * u[i][j]);
      mass += net / (2.0 * kPi);
      energy += u[i][j] * net / (2.0 * kPi);
    }
    ring_mass[i] = mass;
    ring_energy[i] = energy;
  });

  RumelyResult res;
  res.grid_mass = origin_mass;
  double energy = origin_mass * u0;
  for (int i = 1; i < n; ++i) {
    res.grid_mass += ring_mass[i];
    energy += ring_energy[i];
  }
  // rho(1,t) = log|t| + c + a / |t|^2 + ...: outside radius f the mass is 2a / f^2
  // and the energy is that mass times (log f + c + 1/2).
  const double R = r[n], f = face(n - 1);
  double tail_mass = 0.0, tail_energy = 0.0;
  for (int j = 0; j < J; ++j) {
    const double c = model.rho(Complex{0.0, 0.0}, std::polar(1.0, j * dth));
    const double a = (u[n][j] - std::log(R) - c) * R * R;
    const double m = 2.0 * a / (f * f);
    tail_mass += m / J;
    tail_energy += m * (std::log(f) + c + 0.5) / J;
  }
  res.tail_mass = tail_mass;
  const double total = res.grid_mass + tail_mass;
  res.mass_drift = std::abs(total - 1.0);
  if (!(res.mass_drift <= kMaxDrift))
    fail(ErrorKind::GridTooCoarse, "dd^c mass " + std::to_string(total) +
                                       " drifts more than 1% from 1; refine the grid or enlarge its radius");
  res.energy = (energy + tail_energy) / total;
  res.slice_term = model.slice_robin_constant();
  res.log_diameter = -(0.5 * res.energy + 0.5 * res.slice_term);
  res.diameter = std::exp(res.log_diameter);
  return res;
}

EquilibriumModel EquilibriumModel::semicircle(double gamma) {
  require(gamma > 0.0, "semicircle model needs gamma > 0");
  EquilibriumModel m;
  m.kind = EquilibriumKind::Semicircle;
  m.label = "semicircle";
  m.gamma = gamma;
  m.hi = 1.0 / std::sqrt(gamma);
  m.lo = -m.hi;
  return m;
}

EquilibriumModel EquilibriumModel::arcsine(double a, double b) {
  require(a < b, "arcsine model needs a < b");
  EquilibriumModel m;
  m.kind = EquilibriumKind::Arcsine;
  m.label = "arcsine";
  m.lo = a;
  m.hi = b;
  return m;
}

double EquilibriumModel::density(double x) const {
  if (x <= lo || x >= hi) return 0.0;
  if (kind == EquilibriumKind::Semicircle) {
    const double a = hi;
    return 2.0 / (kPi * a * a) * std::sqrt(a * a - x * x);
  }
  return 1.0 / (kPi * std::sqrt((x - lo) * (hi - x)));
}

double EquilibriumModel::q(double x) const { return gamma * x * x + q_shift; }

EquilibriumModel EquilibriumModel::shifted(double c) const {
  EquilibriumModel m = *this;
  m.q_shift += c;
  return m;
}

namespace {

// int f dmu_eq with x = mid + half sin(phi), which removes the endpoint singularities.
double integrate(const EquilibriumModel& m, const std::function<double(double)>& f) {
  const Rule1D rule = composite_gauss_legendre(8, 16, -kPi / 2, kPi / 2);
  const double mid = 0.5 * (m.lo + m.hi), half = 0.5 * (m.hi - m.lo);
  double s = 0.0;
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    const double phi = rule.nodes[k];
    const double x = mid + half * std::sin(phi);
    double dens;
    if (m.kind == EquilibriumKind::Arcsine)
      dens = 1.0 / kPi;  // density * dx/dphi
    else
      dens = m.density(x) * half * std::cos(phi);
    s += rule.weights[k] * dens * f(x);
  }
  return s;
}

}  // namespace

double EquilibriumModel::total_mass() const {
  return integrate(*this, [](double) { return 1.0; });
}

double EquilibriumModel::integral_q() const {
  return integrate(*this, [this](double x) { return q(x); });
}

EquilibriumModel equilibrium_model_for(const SetModel& set, const WeightModel& w) {
  if (set.kind != SetKind::Interval)
    fail(ErrorKind::Unsupported, "closed-form equilibrium models exist only for real intervals");
  const double a = set.params.at(0), b = set.params.at(1);
  if (!w.power_form)
    fail(ErrorKind::Unsupported, "no closed-form equilibrium model for weight " + w.label);
  const PowerForm& f = *w.power_form;
  if (f.coeff == 0.0) return EquilibriumModel::arcsine(a, b).shifted(f.shift);
  if (f.power == 2.0 && f.coeff > 0.0) {
    EquilibriumModel m = EquilibriumModel::semicircle(f.coeff).shifted(f.shift);
    if (m.lo < a || m.hi > b)
      fail(ErrorKind::Unsupported, "semicircle support [" + std::to_string(m.lo) + ", " + std::to_string(m.hi) +
                                       "] is not inside E; no closed-form model");
    return m;
  }
  fail(ErrorKind::Unsupported, "no closed-form equilibrium model for weight " + w.label);
}

IdentityCheck weighted_identity_check(const SetModel& set, const WeightModel& w, const EquilibriumModel& eq,
                                      const IdentityOptions& o) {
  require(set.dimension == 1 && set.is_real(), "the weighted identity check needs a real set in C");
  require(o.d_max >= 1, "d_max must be >= 1");
  IdentityCheck c;
  SeriesOptions so;
  so.d_min = o.d_max;
  so.d_max = o.d_max;
  so.mesh_resolution = o.mesh_resolution;
  so.search = o.search;
  const DiameterSeries lhs = diameter_series(set, FeketeKind::Weighted, so, w);
  c.lhs = lhs.entries.back().root;

  ChebSetup setup;
  setup.mesh = mesh(set, o.cheb_mesh > 0 ? o.cheb_mesh : 40 * o.d_max + 1);
  setup.weight = w;
  setup.tol = o.tol;
  c.d_w = tau_geometric_mean(setup, 1, ChebMode::Weighted, o.d_max).full;
  c.integral_q = eq.integral_q();
  c.rhs = std::exp(-c.integral_q) * c.d_w;
  c.gap = std::abs(c.lhs / c.rhs - 1.0);
  return c;
}

}  // namespace vdmlab
