#include "vdmlab/cone_case.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "vdmlab/orthopoly.hpp"
#include "vdmlab/parallel.hpp"
#include "vdmlab/quadrature.hpp"
#include "vdmlab/seeding.hpp"

namespace vdmlab {

namespace {

constexpr int kPanelOrder = 16;

Point ray_point(const ConeProblem& p, double r, double theta) {
  if (p.dimension == 1) return {Complex{r, 0.0}};
  return {Complex{r * std::cos(theta), 0.0}, Complex{r * std::sin(theta), 0.0}};
}

// sign changes of R on [0, T] (half-line only), by sampling and bisection
std::vector<double> density_breaks(const ConeProblem& p, double T) {
  std::vector<double> out;
  if (p.dimension != 1) return out;
  const int n = 4096;
  auto f = [&](double x) { return p.density({Complex{x, 0.0}}); };
  double xa = 0.0, fa = f(0.0);
  for (int i = 1; i <= n; ++i) {
    const double xb = T * i / n, fb = f(xb);
    if ((fa < 0.0 && fb > 0.0) || (fa > 0.0 && fb < 0.0)) {
      double lo = xa, hi = xb;
      for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        ((f(mid) < 0.0) == (fa < 0.0) ? lo : hi) = mid;
      }
      out.push_back(0.5 * (lo + hi));
    }
    xa = xb;
    fa = fb;
  }
  return out;
}

}  // namespace

ConeProblem ConeProblem::half_line(WeightModel w, RealPolynomial r) {
  require(r.dimension == 1, "half-line density must be univariate");
  ConeProblem p;
  p.dimension = 1;
  p.weight = std::move(w);
  p.density = std::move(r);
  return p;
}

ConeProblem ConeProblem::sector(double theta0, double theta1, WeightModel w, RealPolynomial r) {
  require(r.dimension == 2, "sector density must be bivariate");
  require(theta0 < theta1 && theta1 - theta0 <= 2.0 * 3.141592653589793, "sector angles must satisfy theta0 < theta1");
  ConeProblem p;
  p.dimension = 2;
  p.theta0 = theta0;
  p.theta1 = theta1;
  p.weight = std::move(w);
  p.density = std::move(r);
  return p;
}

MeasureModel cone_measure(const ConeProblem& p, int d, double T, int resolution) {
  require(p.dimension == 1 || p.dimension == 2, "cones are supported in dimensions 1 and 2");
  require(T > 0.0 && d >= 0 && resolution >= 1, "need T > 0, d >= 0 and resolution >= 1");
  const int k = p.density.degree();
  const int n_theta = p.dimension == 1 ? 1 : resolution * (2 * d + k + 16);
  const Rule1D angles = p.dimension == 1 ? Rule1D{{0.0}, {1.0}} : gauss_legendre(n_theta, p.theta0, p.theta1);

  // spread of 2 d Q along the rays fixes the panel count
  double q_lo = std::numeric_limits<double>::infinity(), q_hi = -q_lo;
  for (double th : angles.nodes)
    for (int i = 0; i <= 64; ++i) {
      const double q = p.weight.q(ray_point(p, T * i / 64.0, th));
      q_lo = std::min(q_lo, q);
      q_hi = std::max(q_hi, q);
    }
  if (!std::isfinite(q_hi - q_lo)) fail(ErrorKind::DegenerateWeight, "weight is not finite on the truncated cone");
  const int panels = resolution * std::max({2, (4 * (d + 1) + kPanelOrder - 1) / kPanelOrder,
                                            static_cast<int>(std::ceil(2.0 * d * (q_hi - q_lo) / 8.0))});
  std::vector<double> cuts;
  for (int i = 0; i <= panels; ++i) cuts.push_back(T * i / panels);
  for (double b : density_breaks(p, T)) cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(), [](double a, double b) { return b - a < 1e-14; }), cuts.end());

  std::vector<Point> nodes;
  std::vector<double> weights;
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    const Rule1D radial = gauss_legendre(kPanelOrder, cuts[c], cuts[c + 1]);
    for (std::size_t i = 0; i < radial.nodes.size(); ++i)
      for (std::size_t j = 0; j < angles.nodes.size(); ++j) {
        const double r = radial.nodes[i];
        Point x = ray_point(p, r, angles.nodes[j]);
        const double jac = p.dimension == 1 ? 1.0 : r;  // polar area element
        const double w = radial.weights[i] * angles.weights[j] * jac * std::abs(p.density(x));
        if (w > 0.0) {
          nodes.push_back(std::move(x));
          weights.push_back(w);
        }
      }
  }
  return MeasureModel::quadrature(std::move(nodes), std::move(weights), "cone |R| dx");
}

double laguerre_log_zd(int d, double c) {
  require(d >= 0 && c > 0.0, "need d >= 0 and c > 0");
  // monic Laguerre norms in L^2(exp(-beta x) dx): (n!)^2 / beta^{2n+1}
  const double beta = 2.0 * d * c;
  require(beta > 0.0, "closed form needs d >= 1");
  double s = std::lgamma(d + 2.0);
  for (int n = 0; n <= d; ++n) s += 2.0 * std::lgamma(n + 1.0) - (2.0 * n + 1.0) * std::log(beta);
  return s;
}

ConeSeries cone_zd_series(const ConeProblem& p, int d_max, int resolution, double stability_tol) {
  require(d_max >= 1, "d_max must be >= 1");
  ConeSeries s;
  s.stability_tol = stability_tol;
  s.rows.resize(d_max);
  parallel_for(static_cast<std::size_t>(d_max), [&](std::size_t i) {
    const int d = static_cast<int>(i) + 1;
    ConeRow row;
    row.d = d;
    row.T = p.T > 0.0 ? p.T : truncate_cone(p.weight, p.density, d, p.tol).T;
    const ZdResult z = z_d_product(cone_measure(p, d, row.T, resolution), p.weight, d);
    const ZdResult z2 = z_d_product(cone_measure(p, d, 2.0 * row.T, resolution), p.weight, d);
    row.log_z = z.z.log_abs;
    row.root = z.root;
    row.log_z_2T = z2.z.log_abs;
    row.stability = std::abs(row.log_z - row.log_z_2T);
    row.condition = z.condition;
    row.ill_conditioned = z.ill_conditioned;
    s.rows[i] = row;
  });
  for (const ConeRow& r : s.rows)
    if (!(r.stability <= stability_tol))
      fail(ErrorKind::TruncationInsufficient, "log Z_" + std::to_string(r.d) + " moves by " +
                                                  std::to_string(r.stability) + " when T doubles");
  return s;
}

LocalizationProbe localization_probe(const ConeProblem& p, int d, int samples, std::uint64_t seed) {
  require(d >= 1 && samples >= 1, "need d >= 1 and samples >= 1");
  const double T = p.T > 0.0 ? p.T : truncate_cone(p.weight, p.density, d, p.tol).T;
  const MeasureModel mu = cone_measure(p, d, T, 1);
  const OrthoBasis o = orthonormalize(gram(mu, p.weight, d));
  const std::vector<Point> grid = mesh(SetModel::cone_truncation(p.dimension, T), p.dimension == 1 ? 4001 : 121);
  std::vector<std::vector<Complex>> vals;
  std::vector<double> wd, radius;
  for (const Point& z : grid) {
    if (p.dimension == 2) {
      const double th = std::atan2(z[1].real(), z[0].real());
      if (th < p.theta0 - 1e-12 || th > p.theta1 + 1e-12) continue;
    }
    vals.push_back(o.orthonormal_values(z));
    wd.push_back(std::exp(-d * p.weight.q(z)));
    double r2 = 0.0;
    for (const Complex& c : z) r2 += std::norm(c);
    radius.push_back(std::sqrt(r2));
  }
  std::mt19937_64 rng(derive_seed(seed, 0));
  std::normal_distribution<double> g;
  LocalizationProbe out;
  out.samples = samples;
  for (int s = 0; s < samples; ++s) {
    std::vector<double> c(o.basis.size());
    for (double& x : c) x = g(rng);
    double best = -1.0;
    std::size_t arg = 0;
    for (std::size_t k = 0; k < vals.size(); ++k) {
      Complex v{};
      for (std::size_t j = 0; j < c.size(); ++j) v += c[j] * vals[k][j];
      const double m = std::abs(v) * wd[k];
      if (m > best) best = m, arg = k;
    }
    const double ratio = radius[arg] / T;
    out.max_radius_ratio = std::max(out.max_radius_ratio, ratio);
    if (ratio < 1.0 - 1e-9) ++out.interior;
  }
  return out;
}

}  // namespace vdmlab
