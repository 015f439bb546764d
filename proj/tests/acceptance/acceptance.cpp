// Acceptance checks, one per numbered criterion. Usage: acceptance [k ...]
// (all criteria when no argument is given). Each check prints one line
//   criterion k: PASS|FAIL  <measurements>  (<seconds> s of <budget> s)
// and the process exits nonzero if any selected check fails. A check that
// meets its tolerances but overruns its runtime budget also fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "vdmlab/chebyshev.hpp"
#include "vdmlab/cli.hpp"
#include "vdmlab/cone_case.hpp"
#include "vdmlab/fekete.hpp"
#include "vdmlab/graded_basis.hpp"
#include "vdmlab/montecarlo.hpp"
#include "vdmlab/orthopoly.hpp"
#include "vdmlab/quadrature.hpp"
#include "vdmlab/rumely.hpp"
#include "vdmlab/vandermonde.hpp"

using namespace vdmlab;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) ok = false;
    detail << (detail.tellp() > 0 ? "; " : "") << what << (cond ? "" : " [miss]");
  }
};

std::string fmt(double x, int digits = 6) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

std::mt19937_64 engine(std::uint64_t criterion, std::uint64_t k) {
  std::seed_seq s{criterion, k};
  return std::mt19937_64(s);
}

std::vector<Point> random_points(std::mt19937_64& rng, std::size_t count, int N) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Point> pts(count, Point(N));
  for (auto& p : pts)
    for (auto& c : p) c = Complex(u(rng), u(rng));
  return pts;
}

// 1. counts against brute-force enumeration of the box [0, d]^N
void combinatorics(Outcome& o) {
  bool all = true;
  int cases = 0;
  for (int N = 1; N <= 4; ++N)
    for (int d = 0; d <= 12; ++d) {
      std::uint64_t m = 0, h = 0, l = 0, r = 0;
      std::vector<int> e(N, 0);
      while (true) {
        int s = 0;
        for (int v : e) s += v;
        if (s <= d) {
          ++m;
          l += s;
          if (s == d) ++h;
        }
        int k = 0;
        while (k < N && ++e[k] > d) e[k++] = 0;
        if (k == N) break;
      }
      r = static_cast<std::uint64_t>(d) * h;
      const GradedBasis b = enumerate_basis(N, d);
      all = all && count_monomials(N, d) == m && count_homogeneous(N, d) == h && degree_sum(N, d) == l &&
            b.counts.m == m && b.counts.l == l && b.counts.r[d] == r && b.size() == m &&
            count_homogeneous(N + 1, d) == count_monomials(N, d);
      ++cases;
    }
  o.require(all, std::to_string(cases) + " (N, d) cases exact");
}

// 2. |VDMH_d(lift)| = prod |t_i|^d |VDM|
void lift_factorization(Outcome& o) {
  double worst = 0.0;
  for (int N = 1; N <= 3; ++N)
    for (int d = 1; d <= 4; ++d)
      for (int k = 0; k < 100; ++k) {
        auto rng = engine(2, static_cast<std::uint64_t>(1000 * N + 100 * d + k));
        const auto base = random_points(rng, count_monomials(N, d), N);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        std::vector<Complex> t(base.size());
        for (auto& x : t) x = std::polar(0.25 + 1.5 * u(rng), 6.283185307179586 * u(rng));
        std::vector<Point> lifted;
        double factored = vdm(base).log_abs;
        for (std::size_t i = 0; i < base.size(); ++i) {
          Point q{t[i]};
          for (const auto& z : base[i]) q.push_back(t[i] * z);
          lifted.push_back(q);
          factored += d * std::log(std::abs(t[i]));
        }
        const double direct = vdmh(lifted, d).log_abs;
        worst = std::max({worst, std::abs(std::expm1(direct - factored)),
                          lift_factorization_check(base, t, d).discrepancy});
      }
  o.require(worst <= 1e-10, "max relative gap " + fmt(worst, 3) + " over 1200 configurations (tol 1e-10)");
}

// 3. Gram product formula against brute-force atom sums
void oracle_equality(Outcome& o) {
  double worst = 0.0;
  int cases = 0;
  auto one = [&](int N, int d, int M, std::uint64_t k) {
    auto rng = engine(3, k);
    const auto pts = random_points(rng, M, N);
    std::uniform_real_distribution<double> u(0.2, 2.0);
    std::vector<double> m(M);
    for (auto& x : m) x = u(rng);
    const WeightModel w = k % 2 ? WeightModel::power(0.5 * u(rng), 2.0) : WeightModel::unit_weight();
    const double exact = exact_atomic_zd(pts, m, w, d);
    const double product = z_d_product(MeasureModel::atomic(pts, m), w, d).z.abs();
    worst = std::max(worst, std::abs(product / exact - 1.0));
    ++cases;
  };
  for (int d = 1; d <= 2; ++d)
    for (int M = d + 1; M <= 6; ++M)
      for (std::uint64_t k = 0; k < 10; ++k) one(1, d, M, 100 * d + 10 * M + k);
  for (int M = 3; M <= 6; ++M)
    for (std::uint64_t k = 0; k < 10; ++k) one(2, 1, M, 1000 + 10 * M + k);
  const std::vector<Point> atoms{{Complex(0.0)}, {Complex(1.0)}};
  const double z1 = z_d_product(MeasureModel::atomic(atoms, {1.0, 1.0}), WeightModel::unit_weight(), 1).z.abs();
  const double z1_exact = exact_atomic_zd(atoms, {1.0, 1.0}, WeightModel::unit_weight(), 1);
  o.require(worst <= 1e-12, "max relative gap " + fmt(worst, 3) + " over " + std::to_string(cases) + " cases");
  o.require(std::abs(z1 - 2.0) <= 2e-12 && std::abs(z1_exact - 2.0) <= 2e-12,
            "atoms {0,1}: Z_1 = " + fmt(z1, 15) + " (brute force " + fmt(z1_exact, 15) + ")");
}

MeasureModel square_quadrature(int n) {
  const Rule1D r = gauss_legendre(n, -1.0, 1.0);
  std::vector<Point> nodes;
  std::vector<double> weights;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      nodes.push_back({Complex(r.nodes[i]), Complex(r.nodes[j])});
      weights.push_back(r.weights[i] * r.weights[j]);
    }
  return MeasureModel::quadrature(nodes, weights, "square-gauss-legendre");
}

// 4. lift formula equals product formula
void lift_equals_product(Outcome& o) {
  double worst = 0.0;
  int cases = 0;
  const std::vector<WeightModel> weights{WeightModel::unit_weight(), WeightModel::power(0.5, 2.0)};
  for (int N = 1; N <= 2; ++N)
    for (int d = 1; d <= 4; ++d)
      for (const WeightModel& w : weights) {
        std::vector<MeasureModel> measures;
        auto rng = engine(4, static_cast<std::uint64_t>(10 * N + d));
        const int M = static_cast<int>(count_monomials(N, d)) + 3;
        std::uniform_real_distribution<double> u(0.2, 2.0);
        std::vector<double> m(M);
        for (auto& x : m) x = u(rng);
        measures.push_back(MeasureModel::atomic(random_points(rng, M, N), m));
        if (N == 1) {
          measures.push_back(MeasureModel::lebesgue_interval(-1.0, 1.0, d + 2));
          measures.push_back(MeasureModel::arcsine(-1.0, 1.0, d + 2));
        } else {
          measures.push_back(square_quadrature(d + 2));
        }
        for (const auto& mu : measures) {
          const double a = z_d_product(mu, w, d).z.log_abs;
          const double b = z_d_lift(mu, w, d, 2 * d + 1).z.log_abs;
          worst = std::max(worst, std::abs(std::expm1(b - a)));
          ++cases;
        }
      }
  o.require(worst <= 1e-8, "max relative gap " + fmt(worst, 3) + " over " + std::to_string(cases) + " cases");
}

double fekete_root(const SetModel& set, int d, int resolution) {
  SeriesOptions s;
  s.d_min = s.d_max = d;
  s.mesh_resolution = resolution;
  return diameter_series(set, FeketeKind::Plain, s).entries.front().root;
}

// 5. d([-1,1]) = 1/2, d(circle) = 1
void classical(Outcome& o) {
  const int d = 40;
  const double fek = fekete_root(SetModel::interval(), d, 2001);
  const double zd = z_d_product(MeasureModel::arcsine(-1.0, 1.0, 2 * d + 2), WeightModel::unit_weight(), d).root;
  const double circ_fek = fekete_root(SetModel::circle(), d, 4 * (d + 1));
  const double circ_zd = z_d_product(MeasureModel::circle_arc(1.0, 2 * d + 2), WeightModel::unit_weight(), d).root;
  o.require(std::abs(fek / 0.5 - 1.0) <= 0.02, "interval Fekete d=40 root " + fmt(fek) + " (0.5 +- 2%)");
  o.require(std::abs(zd / 0.5 - 1.0) <= 0.02, "interval Z_d arcsine d=40 root " + fmt(zd) + " (0.5 +- 2%)");
  o.require(std::abs(circ_fek - 1.0) <= 1e-3, "circle Fekete d=40 root " + fmt(circ_fek) + " (1 +- 1e-3)");
  o.require(std::abs(circ_zd - 1.0) <= 1e-3, "circle Z_d arc d=40 root " + fmt(circ_zd) + " (1 +- 1e-3)");
}

// 6. unit ball of C^2 by three routes, target exp(-1/4)
void ball(Outcome& o) {
  const double target = std::exp(-0.25);
  const int d = 8;
  const SetModel b = SetModel::ball(2);
  const double fek = fekete_root(b, d, 0);
  ChebSetup setup;
  setup.mesh = mesh(b, default_resolution(b, d));
  const double zah = zaharjuta_integral(setup, 2, ChebMode::Plain, d);
  const double rum = rumely_diameter_2d(RobinModel::ball()).diameter;
  o.require(std::abs(fek / target - 1.0) <= 0.05, "Fekete d=8 " + fmt(fek) + " (5%)");
  o.require(std::abs(zah / target - 1.0) <= 0.05, "Zaharjuta d=8 " + fmt(zah) + " (5%)");
  o.require(std::abs(rum - target) <= 1e-3, "Robin-function route " + fmt(rum, 8) + " (1e-3)");
}

// 7. weighted Vandermonde on E against homogeneous Vandermonde on the lift
void homogeneous_vs_weighted(Outcome& o) {
  SeriesOptions s;
  s.d_min = 1;
  s.d_max = 10;
  const auto rows = lift_consistency(SetModel::interval(), WeightModel::power(1.0, 2.0), s);
  double worst = 0.0;
  for (const auto& r : rows) worst = std::max(worst, r.gap);
  const auto& last = rows.back();
  o.require(worst <= 1e-10, "max per-degree log gap " + fmt(worst, 3) + " (1e-10)");
  o.require(last.series_gap <= 0.03, "d=10 delta_w " + fmt(last.delta_w) + " vs d^H(F)^2 " +
                                         fmt(last.lift_adjusted) + ", gap " + fmt(last.series_gap, 3) + " (3%)");
}

// 8. delta^w = exp(-int Q dmu_eq) d^w at N = 1
void weighted_identity(Outcome& o) {
  IdentityOptions opt;
  opt.d_max = 30;
  const SetModel e = SetModel::interval(-3.0, 3.0);
  const WeightModel w = WeightModel::power(0.5, 2.0);
  const IdentityCheck c = weighted_identity_check(e, w, equilibrium_model_for(e, w), opt);
  o.require(c.gap <= 0.02, "semicircle: lhs " + fmt(c.lhs) + ", rhs " + fmt(c.rhs) + " (d_w " + fmt(c.d_w) +
                               ", int Q " + fmt(c.integral_q) + "), gap " + fmt(c.gap, 3) + " (2%)");
  const SetModel i = SetModel::interval();
  const IdentityCheck u =
      weighted_identity_check(i, WeightModel::unit_weight(), equilibrium_model_for(i, WeightModel::unit_weight()), opt);
  o.require(u.integral_q == 0.0 && u.rhs == u.d_w, "unit weight: int Q = " + fmt(u.integral_q) + ", rhs == d_w");
}

// 9. Z_d^{1/(2 l_d)} against matched-degree Fekete estimates
void zd_vs_fekete(Outcome& o) {
  double circle_worst = 0.0, weighted_worst = 0.0, circle_last = 0.0, weighted_last = 0.0;
  int circle_at = 0, weighted_at = 0;
  SeriesOptions s;
  s.d_min = 1;
  s.d_max = 12;
  const auto circ = diameter_series(SetModel::circle(), FeketeKind::Plain, s);
  const WeightModel w = WeightModel::power(1.0, 2.0);
  const auto wtd = diameter_series(SetModel::interval(), FeketeKind::Weighted, s, w);
  for (int d = 1; d <= 12; ++d) {
    const double zc = z_d_product(MeasureModel::circle_arc(1.0, 2 * d + 2), WeightModel::unit_weight(), d).root;
    const double zw = z_d_product(MeasureModel::lebesgue_interval(-1.0, 1.0, 2 * d + 2), w, d).root;
    const double gc = std::abs(zc / circ.entries[d - 1].root - 1.0);
    const double gw = std::abs(zw / wtd.entries[d - 1].root - 1.0);
    if (gc > circle_worst) circle_worst = gc, circle_at = d;
    if (gw > weighted_worst) weighted_worst = gw, weighted_at = d;
    circle_last = gc;
    weighted_last = gw;
  }
  o.require(circle_worst <= 0.03,
            "circle: worst gap " + fmt(circle_worst, 3) + " at d=" + std::to_string(circle_at) + ", " +
                fmt(circle_last, 3) + " at d=12 (3%)");
  o.require(weighted_worst <= 0.03, "[-1,1], exp(-x^2): worst gap " + fmt(weighted_worst, 3) + " at d=" +
                                        std::to_string(weighted_at) + ", " + fmt(weighted_last, 3) + " at d=12 (3%)");
}

// 10. large-deviation bound on the circle
void large_deviation(Outcome& o) {
  for (int d : {2, 3, 4}) {
    const auto r = large_deviation_probe(MeasureModel::uniform_circle_sampler(1.0), WeightModel::unit_weight(), d,
                                         0.5, 100000, 20240 + d, 1.0);
    o.require(r.within_bound(3.0), "d=" + std::to_string(d) + ": p " + fmt(r.probability, 3) + " +- " +
                                       fmt(r.stderr_abs, 2) + " <= bound " + fmt(r.bound, 3));
  }
}

// 11. Christoffel mass and arcsine moments on [-1, 1]
void christoffel_moments(Outcome& o) {
  const int d = 50;
  const MeasureModel mu = MeasureModel::lebesgue_interval(-1.0, 1.0, 2 * d + 2);
  const ChristoffelReport r = christoffel(mu, WeightModel::unit_weight(), d, {});
  double m2 = 0.0, m4 = 0.0;
  for (std::size_t i = 0; i < r.moment_indices.size(); ++i) {
    if (r.moment_indices[i].degree == 2) m2 = r.moments[i].real();
    if (r.moment_indices[i].degree == 4) m4 = r.moments[i].real();
  }
  o.require(std::abs(r.mass - 1.0) <= 1e-12, "mass " + fmt(r.mass, 16));
  o.require(std::abs(m2 - 0.5) <= 0.02, "m2 " + fmt(m2) + " (0.5 +- 0.02)");
  o.require(std::abs(m4 - 0.375) <= 0.02, "m4 " + fmt(m4) + " (0.375 +- 0.02)");
}

// Laguerre closed form: (d+1)! prod (n!)^2 beta^{-2n-1}, beta = 2 d c
double laguerre(int d, double c) {
  const double beta = 2.0 * d * c;
  double s = std::lgamma(d + 2.0);
  for (int n = 0; n <= d; ++n) s += 2.0 * std::lgamma(n + 1.0) - (2.0 * n + 1.0) * std::log(beta);
  return s;
}

// 12. cone case: truncation stability and a high-resolution oracle
void cone(Outcome& o) {
  const double c = 0.5;
  const ConeProblem p = ConeProblem::half_line(WeightModel::power(c, 1.0));
  const ConeSeries s = cone_zd_series(p, 10, 1, 1.0);
  double stab = 0.0;
  for (const auto& r : s.rows) stab = std::max(stab, r.stability);
  double oracle_gap = 0.0, closed_gap = 0.0;
  for (int d = 1; d <= 3; ++d) {
    // dense composite Gauss-Legendre on [0, 4T], independent of the panel layout
    const double T = 4.0 * s.rows[d - 1].T;
    const Rule1D rule = composite_gauss_legendre(400, 16, 0.0, T);
    std::vector<Point> nodes;
    for (double x : rule.nodes) nodes.push_back({Complex(x)});
    const MeasureModel mu = MeasureModel::quadrature(nodes, rule.weights, "dense-half-line");
    const double hi = z_d_product(mu, p.weight, d).z.log_abs;
    oracle_gap = std::max(oracle_gap, std::abs(s.rows[d - 1].log_z / hi - 1.0));
    closed_gap = std::max(closed_gap, std::abs(s.rows[d - 1].log_z / laguerre(d, c) - 1.0));
  }
  o.require(stab <= 1e-6, "max |log Z_d(T) - log Z_d(2T)| " + fmt(stab, 3) + " for d <= 10 (1e-6)");
  o.require(oracle_gap <= 1e-6, "dense quadrature gap " + fmt(oracle_gap, 3) + " for d <= 3 (1e-6)");
  o.require(closed_gap <= 1e-6, "Laguerre closed form gap " + fmt(closed_gap, 3) + " for d <= 3 (1e-6)");
}

std::string cli_csv(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"vdmlab"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return code == 0 ? out.str() : "exit " + std::to_string(code) + ": " + err.str();
}

// 13. identical spec and seed give identical CSV bytes
void reproducibility(Outcome& o) {
  const std::vector<std::vector<std::string>> runs{
      {"zd-mc", "--set", "circle", "--d-max", "3", "--samples", "20000", "--seed", "13"},
      {"diameter", "--set", "ball:dimension=2", "--d-max", "3", "--restarts", "4", "--seed", "13"},
      {"ldp", "--set", "circle", "--d-min", "2", "--d-max", "3", "--samples", "20000", "--seed", "13", "--delta", "1"},
  };
  for (const auto& args : runs) {
    const std::string a = cli_csv(args), b = cli_csv(args);
    o.require(a == b && a.rfind("op,", 0) == 0, args[0] + ": " + std::to_string(a.size()) + " bytes identical");
  }
}

struct Criterion {
  std::function<void(Outcome&)> run;
  double budget;  // seconds
};

}  // namespace

int main(int argc, char** argv) {
  const std::map<int, Criterion> criteria{
      {1, {combinatorics, 1}},           {2, {lift_factorization, 10}},
      {3, {oracle_equality, 5}},         {4, {lift_equals_product, 30}},
      {5, {classical, 120}},             {6, {ball, 600}},
      {7, {homogeneous_vs_weighted, 300}}, {8, {weighted_identity, 300}},
      {9, {zd_vs_fekete, 300}},          {10, {large_deviation, 120}},
      {11, {christoffel_moments, 120}},  {12, {cone, 120}},
      {13, {reproducibility, 60}},
  };
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::stoi(argv[i]));
  if (selected.empty())
    for (const auto& [k, _] : criteria) selected.push_back(k);

  int failed = 0;
  for (int k : selected) {
    const auto it = criteria.find(k);
    if (it == criteria.end()) {
      std::printf("criterion %d: FAIL  unknown criterion\n", k);
      ++failed;
      continue;
    }
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      it->second.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("error: ") + e.what());
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(dt <= it->second.budget, "runtime " + fmt(dt, 3) + " s of " + fmt(it->second.budget, 3) + " s");
    std::printf("criterion %d: %s  %s\n", k, o.ok ? "PASS" : "FAIL", o.detail.str().c_str());
    std::fflush(stdout);
    if (!o.ok) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
