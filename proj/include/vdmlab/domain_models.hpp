#pragma once

// Evaluable descriptions of compact sets, weights w = exp(-Q), measures, the
// circled lift F(E, w) = {(t, t*lambda) : lambda in E, |t| = w(lambda)} and
// the truncation radius used for unbounded real cones.

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "vdmlab/graded_basis.hpp"
#include "vdmlab/types.hpp"

namespace vdmlab {

enum class SetKind {
  Interval,
  RealBox,
  Circle,
  Torus,
  ComplexDisk,
  ComplexBall,
  Polydisk,
  RealSimplex,
  ConeTruncation,
  PointCloud,
};

std::string_view to_string(SetKind kind) noexcept;

/// Compact set model. Parameter layout per kind:
///   Interval [a, b]; RealBox [lo_1..lo_N, hi_1..hi_N]; Circle, ComplexDisk,
///   Torus, Polydisk, ComplexBall [radius]; RealSimplex []; ConeTruncation [T].
struct SetModel {
  SetKind kind = SetKind::Interval;
  int dimension = 1;
  std::vector<double> params;
  std::vector<Point> points;   // PointCloud only
  bool boundary_only = false;  // mesh the distinguished boundary (circle, torus, sphere)

  static SetModel interval(double a = -1.0, double b = 1.0);
  static SetModel real_box(const std::vector<double>& lo, const std::vector<double>& hi);
  static SetModel circle(double radius = 1.0);
  static SetModel torus(int dimension, double radius = 1.0);
  static SetModel disk(double radius = 1.0, bool boundary_only = false);
  static SetModel ball(int dimension, double radius = 1.0, bool boundary_only = false);
  static SetModel polydisk(int dimension, double radius = 1.0, bool boundary_only = false);
  static SetModel real_simplex(int dimension);
  /// {x in R^N : x_k >= 0, |x| <= T}; the half-line [0, T] for N = 1.
  static SetModel cone_truncation(int dimension, double T);
  static SetModel point_cloud(std::vector<Point> points);

  bool is_real() const noexcept;
  bool is_circled() const noexcept;
  std::string label() const;
};

/// Deterministic point mesh. Intervals use Chebyshev-Lobatto nodes (nested
/// under r -> 2r - 1), circles and tori equally spaced phases (nested under
/// r -> 2r), disks and polydisks polar shells of radius k/r with r phases per
/// shell, balls shells whose squared moduli run over the simplex lattice of
/// step 1/r.
std::vector<Point> mesh(const SetModel& set, int resolution);

struct GrowthCertificate {
  double c = 0.0;
  double gamma = 0.0;
};

/// Q = shift + coeff |z|^power; coeff = 0 covers the (shifted) unit weight.
struct PowerForm {
  double coeff = 0.0;
  double power = 2.0;
  double shift = 0.0;
};

struct WeightModel {
  std::string label = "unit";
  std::function<double(const Point&)> Q;  // -log w; +inf encodes w = 0
  std::optional<GrowthCertificate> growth;
  bool unit = true;
  std::optional<PowerForm> power_form = PowerForm{};

  static WeightModel unit_weight();
  /// Q(z) = shift + coeff * |z|^power with |z| the Euclidean norm.
  static WeightModel power(double coeff, double power, double shift = 0.0);
  static WeightModel custom(std::string label, std::function<double(const Point&)> q,
                            std::optional<GrowthCertificate> growth = std::nullopt);

  double q(const Point& z) const { return unit ? 0.0 : Q(z); }
  double w(const Point& z) const;
  /// Q + c, i.e. w scaled by exp(-c).
  WeightModel shifted(double c) const;
};

/// Counts points with w > 0; the admissibility proxy asks for >= m_d of them.
std::size_t positive_weight_count(const WeightModel& w, const std::vector<Point>& pts);

/// Spot-checks Q(x) >= c |x|^gamma on the given samples.
bool growth_holds(const WeightModel& w, const std::vector<Point>& samples);

enum class MeasureKind { Atomic, Quadrature, DensityOnMesh, Sampler };

struct MeasureModel {
  MeasureKind kind = MeasureKind::Atomic;
  std::string label;
  std::vector<Point> nodes;
  std::vector<double> weights;
  double total_mass = 0.0;
  /// Sampler kind: draws from the normalized measure mu / total_mass.
  std::function<Point(std::mt19937_64&)> draw;

  bool is_exact() const noexcept { return kind != MeasureKind::Sampler; }
  std::size_t dimension() const;

  static MeasureModel atomic(std::vector<Point> points, std::vector<double> masses);
  static MeasureModel quadrature(std::vector<Point> nodes, std::vector<double> weights, std::string label);
  /// weights_i = cell_weights_i * density(nodes_i)
  static MeasureModel density_on_mesh(std::vector<Point> nodes, const std::vector<double>& cell_weights,
                                      const std::function<double(const Point&)>& density, std::string label);
  static MeasureModel sampler(std::string label, double total_mass, std::function<Point(std::mt19937_64&)> draw,
                              std::size_t dimension);

  /// Normalized arc length on |z| = radius with `nodes` equally spaced nodes.
  static MeasureModel circle_arc(double radius, int nodes);
  /// Lebesgue measure on [a, b] via Gauss-Legendre.
  static MeasureModel lebesgue_interval(double a, double b, int nodes);
  /// Arcsine probability measure on [a, b] via Gauss-Chebyshev.
  static MeasureModel arcsine(double a, double b, int nodes);

  static MeasureModel uniform_circle_sampler(double radius);
  static MeasureModel uniform_interval_sampler(double a, double b);
  /// Samples atoms proportionally to mass; total mass is the sum of masses.
  static MeasureModel atom_sampler(std::vector<Point> points, std::vector<double> masses);

 private:
  std::size_t dim_ = 0;
};

struct LiftedSet {
  SetModel base;
  WeightModel weight;
  int phase_resolution = 1;
};

/// (t, t*lambda) with t = w(lambda) exp(2 pi i k / P), k = 0..P-1, per base
/// point, base-major. Throws DegenerateWeight if w(lambda) = 0.
std::vector<Point> lift_sample(const LiftedSet& lift, const std::vector<Point>& base_points);

/// Lift of mesh(base, resolution) with zero-weight base points dropped.
/// `base_of[i]` receives the base-mesh index of lifted point i when given.
std::vector<Point> lift_mesh(const LiftedSet& lift, int resolution, std::vector<std::size_t>* base_of = nullptr,
                             std::vector<Point>* base_mesh = nullptr);

/// nu = m_lambda (x) mu as quadrature: each base node of mass omega carries
/// P circle nodes of mass omega / P.
MeasureModel lift_measure(const LiftedSet& lift, const MeasureModel& mu);

/// Real polynomial in N variables; R in d mu = |R(x)| dx on cones.
struct RealPolynomial {
  int dimension = 1;
  std::vector<std::pair<double, MultiIndex>> terms;

  static RealPolynomial constant(int dimension, double c);
  static RealPolynomial monomial(double coeff, std::vector<int> exponents);

  double operator()(const Point& x) const;
  int degree() const;
  double abs_coefficient_sum() const;
};

struct TruncationResult {
  double T = 0.0;
  double tail_bound = 0.0;  // bound on the tail integral at T
  double c0 = 0.0;
};

/// Smallest T >= 1 with S_{N-1} A int_T^inf r^{k+N-1} exp(-c0 d r^gamma) dr <= tol,
/// where c0 = c / 2, A bounds |R| by A |x|^k for |x| >= 1 and S_{N-1} is the
/// area of the unit sphere in R^N.
TruncationResult truncate_cone(const WeightModel& weight, const RealPolynomial& density, int degree, double tol);

/// The tail bound as a function of T (exposed for tests).
double cone_tail_bound(const GrowthCertificate& g, const RealPolynomial& density, int degree, double T);

}  // namespace vdmlab
