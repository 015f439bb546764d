#pragma once

// Transfinite diameter of circled sets in C^2 from the Robin function:
//   -log d(E) = 1/2 int rho(1,t) dd^c rho(1,t) + 1/2 (-log d(slice)),
// and the N = 1 weighted identity delta^w = exp(-int Q dmu_eq) d^w.

#include <functional>
#include <string>

#include "vdmlab/domain_models.hpp"
#include "vdmlab/fekete.hpp"

namespace vdmlab {

enum class RobinKind { Ball, Polydisk, Product, Custom };

std::string_view to_string(RobinKind kind) noexcept;
RobinKind parse_robin_kind(std::string_view name);

struct RobinModel {
  RobinKind kind = RobinKind::Custom;
  std::string label;
  std::function<double(Complex, Complex)> rho;  // logarithmically homogeneous on C^2
  bool radial_slice = false;                    // rho(1, t) depends on |t| only

  double slice(Complex t) const { return rho(Complex{1.0, 0.0}, t); }
  /// -log d of the slice {z_1 = 0} of E, i.e. rho(0, 1).
  double slice_robin_constant() const { return rho(Complex{0.0, 0.0}, Complex{1.0, 0.0}); }

  /// Ball of radius r: rho = log |z| - log r.
  static RobinModel ball(double radius = 1.0);
  /// Unit polydisk: rho = max log |z_k|.
  static RobinModel polydisk();
  /// Product of disks of radii a, b: rho = max(log|z_1| - log a, log|z_2| - log b).
  static RobinModel product(double a, double b);
  static RobinModel custom(std::string label, std::function<double(Complex, Complex)> rho, bool radial = false);

  /// Robin function of sE.
  RobinModel scaled(double s) const;
};

struct RumelyGrid {
  double radius = 1000.0;  // outer radius R of the polar grid
  int radial = 600;        // radial nodes
  int angular = 0;         // 0: 1 for radial slices, 64 otherwise
};

struct RumelyResult {
  double diameter = 0.0;
  double log_diameter = 0.0;
  double energy = 0.0;          // int rho(1,t) dd^c rho(1,t)
  double slice_term = 0.0;      // -log d(slice)
  double grid_mass = 0.0;       // dd^c mass inside the grid
  double tail_mass = 0.0;       // analytic mass outside it
  double mass_drift = 0.0;      // |grid_mass + tail_mass - 1|
};

/// dd^c realized as (1/2 pi) Laplacian with conservative finite differences
/// on a polar grid (uniform on [0,1] with a node at r = 1, geometric beyond).
/// Mass drift above 1% throws GridTooCoarse; otherwise the mass is rescaled.
RumelyResult rumely_diameter_2d(const RobinModel& model, const RumelyGrid& grid = {});

enum class EquilibriumKind { Semicircle, Arcsine };

/// Weighted equilibrium measure on R in closed form.
struct EquilibriumModel {
  EquilibriumKind kind = EquilibriumKind::Arcsine;
  std::string label;
  double lo = -1.0, hi = 1.0;  // support
  double q_shift = 0.0;        // Q -> Q + c
  double gamma = 0.0;          // Q = gamma x^2 (+ shift) for the semicircle family

  /// Q = gamma x^2 on R: semicircle on [-1/sqrt(gamma), 1/sqrt(gamma)].
  static EquilibriumModel semicircle(double gamma);
  /// Q = 0 on [a, b]: arcsine law.
  static EquilibriumModel arcsine(double a, double b);

  double density(double x) const;
  double q(double x) const;
  EquilibriumModel shifted(double c) const;

  double total_mass() const;   // by quadrature
  double integral_q() const;   // int Q dmu_eq by quadrature
};

/// Closed-form model for (E, w) on the real line: arcsine for constant Q on
/// an interval, semicircle for Q = gamma x^2 + c when its support lies in E.
/// Anything else throws Unsupported.
EquilibriumModel equilibrium_model_for(const SetModel& set, const WeightModel& w);

struct IdentityOptions {
  int d_max = 30;
  int mesh_resolution = 0;   // Fekete mesh; 0: default
  int cheb_mesh = 0;         // Chebyshev mesh; 0: 40 d_max + 1
  double tol = 1e-6;
  SearchOptions search;
};

struct IdentityCheck {
  double lhs = 0.0;            // delta^w estimate at d_max
  double d_w = 0.0;            // tau geometric mean at d_max
  double integral_q = 0.0;
  double rhs = 0.0;            // exp(-int Q dmu_eq) d^w
  double gap = 0.0;            // |lhs / rhs - 1|
};

IdentityCheck weighted_identity_check(const SetModel& set, const WeightModel& w, const EquilibriumModel& eq,
                                      const IdentityOptions& options);

}  // namespace vdmlab
