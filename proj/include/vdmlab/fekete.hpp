#pragma once

// Fekete configurations on meshes: greedy (discrete Leja) start, then
// single-point exchange driven by B = A_I^{-1} A, whose entry |B(i,k)| is the
// factor by which |det| changes when point i is replaced by mesh point k.

#include <cstdint>
#include <string>
#include <vector>

#include "vdmlab/domain_models.hpp"
#include "vdmlab/graded_basis.hpp"
#include "vdmlab/log_value.hpp"
#include "vdmlab/poly_basis.hpp"

namespace vdmlab {

enum class FeketeKind { Plain, Homogeneous, Weighted };

std::string_view to_string(FeketeKind kind) noexcept;

/// Objective: |det [w(zeta_j)^e b_i(zeta_j)]| over the first n entries of
/// `basis` (plain, weighted) or the whole degree block (homogeneous).
struct FeketeProblem {
  std::vector<Point> mesh;
  GradedBasis basis;
  std::size_t n = 0;
  EvalBasis eval;
  WeightModel weight = WeightModel::unit_weight();
  int weight_exponent = 0;

  /// n points, smallest graded basis holding them; scaled Chebyshev on real meshes.
  static FeketeProblem plain(std::vector<Point> mesh, std::size_t n);
  /// m_d points, weight exponent d.
  static FeketeProblem weighted(std::vector<Point> mesh, int d, WeightModel w);
  /// h_d points of C^M for the degree-d homogeneous block in M = mesh dimension variables.
  static FeketeProblem homogeneous(std::vector<Point> mesh, int d);
};

struct SearchOptions {
  int restarts = 1;
  std::uint64_t seed = 0;
  int max_swaps = 100000;
};

struct PointConfiguration {
  std::vector<Point> points;
  std::vector<std::size_t> mesh_indices;
  LogValue value;             // re-evaluated from scratch on the final points
  double tracked_log = 0.0;   // log|det| tracked through the exchanges
  std::uint64_t seed = 0;     // seed of the winning restart
  int restart = 0;
  int restarts = 0;
  int swaps = 0;
  std::vector<double> history;  // log|det| after the greedy start and after each swap
};

/// Best single-swap optimal configuration over the restarts. Restart 0 is the
/// deterministic greedy start; restart r > 0 randomizes greedy picks with a
/// seed derived from (seed, r). Throws DegenerateProblem if every
/// configuration has value zero.
PointConfiguration fekete_search(const FeketeProblem& problem, const SearchOptions& options = {});

/// Every single-point swap of `config` against the mesh; largest |ratio|.
double best_swap_ratio(const FeketeProblem& problem, const PointConfiguration& config);

struct DiameterEntry {
  int d = 0;
  std::uint64_t m_d = 0;
  std::uint64_t l_d = 0;     // normalizer: l_d (plain, weighted) or d h_d (homogeneous)
  double log_max = 0.0;
  double root = 0.0;
  double wall_time = 0.0;    // seconds
  bool admissible = true;    // weighted: w > 0 on at least m_d mesh points
};

struct DiameterSeries {
  FeketeKind kind = FeketeKind::Plain;
  std::vector<DiameterEntry> entries;
  double extrapolated = 0.0;  // mean of the last 3 roots
  double spread = 0.0;        // max - min of those roots
};

struct SeriesOptions {
  int d_min = 1;
  int d_max = 1;
  int mesh_resolution = 0;  // 0: default per set kind
  int phase_resolution = 0; // lift series; 0: 2 d_max + 1
  SearchOptions search;
};

/// Mesh resolution used when none is given: enough points for m_{d_max}.
int default_resolution(const SetModel& set, int d_max);

/// Plain or weighted series on E, homogeneous series on E itself.
DiameterSeries diameter_series(const SetModel& set, FeketeKind kind, const SeriesOptions& options,
                               const WeightModel& weight = WeightModel::unit_weight());

/// Homogeneous series on the lift F(E, w), n = h_d^{(N+1)} = m_d^{(N)}.
DiameterSeries lift_diameter_series(const SetModel& set, const WeightModel& weight, const SeriesOptions& options);

struct LiftConsistencyRow {
  int d = 0;
  double log_weighted = 0.0;  // max log|W| over the E mesh
  double log_lift = 0.0;      // max log|VDMH_d| over the lifted mesh
  double gap = 0.0;           // |difference|
  double delta_w = 0.0;       // exp(log_weighted / l_d)
  double lift_root = 0.0;     // d^H(F) estimate exp(log_lift / (d h_d^{(N+1)}))
  double lift_adjusted = 0.0; // lift_root^{(N+1)/N}
  double series_gap = 0.0;    // |lift_adjusted / delta_w - 1|
};

std::vector<LiftConsistencyRow> lift_consistency(const SetModel& set, const WeightModel& weight,
                                                 const SeriesOptions& options);

struct MomentReport {
  std::vector<MultiIndex> indices;   // |alpha| <= 4
  std::vector<Complex> moments;      // int z^alpha d mu
};

/// Uniform atomic probability measure on a configuration.
MeasureModel fekete_measure(const PointConfiguration& config);

MomentReport moments(const MeasureModel& mu, int max_degree = 4);

}  // namespace vdmlab
