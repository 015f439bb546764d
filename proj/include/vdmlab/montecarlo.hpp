#pragma once

// Sampling estimates of Z_d = int |VDM|^2 prod w^{2d} dmu^{m_d}, brute-force
// sums over atom tuples, and the probability that a P_d-distributed array has
// a small weighted Vandermonde.

#include <cstdint>
#include <vector>

#include "vdmlab/domain_models.hpp"
#include "vdmlab/log_value.hpp"

namespace vdmlab {

inline constexpr int kSamplerLanes = 8;
inline constexpr std::uint64_t kAtomicTupleCap = 20'000'000;

struct McEstimate {
  double log_mean = -std::numeric_limits<double>::infinity();  // log of the Z_d estimate
  double stderr_rel = 0.0;   // standard error / estimate
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  bool degenerate = false;   // every sample was zero

  double mean() const { return std::exp(log_mean); }
  double stderr_abs() const { return stderr_rel * mean(); }
};

/// Averages |VDM|^2 prod w^{2d} over i.i.d. m_d-tuples drawn from mu / mu(E)
/// and rescales by mu(E)^{m_d}. Exact measures are sampled through their
/// atoms. Samples are split across kSamplerLanes lanes with seeds derived
/// from `seed`, so the result does not depend on the thread count.
McEstimate z_d_mc(const MeasureModel& mu, const WeightModel& w, int d, std::uint64_t samples, std::uint64_t seed);

/// Exact sum over all M^{m_d} atom tuples; ResourceLimit past `cap` tuples.
double exact_atomic_zd(const std::vector<Point>& atoms, const std::vector<double>& masses, const WeightModel& w,
                       int d, std::uint64_t cap = kAtomicTupleCap);

struct LargeDeviationProbe {
  int d = 0;
  double eta = 0.0;
  double delta = 0.0;
  double threshold_log = 0.0;  // log (delta - eta)^{2 l_d}
  double probability = 0.0;    // self-normalized estimate of P_d(|VDM|^2 prod w^{2d} < threshold)
  double stderr_abs = 0.0;     // delta-method standard error
  double bound = 0.0;          // (1 - eta / (2 delta))^{2 l_d}
  double effective_samples = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;

  bool within_bound(double k = 3.0) const { return probability <= bound + k * stderr_abs; }
};

LargeDeviationProbe large_deviation_probe(const MeasureModel& mu, const WeightModel& w, int d, double eta,
                                          std::uint64_t samples, std::uint64_t seed, double delta);

}  // namespace vdmlab
