#include "vdmlab/montecarlo.hpp"

#include <cmath>
#include <random>

#include "vdmlab/graded_basis.hpp"
#include "vdmlab/parallel.hpp"
#include "vdmlab/poly_basis.hpp"
#include "vdmlab/seeding.hpp"
#include "vdmlab/vandermonde.hpp"

namespace vdmlab {

namespace {

constexpr std::uint64_t kMinSamples = 100;
constexpr std::uint64_t kPilotLane = 1u << 20;

MeasureModel as_sampler(const MeasureModel& mu) {
  if (!mu.is_exact()) return mu;
  return MeasureModel::atom_sampler(mu.nodes, mu.weights);
}

// log(|VDM|^2 prod w^{2d}) for every sample, in lane order.
std::vector<double> sample_logs(const MeasureModel& sampler, const WeightModel& w, int d, std::uint64_t samples,
                                std::uint64_t seed) {
  const int N = static_cast<int>(sampler.dimension());
  const GradedBasis basis = enumerate_basis(N, d);
  const std::size_t m = basis.size();

  // center and scale the evaluation basis on a pilot draw
  std::mt19937_64 pilot_rng(derive_seed(seed, kPilotLane));
  std::vector<Point> pilot;
  for (int i = 0; i < 64; ++i) pilot.push_back(sampler.draw(pilot_rng));
  const EvalBasis eval = EvalBasis::fit(pilot);

  std::vector<double> out(samples);
  std::vector<std::uint64_t> start(kSamplerLanes + 1, 0);
  for (int l = 0; l < kSamplerLanes; ++l)
    start[l + 1] = start[l] + samples / kSamplerLanes + (static_cast<std::uint64_t>(l) < samples % kSamplerLanes);
  parallel_for(kSamplerLanes, [&](std::size_t lane) {
    std::mt19937_64 rng(derive_seed(seed, lane));
    std::vector<Point> pts(m);
    for (std::uint64_t s = start[lane]; s < start[lane + 1]; ++s) {
      for (auto& p : pts) p = sampler.draw(rng);
      const LogValue v = weighted_vdm(pts, basis, w, eval);
      out[s] = 2.0 * v.log_abs;
    }
  });
  return out;
}

double log_mass(const MeasureModel& mu) {
  require(mu.total_mass > 0.0, "measure must have positive total mass");
  return std::log(mu.total_mass);
}

}  // namespace

McEstimate z_d_mc(const MeasureModel& mu, const WeightModel& w, int d, std::uint64_t samples, std::uint64_t seed) {
  require(d >= 0, "degree must be >= 0");
  require(samples >= kMinSamples, "need at least 100 samples");
  const MeasureModel sampler = as_sampler(mu);
  const std::vector<double> logs = sample_logs(sampler, w, d, samples, seed);
  McEstimate e;
  e.samples = samples;
  e.seed = seed;
  double shift = -std::numeric_limits<double>::infinity();
  for (double v : logs) shift = std::max(shift, v);
  if (std::isinf(shift)) {
    e.degenerate = true;
    e.stderr_rel = std::numeric_limits<double>::infinity();
    return e;
  }
  const double n = static_cast<double>(samples);
  double s1 = 0.0, s2 = 0.0;
  for (double v : logs) {
    const double x = std::exp(v - shift);
    s1 += x;
    s2 += x * x;
  }
  const double mean = s1 / n;
  const double var = std::max(0.0, s2 / n - mean * mean) * n / (n - 1.0);
  const auto m = static_cast<double>(count_monomials(static_cast<int>(sampler.dimension()), d));
  e.log_mean = shift + std::log(mean) + m * log_mass(sampler);
  e.stderr_rel = std::sqrt(var / n) / mean;
  return e;
}

double exact_atomic_zd(const std::vector<Point>& atoms, const std::vector<double>& masses, const WeightModel& w,
                       int d, std::uint64_t cap) {
  require(!atoms.empty() && atoms.size() == masses.size(), "need matching atoms and masses");
  require(d >= 0, "degree must be >= 0");
  const int N = static_cast<int>(atoms.front().size());
  const GradedBasis basis = enumerate_basis(N, d);
  const std::size_t m = basis.size();
  const std::size_t M = atoms.size();
  long double tuples = 1.0L;
  for (std::size_t i = 0; i < m; ++i) {
    tuples *= static_cast<long double>(M);
    if (tuples > static_cast<long double>(cap))
      fail(ErrorKind::ResourceLimit, "exact enumeration needs " + std::to_string(M) + "^" + std::to_string(m) +
                                         " tuples, above the cap " + std::to_string(cap));
  }
  std::vector<std::size_t> idx(m, 0);
  std::vector<Point> pts(m);
  long double total = 0.0L;
  while (true) {
    long double mass = 1.0L;
    for (std::size_t i = 0; i < m; ++i) {
      pts[i] = atoms[idx[i]];
      mass *= masses[idx[i]];
    }
    const LogValue v = weighted_vdm(pts, basis, w);
    if (!v.is_zero()) total += mass * std::exp(2.0L * static_cast<long double>(v.log_abs));
    std::size_t k = 0;
    while (k < m && ++idx[k] == M) idx[k++] = 0;
    if (k == m) break;
  }
  return static_cast<double>(total);
}

LargeDeviationProbe large_deviation_probe(const MeasureModel& mu, const WeightModel& w, int d, double eta,
                                          std::uint64_t samples, std::uint64_t seed, double delta) {
  require(d >= 1, "degree must be >= 1");
  require(eta > 0.0 && delta > eta, "need delta > eta > 0");
  require(samples >= kMinSamples, "need at least 100 samples");
  const MeasureModel sampler = as_sampler(mu);
  const int N = static_cast<int>(sampler.dimension());
  const double l = static_cast<double>(degree_sum(N, d));
  LargeDeviationProbe p;
  p.d = d;
  p.eta = eta;
  p.delta = delta;
  p.samples = samples;
  p.seed = seed;
  p.threshold_log = 2.0 * l * std::log(delta - eta);
  p.bound = std::pow(1.0 - eta / (2.0 * delta), 2.0 * l);

  const std::vector<double> logs = sample_logs(sampler, w, d, samples, seed);
  double shift = -std::numeric_limits<double>::infinity();
  for (double v : logs) shift = std::max(shift, v);
  if (std::isinf(shift)) fail(ErrorKind::DegenerateProblem, "every sampled array has zero weighted Vandermonde");
  // p = sum X 1{X < t} / sum X
  double sx = 0.0, sy = 0.0, sxx = 0.0;
  for (double v : logs) {
    const double x = std::isinf(v) ? 0.0 : std::exp(v - shift);
    sx += x;
    sxx += x * x;
    if (v < p.threshold_log) sy += x;
  }
  p.probability = sy / sx;
  double r2 = 0.0;
  for (double v : logs) {
    const double x = std::isinf(v) ? 0.0 : std::exp(v - shift);
    const double y = v < p.threshold_log ? x : 0.0;
    r2 += (y - p.probability * x) * (y - p.probability * x);
  }
  p.stderr_abs = std::sqrt(r2) / sx;
  p.effective_samples = sx * sx / sxx;
  return p;
}

}  // namespace vdmlab
