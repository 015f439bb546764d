#pragma once

// Small random generators for property tests. Each case draws from its own
// seeded engine so a failure names a reproducible case.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "vdmlab/types.hpp"

namespace gen {

using vdmlab::Complex;
using vdmlab::Point;

inline std::mt19937_64 engine(std::uint64_t test, std::uint64_t k) {
  std::seed_seq seq{test, k, std::uint64_t{0x5eed}};
  return std::mt19937_64(seq);
}

inline double uniform(std::mt19937_64& rng, double a, double b) {
  return std::uniform_real_distribution<double>(a, b)(rng);
}

inline int integer(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline Complex complex_in_disk(std::mt19937_64& rng, double r) {
  const double rho = r * std::sqrt(uniform(rng, 0.0, 1.0));
  return std::polar(rho, uniform(rng, 0.0, 6.283185307179586));
}

inline std::vector<Point> complex_points(std::mt19937_64& rng, int count, int dimension, double r = 1.0) {
  std::vector<Point> pts(count, Point(dimension));
  for (auto& p : pts)
    for (auto& c : p) c = complex_in_disk(rng, r);
  return pts;
}

inline std::vector<Point> real_points(std::mt19937_64& rng, int count, int dimension, double a = -1.0, double b = 1.0) {
  std::vector<Point> pts(count, Point(dimension));
  for (auto& p : pts)
    for (auto& c : p) c = uniform(rng, a, b);
  return pts;
}

inline std::vector<double> masses(std::mt19937_64& rng, int count) {
  std::vector<double> m(count);
  for (auto& x : m) x = uniform(rng, 0.2, 2.0);
  return m;
}

}  // namespace gen
