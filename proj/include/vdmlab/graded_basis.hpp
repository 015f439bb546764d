#pragma once

// Graded monomial bases: multi-indices ordered by total degree, ties broken
// by descending lexicographic order on the exponent vector, so the degree-j
// block runs (j,0,...,0), (j-1,1,0,...), ..., (0,...,0,j).

#include <cstddef>
#include <cstdint>
#include <vector>

#include "vdmlab/types.hpp"

namespace vdmlab {

struct MultiIndex {
  std::vector<int> exponents;
  int degree = 0;

  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> exps);

  std::size_t dimension() const noexcept { return exponents.size(); }
  bool operator==(const MultiIndex&) const = default;
};

/// Strict weak order of the graded basis: degree first, then descending lex.
bool graded_less(const MultiIndex& a, const MultiIndex& b);

struct BasisCounts {
  std::uint64_t m = 0;                 // monomials of degree <= d
  std::vector<std::uint64_t> h;        // h[k], k = 0..d
  std::uint64_t l = 0;                 // sum of degrees over the m monomials
  std::vector<std::uint64_t> r;        // r[k] = k h[k], k = 0..d (r[0] = 0)
};

struct GradedBasis {
  int dimension = 0;
  int max_degree = 0;
  bool homogeneous = false;  // true for a single degree block (lift basis)
  std::vector<MultiIndex> indices;
  BasisCounts counts;

  std::size_t size() const noexcept { return indices.size(); }
  const MultiIndex& operator[](std::size_t i) const { return indices[i]; }

  /// Position of `alpha` in the ordering; throws InvalidArgument if absent.
  std::size_t position(const MultiIndex& alpha) const;
};

inline constexpr std::size_t kDefaultBasisCap = std::size_t{1} << 22;

/// Exact binomial coefficient; throws ErrorKind::Overflow past 2^64 - 1.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

std::uint64_t count_monomials(int dimension, int degree);     // m_d
std::uint64_t count_homogeneous(int dimension, int degree);   // h_d
std::uint64_t degree_sum(int dimension, int degree);          // l_d

/// All exponent vectors of total degree exactly `degree`, descending lex.
std::vector<MultiIndex> homogeneous_block(int dimension, int degree);

GradedBasis enumerate_basis(int dimension, int degree, std::size_t cap = kDefaultBasisCap);

/// Degree-d homogeneous monomials in N+1 variables (t, z_1..z_N) with t
/// leading: t^d, t^{d-1} z_1, ..., z_N^d. Its size is m_d of dimension N.
GradedBasis lift_basis(int dimension, int degree, std::size_t cap = kDefaultBasisCap);

}  // namespace vdmlab
