#include "vdmlab/graded_basis.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

namespace vdmlab {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::Overflow: return "overflow";
    case ErrorKind::ResourceLimit: return "resource-limit";
    case ErrorKind::DegenerateWeight: return "degenerate-weight";
    case ErrorKind::DegenerateProblem: return "degenerate-problem";
    case ErrorKind::NumericalDegeneracy: return "numerical-degeneracy";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::GridTooCoarse: return "grid-too-coarse";
    case ErrorKind::TruncationInsufficient: return "truncation-insufficient";
  }
  return "unknown";
}

MultiIndex::MultiIndex(std::vector<int> exps) : exponents(std::move(exps)) {
  for (int e : exponents) require(e >= 0, "multi-index exponents must be nonnegative");
  degree = std::accumulate(exponents.begin(), exponents.end(), 0);
}

bool graded_less(const MultiIndex& a, const MultiIndex& b) {
  if (a.degree != b.degree) return a.degree < b.degree;
  // descending lex: larger leading exponent comes first
  return std::lexicographical_compare(b.exponents.begin(), b.exponents.end(),
                                      a.exponents.begin(), a.exponents.end());
}

std::size_t GradedBasis::position(const MultiIndex& alpha) const {
  auto it = std::lower_bound(indices.begin(), indices.end(), alpha, graded_less);
  if (it == indices.end() || !(*it == alpha))
    fail(ErrorKind::InvalidArgument, "multi-index not present in basis");
  return static_cast<std::size_t>(it - indices.begin());
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 acc = 1;
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  for (std::uint64_t i = 1; i <= k; ++i) {
    // acc holds C(n-k+i-1, i-1); intermediates increase monotonically
    acc = acc * (n - k + i) / i;
    if (acc > kMax)
      fail(ErrorKind::Overflow, "binomial(" + std::to_string(n) + "," + std::to_string(k) +
                                    ") exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(acc);
}

namespace {

void check_args(int dimension, int degree) {
  require(dimension >= 1, "dimension must be >= 1");
  require(degree >= 0, "degree must be >= 0");
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out;
  if (__builtin_mul_overflow(a, b, &out)) fail(ErrorKind::Overflow, "count exceeds 64 bits");
  return out;
}

void fill_block(int dimension, int remaining, std::size_t pos, std::vector<int>& exps,
                std::vector<MultiIndex>& out) {
  if (pos + 1 == static_cast<std::size_t>(dimension)) {
    exps[pos] = remaining;
    out.emplace_back(exps);
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    exps[pos] = e;
    fill_block(dimension, remaining - e, pos + 1, exps, out);
  }
}

BasisCounts make_counts(int dimension, int degree) {
  BasisCounts c;
  c.m = count_monomials(dimension, degree);
  c.l = degree_sum(dimension, degree);
  c.h.resize(static_cast<std::size_t>(degree) + 1);
  c.r.resize(static_cast<std::size_t>(degree) + 1);
  for (int k = 0; k <= degree; ++k) {
    c.h[k] = count_homogeneous(dimension, k);
    c.r[k] = checked_mul(static_cast<std::uint64_t>(k), c.h[k]);
  }
  return c;
}

}  // namespace

std::uint64_t count_monomials(int dimension, int degree) {
  check_args(dimension, degree);
  return binomial(static_cast<std::uint64_t>(dimension) + degree, static_cast<std::uint64_t>(degree));
}

std::uint64_t count_homogeneous(int dimension, int degree) {
  check_args(dimension, degree);
  return binomial(static_cast<std::uint64_t>(dimension) - 1 + degree, static_cast<std::uint64_t>(degree));
}

std::uint64_t degree_sum(int dimension, int degree) {
  check_args(dimension, degree);
  const auto n = static_cast<std::uint64_t>(dimension);
  return checked_mul(n, binomial(n + degree, n + 1));
}

std::vector<MultiIndex> homogeneous_block(int dimension, int degree) {
  check_args(dimension, degree);
  std::vector<MultiIndex> out;
  out.reserve(count_homogeneous(dimension, degree));
  std::vector<int> exps(static_cast<std::size_t>(dimension), 0);
  fill_block(dimension, degree, 0, exps, out);
  return out;
}

GradedBasis enumerate_basis(int dimension, int degree, std::size_t cap) {
  check_args(dimension, degree);
  const auto m = count_monomials(dimension, degree);
  if (m > cap)
    fail(ErrorKind::ResourceLimit, "basis size " + std::to_string(m) + " exceeds cap " + std::to_string(cap));
  GradedBasis basis;
  basis.dimension = dimension;
  basis.max_degree = degree;
  basis.indices.reserve(m);
  for (int j = 0; j <= degree; ++j) {
    auto block = homogeneous_block(dimension, j);
    std::move(block.begin(), block.end(), std::back_inserter(basis.indices));
  }
  basis.counts = make_counts(dimension, degree);
  return basis;
}

GradedBasis lift_basis(int dimension, int degree, std::size_t cap) {
  check_args(dimension, degree);
  const auto size = count_homogeneous(dimension + 1, degree);
  if (size != count_monomials(dimension, degree))
    fail(ErrorKind::Overflow, "lift cardinality identity violated");  // unreachable for exact arithmetic
  if (size > cap)
    fail(ErrorKind::ResourceLimit, "lift basis size " + std::to_string(size) + " exceeds cap");
  GradedBasis basis;
  basis.dimension = dimension + 1;
  basis.max_degree = degree;
  basis.homogeneous = true;
  basis.indices = homogeneous_block(dimension + 1, degree);
  basis.counts = make_counts(dimension, degree);
  return basis;
}

}  // namespace vdmlab
