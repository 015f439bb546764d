#include <doctest.h>

#include <algorithm>
#include <functional>

#include "vdmlab/graded_basis.hpp"

using namespace vdmlab;

namespace {

// All exponent vectors of total degree <= d by brute force over the box [0, d]^N.
std::vector<std::vector<int>> brute_force(int N, int d) {
  std::vector<std::vector<int>> out;
  std::vector<int> e(N, 0);
  std::function<void(int, int)> rec = [&](int k, int left) {
    if (k == N) {
      out.push_back(e);
      return;
    }
    for (int v = 0; v <= d; ++v) {
      e[k] = v;
      if (v <= left) rec(k + 1, left - v);
    }
    e[k] = 0;
  };
  rec(0, d);
  return out;
}

int total(const std::vector<int>& e) {
  int s = 0;
  for (int v : e) s += v;
  return s;
}

}  // namespace

TEST_CASE("counts agree with exhaustive enumeration") {
  for (int N = 1; N <= 4; ++N)
    for (int d = 0; d <= 10; ++d) {
      const auto all = brute_force(N, d);
      std::uint64_t m = all.size(), h = 0, l = 0;
      for (const auto& e : all) {
        l += total(e);
        if (total(e) == d) ++h;
      }
      CAPTURE(N);
      CAPTURE(d);
      CHECK(count_monomials(N, d) == m);
      CHECK(count_homogeneous(N, d) == h);
      CHECK(degree_sum(N, d) == l);
      CHECK(count_homogeneous(N + 1, d) == count_monomials(N, d));
    }
}

TEST_CASE("small closed values") {
  CHECK(count_monomials(2, 2) == 6);
  CHECK(count_homogeneous(2, 3) == 4);
  CHECK(degree_sum(1, 4) == 10);
  CHECK(degree_sum(2, 2) == 8);
  CHECK(binomial(10, 3) == 120);
  CHECK(binomial(3, 5) == 0);
}

TEST_CASE("binomial overflow is reported") {
  CHECK(binomial(66, 33) == 7219428434016265740ULL);
  CHECK_THROWS_AS(binomial(70, 35), Error);
  try {
    binomial(70, 35);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Overflow);
  }
}

TEST_CASE("graded order: degree first, then descending lex") {
  const GradedBasis b = enumerate_basis(3, 3);
  REQUIRE(b.size() == count_monomials(3, 3));
  for (std::size_t i = 1; i < b.size(); ++i) {
    const auto& p = b[i - 1];
    const auto& q = b[i];
    CHECK(graded_less(p, q));
    CHECK_FALSE(graded_less(q, p));
    if (p.degree == q.degree) CHECK(std::lexicographical_compare(q.exponents.begin(), q.exponents.end(),
                                                                 p.exponents.begin(), p.exponents.end()));
    else CHECK(p.degree < q.degree);
  }
  CHECK(b[1].exponents == std::vector<int>{1, 0, 0});
  CHECK(b[3].exponents == std::vector<int>{0, 0, 1});
  CHECK(b[4].exponents == std::vector<int>{2, 0, 0});
  CHECK(b.position(MultiIndex({0, 1, 1})) == 8);
  CHECK_THROWS_AS(b.position(MultiIndex({4, 0, 0})), Error);
}

TEST_CASE("basis bookkeeping") {
  const GradedBasis b = enumerate_basis(2, 4);
  CHECK(b.counts.m == 15);
  REQUIRE(b.counts.h.size() == 5);
  for (int k = 0; k <= 4; ++k) {
    CHECK(b.counts.h[k] == static_cast<std::uint64_t>(k + 1));
    CHECK(b.counts.r[k] == static_cast<std::uint64_t>(k * (k + 1)));
  }
  CHECK(b.counts.l == degree_sum(2, 4));
}

TEST_CASE("homogeneous block and lift basis") {
  const auto block = homogeneous_block(3, 2);
  CHECK(block.size() == 6);
  for (const auto& a : block) CHECK(a.degree == 2);
  const GradedBasis lift = lift_basis(2, 3);
  CHECK(lift.homogeneous);
  CHECK(lift.size() == count_monomials(2, 3));
  CHECK(lift[0].exponents == std::vector<int>{3, 0, 0});
  CHECK(lift[lift.size() - 1].exponents == std::vector<int>{0, 0, 3});
  for (const auto& a : lift.indices) CHECK(a.dimension() == 3);
}

TEST_CASE("cap is enforced") {
  CHECK_THROWS_AS(enumerate_basis(4, 20, 100), Error);
}
