#include <doctest.h>

#include "generators.hpp"
#include "vdmlab/chebyshev.hpp"

using namespace vdmlab;

namespace {

ChebResult solve(ChebMode mode, MultiIndex a, const std::vector<Point>& m,
                 WeightModel w = WeightModel::unit_weight()) {
  return cheb_constant({mode, std::move(a), m, {}, std::move(w)}, 1e-9);
}

}  // namespace

TEST_CASE("interval: monic Chebyshev polynomials") {
  // 2520 = lcm(1..10): the Lobatto mesh holds every extremal point of T_n
  const auto m = mesh(SetModel::interval(), 2521);
  for (int n = 1; n <= 10; ++n) {
    const ChebResult r = solve(ChebMode::Plain, MultiIndex({n}), m);
    CAPTURE(n);
    CHECK(r.value == doctest::Approx(std::pow(2.0, 1 - n)).epsilon(1e-8));
    CHECK(r.lower_bound <= r.value * (1 + 1e-12));
    CHECK(r.residual <= 1e-9);
  }
  // [a, b]: 2 ((b - a) / 4)^n
  const auto m2 = mesh(SetModel::interval(1.0, 4.0), 201);  // 5 divides 200
  CHECK(solve(ChebMode::Plain, MultiIndex({5}), m2).value == doctest::Approx(2.0 * std::pow(0.75, 5)).epsilon(1e-8));
}

TEST_CASE("circle: z^n is optimal") {
  const auto m = mesh(SetModel::circle(), 64);
  for (int n = 1; n <= 6; ++n) CHECK(solve(ChebMode::Plain, MultiIndex({n}), m).value == doctest::Approx(1.0));
  const auto m3 = mesh(SetModel::circle(3.0), 64);
  CHECK(solve(ChebMode::Plain, MultiIndex({4}), m3).value == doctest::Approx(81.0).epsilon(1e-8));
}

TEST_CASE("torus: monomials are optimal") {
  const auto m = mesh(SetModel::torus(2), 16);
  for (const auto& a : homogeneous_block(2, 3)) CHECK(solve(ChebMode::Plain, a, m).value == doctest::Approx(1.0));
}

TEST_CASE("homogeneous mode in one variable has no competitors") {
  const auto m = mesh(SetModel::interval(), 101);
  CHECK(competitors(MultiIndex({4}), ChebMode::Homogeneous).empty());
  CHECK(solve(ChebMode::Homogeneous, MultiIndex({4}), m).value == doctest::Approx(1.0));
}

TEST_CASE("competitor sets") {
  CHECK(competitors(MultiIndex({1, 1}), ChebMode::Plain).size() == 4);
  const auto h = competitors(MultiIndex({1, 1}), ChebMode::Homogeneous);
  REQUIRE(h.size() == 1);
  CHECK(h[0].exponents == std::vector<int>{2, 0});
  CHECK(competitors(MultiIndex({1, 1}), ChebMode::Weighted).size() == 4);
}

TEST_CASE("weighted mode with the unit weight is the plain problem") {
  const auto m = mesh(SetModel::interval(), 201);
  CHECK(solve(ChebMode::Weighted, MultiIndex({6}), m).value ==
        doctest::Approx(solve(ChebMode::Plain, MultiIndex({6}), m).value).epsilon(1e-8));
}

TEST_CASE("weighted mode: shifting Q scales Y by exp(-n c)") {
  const auto m = mesh(SetModel::interval(-3.0, 3.0), 601);
  const WeightModel w = WeightModel::power(0.5, 2.0);
  for (int n : {3, 8}) {
    const double a = solve(ChebMode::Weighted, MultiIndex({n}), m, w).value;
    const double b = solve(ChebMode::Weighted, MultiIndex({n}), m, w.shifted(0.3)).value;
    CHECK(b == doctest::Approx(a * std::exp(-0.3 * n)).epsilon(1e-6));
  }
}

TEST_CASE("property: submultiplicativity on random real boxes") {
  for (int k = 0; k < 12; ++k) {
    auto rng = gen::engine(20, k);
    ChebSetup s;
    const double x = gen::uniform(rng, 0.5, 2.0), y = gen::uniform(rng, 0.5, 2.0);
    s.mesh = mesh(SetModel::real_box({-x, -y}, {x, y}), 13);
    s.tol = 1e-7;
    const int d1 = gen::integer(rng, 1, 3), d2 = gen::integer(rng, 1, 3);
    const auto b1 = homogeneous_block(2, d1), b2 = homogeneous_block(2, d2);
    const MultiIndex a = b1[gen::integer(rng, 0, static_cast<int>(b1.size()) - 1)];
    const MultiIndex b = b2[gen::integer(rng, 0, static_cast<int>(b2.size()) - 1)];
    for (ChebMode mode : {ChebMode::Plain, ChebMode::Homogeneous}) {
      const auto probe = submultiplicativity_probe(s, mode, a, b);
      CAPTURE(k);
      CHECK(probe.holds(1e-6));
    }
  }
}

TEST_CASE("directions") {
  CHECK(round_direction({0.5, 0.5}, 4).exponents == std::vector<int>{2, 2});
  CHECK(round_direction({0.5, 0.5}, 3).exponents == std::vector<int>{2, 1});
  CHECK(round_direction({0.2, 0.3, 0.5}, 10).exponents == std::vector<int>{2, 3, 5});
  for (int d = 1; d < 30; ++d) {
    const MultiIndex a = round_direction({0.31, 0.69}, d);
    CHECK(a.degree == d);
    CHECK(std::abs(a.exponents[0] - 0.31 * d) < 1.0);
  }
  ChebSetup s;
  s.mesh = mesh(SetModel::real_box({-1, -1}, {1, 1}), 9);
  CHECK_THROWS_AS(directional_constant(s, ChebMode::Plain, {1.0, 0.0}, {2, 4}), Error);
  CHECK_THROWS_AS(directional_constant(s, ChebMode::Plain, {0.3, 0.3}, {2, 4}), Error);
}

TEST_CASE("directional estimate on the bidisk is 1") {
  ChebSetup s;
  s.mesh = mesh(SetModel::torus(2), 16);
  const DirectionalEstimate e = directional_constant(s, ChebMode::Plain, {0.5, 0.5}, {2, 4, 6});
  CHECK(e.extrapolated == doctest::Approx(1.0));
  CHECK(e.spread < 1e-8);
}

TEST_CASE("tau geometric mean on the interval") {
  ChebSetup s;
  s.mesh = mesh(SetModel::interval(), 61);  // 60 = lcm(1..5)
  s.tol = 1e-9;
  for (int d : {2, 5}) {
    const TauMean t = tau_geometric_mean(s, 1, ChebMode::Plain, d);
    // prod_{j<=d} 2^{1-j} = 2^{d - l_d}, l_d = d(d+1)/2
    CHECK(t.full == doctest::Approx(std::pow(2.0, 2.0 / (d + 1) - 1.0)).epsilon(1e-7));
    CHECK(t.slice == doctest::Approx(std::pow(2.0, (1.0 - d) / d)).epsilon(1e-7));
  }
}

TEST_CASE("Zaharjuta rule") {
  CHECK(zaharjuta_trapezoid({0.3, 0.3, 0.3, 0.3}) == doctest::Approx(std::exp(0.3)));
  ChebSetup s;
  s.mesh = mesh(SetModel::interval(), 101);
  CHECK(zaharjuta_integral(s, 1, ChebMode::Plain, 4) == doctest::Approx(std::pow(0.125, 0.25)).epsilon(1e-7));
  CHECK_THROWS_AS(zaharjuta_integral(s, 3, ChebMode::Plain, 2), Error);
}

TEST_CASE("fine mesh gap is reported") {
  ChebyshevProblem p{ChebMode::Plain, MultiIndex({6}), mesh(SetModel::interval(), 9), mesh(SetModel::interval(), 401)};
  const ChebResult r = cheb_constant(p, 1e-9);
  CHECK(r.mesh_gap >= -1e-12);
}

TEST_CASE("circled sets: plain and homogeneous constants agree") {
  const auto m = mesh(SetModel::torus(2), 12);
  for (int d = 1; d <= 4; ++d)
    for (const auto& a : homogeneous_block(2, d))
      CHECK(solve(ChebMode::Plain, a, m).value == doctest::Approx(solve(ChebMode::Homogeneous, a, m).value).epsilon(1e-7));
  ChebSetup s;
  s.mesh = mesh(SetModel::circle(), 32);
  CHECK(tau_geometric_mean(s, 1, ChebMode::Plain, 5).full == doctest::Approx(1.0));
}
