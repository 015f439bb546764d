#include <doctest.h>

#include "generators.hpp"
#include "vdmlab/fekete.hpp"
#include "vdmlab/vandermonde.hpp"

using namespace vdmlab;

TEST_CASE("interval: endpoints and the midpoint") {
  const auto m = mesh(SetModel::interval(), 101);
  const auto two = fekete_search(FeketeProblem::plain(m, 2));
  CHECK(two.value.abs() == doctest::Approx(2.0));
  const auto three = fekete_search(FeketeProblem::plain(m, 3));
  CHECK(three.value.abs() == doctest::Approx(2.0));
  // degree-4 Fekete points on [-1, 1]: 0, +-1, +-sqrt(3/7)
  const auto five = fekete_search(FeketeProblem::plain(mesh(SetModel::interval(), 4001), 5));
  const double s = std::sqrt(3.0 / 7.0);
  const std::vector<Point> exact{{Complex(-1.0)}, {Complex(-s)}, {Complex(0.0)}, {Complex(s)}, {Complex(1.0)}};
  CHECK(five.value.log_abs == doctest::Approx(vdm(exact).log_abs).epsilon(1e-5));
}

TEST_CASE("circle: roots of unity, |VDM| = n^{n/2}") {
  const auto m = mesh(SetModel::circle(), 120);
  for (int n : {3, 4, 6, 8, 12}) {
    const auto c = fekete_search(FeketeProblem::plain(m, n));
    CAPTURE(n);
    CHECK(c.value.log_abs == doctest::Approx(0.5 * n * std::log(n)).epsilon(1e-10));
    const MomentReport r = moments(fekete_measure(c), 4);
    for (std::size_t i = 1; i < r.indices.size(); ++i)
      if (r.indices[i].degree < n) CHECK(std::abs(r.moments[i]) < 1e-12);
  }
}

TEST_CASE("tracked and recomputed values agree") {
  const auto c = fekete_search(FeketeProblem::plain(mesh(SetModel::real_box({-1, -1}, {1, 1}), 21), 15), {3, 11});
  CHECK(c.tracked_log == doctest::Approx(c.value.log_abs).epsilon(1e-8));
  CHECK(c.restarts == 3);
  for (std::size_t i = 1; i < c.history.size(); ++i) CHECK(c.history[i] >= c.history[i - 1] - 1e-9);
}

TEST_CASE("property: results are single-swap optimal") {
  for (int k = 0; k < 25; ++k) {
    auto rng = gen::engine(30, k);
    const int N = gen::integer(rng, 1, 2);
    const auto cloud = gen::complex_points(rng, 60, N, 1.0);
    const int n = gen::integer(rng, 2, 10);
    const FeketeProblem p = FeketeProblem::plain(cloud, n);
    const auto c = fekete_search(p, {2, static_cast<std::uint64_t>(k)});
    CAPTURE(k);
    CHECK(best_swap_ratio(p, c) <= 1.0 + 1e-9);
    CHECK(c.points.size() == static_cast<std::size_t>(n));
  }
}

TEST_CASE("seeded restarts are reproducible") {
  const auto m = mesh(SetModel::ball(2), 5);
  const auto a = fekete_search(FeketeProblem::plain(m, 10), {4, 99});
  const auto b = fekete_search(FeketeProblem::plain(m, 10), {4, 99});
  CHECK(a.mesh_indices == b.mesh_indices);
  CHECK(a.value.log_abs == b.value.log_abs);
}

TEST_CASE("weighted: shifting Q by c lowers log|W| by c d m_d") {
  const auto m = mesh(SetModel::interval(-3.0, 3.0), 601);
  const WeightModel w = WeightModel::power(0.5, 2.0);
  for (int d : {2, 6}) {
    const auto a = fekete_search(FeketeProblem::weighted(m, d, w));
    const auto b = fekete_search(FeketeProblem::weighted(m, d, w.shifted(0.7)));
    const double md = static_cast<double>(count_monomials(1, d));
    CHECK(b.value.log_abs == doctest::Approx(a.value.log_abs - 0.7 * d * md).epsilon(1e-9));
  }
}

TEST_CASE("weighted value matches weighted_vdm on the returned points") {
  const auto m = mesh(SetModel::interval(-2.0, 2.0), 401);
  const WeightModel w = WeightModel::power(1.0, 2.0);
  const auto c = fekete_search(FeketeProblem::weighted(m, 5, w));
  // the weighted objective uses exponent d on every point
  double expected = vdm(c.points).log_abs;
  for (const auto& p : c.points) expected -= 5 * w.q(p);
  CHECK(c.value.log_abs == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("zero weight everywhere is degenerate") {
  const WeightModel none =
      WeightModel::custom("none", [](const Point&) { return std::numeric_limits<double>::infinity(); });
  CHECK_THROWS_AS(fekete_search(FeketeProblem::weighted(mesh(SetModel::interval(), 21), 2, none)), Error);
}

TEST_CASE("diameter series bookkeeping") {
  SeriesOptions o;
  o.d_min = 1;
  o.d_max = 6;
  const DiameterSeries s = diameter_series(SetModel::interval(), FeketeKind::Plain, o);
  REQUIRE(s.entries.size() == 6);
  for (std::size_t i = 0; i < s.entries.size(); ++i) {
    const auto& e = s.entries[i];
    CHECK(e.m_d == count_monomials(1, e.d));
    CHECK(e.l_d == degree_sum(1, e.d));
    CHECK(e.root == doctest::Approx(std::exp(e.log_max / e.l_d)));
    if (i) CHECK(e.m_d > s.entries[i - 1].m_d);
  }
  CHECK(s.spread >= 0.0);
  const DiameterSeries h = diameter_series(SetModel::circle(), FeketeKind::Homogeneous, o);
  for (const auto& e : h.entries) CHECK(e.root == doctest::Approx(1.0));
}

TEST_CASE("lift consistency on the interval") {
  SeriesOptions o;
  o.d_min = 1;
  o.d_max = 4;
  for (const auto& r : lift_consistency(SetModel::interval(), WeightModel::power(1.0, 2.0), o)) {
    CAPTURE(r.d);
    CHECK(r.gap <= 1e-10);
    CHECK(r.lift_adjusted == doctest::Approx(std::pow(r.lift_root, 2.0)));
  }
}
