#include <doctest.h>

#include "vdmlab/problem_io.hpp"

using namespace vdmlab;
using json = nlohmann::json;

namespace {

std::string pointer_of(const json& doc) {
  try {
    parse_problem(doc);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidArgument);
    return e.pointer();
  }
  return "<accepted>";
}

}  // namespace

TEST_CASE("full description") {
  const json doc = json::parse(R"({"schema_version": 1,
    "set": {"kind": "interval", "params": {"a": -2, "b": 3}},
    "weight": {"kind": "power", "params": {"coeff": 0.5, "power": 2}},
    "measure": {"kind": "arcsine", "params": {"nodes": 40}}})");
  const Problem p = parse_problem(doc);
  CHECK(p.set.kind == SetKind::Interval);
  CHECK(p.set.params == std::vector<double>{-2.0, 3.0});
  CHECK(p.weight.q({Complex(2.0)}) == doctest::Approx(2.0));
  REQUIRE(p.measure);
  CHECK(p.measure->nodes == 40);
  const MeasureModel mu = build_measure(*p.measure, p.set, 10);
  CHECK(mu.nodes.size() == 40);
  CHECK(mu.total_mass == doctest::Approx(1.0));
}

TEST_CASE("defaults and point clouds") {
  const Problem p = parse_problem(json::parse(R"({"set": {"kind": "circle"}})"));
  CHECK(p.set.params == std::vector<double>{1.0});
  CHECK(p.weight.unit);
  const Problem q = parse_problem(json::parse(R"({"set": {"kind": "point-cloud",
      "params": {"points": [[0, [1, 2]], [3, 4]]}}})"));
  REQUIRE(q.set.points.size() == 2);
  CHECK(q.set.points[0][1] == Complex(1.0, 2.0));
}

TEST_CASE("errors carry a pointer") {
  CHECK(pointer_of(json::parse(R"({})")) == "/set");
  CHECK(pointer_of(json::parse(R"({"set": {"kind": "moon"}})")) == "/set/kind");
  CHECK(pointer_of(json::parse(R"({"set": {"kind": "interval", "params": {"a": "x"}}})")) == "/set/params/a");
  CHECK(pointer_of(json::parse(R"({"set": {"kind": "interval", "params": {"c": 1}}})")) == "/set/params/c");
  CHECK(pointer_of(json::parse(R"({"schema_version": 7, "set": {"kind": "circle"}})")) == "/schema_version");
  CHECK(pointer_of(json::parse(R"({"set": {"kind": "point-cloud", "params": {"points": [[0, 1], [2]]}}})")) ==
        "/set/params/points/1");
  CHECK(pointer_of(json::parse(R"({"set": {"kind": "circle"}, "measure": {"kind": "atomic",
      "params": {"points": [0], "masses": [-1]}}})")) == "/measure/params/masses/0");
  CHECK(pointer_of(json::parse(R"({"set": {"kind": "circle"}, "extra": 1})")) == "/extra");
}

TEST_CASE("measure and set must match") {
  const Problem p = parse_problem(json::parse(R"({"set": {"kind": "circle"}, "measure": {"kind": "lebesgue"}})"));
  CHECK_THROWS_AS(build_measure(*p.measure, p.set, 8), Error);
}

TEST_CASE("shorthand") {
  const json j = shorthand_to_json("interval:a=0,b=2.5");
  CHECK(j["kind"] == "interval");
  CHECK(j["params"]["a"] == 0);
  CHECK(j["params"]["b"] == 2.5);
  CHECK(shorthand_to_json("circle")["params"].empty());
  CHECK(shorthand_to_json("ball:boundary_only=true")["params"]["boundary_only"] == true);
  CHECK_THROWS_AS(shorthand_to_json("interval:a"), Error);
}
