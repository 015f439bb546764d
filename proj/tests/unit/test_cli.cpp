#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "vdmlab/cli.hpp"

namespace {

struct Run {
  int code = 0;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "vdmlab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = vdmlab::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> row;
    std::istringstream ls(line);
    std::string f;
    while (std::getline(ls, f, ',')) row.push_back(f);
    if (!line.empty() && line.back() == ',') row.emplace_back();
    rows.push_back(row);
  }
  return rows;
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "vdmlab-cli-test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("basis counts") {
  const Run r = run({"basis", "--dimension", "2", "--d-max", "3"});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0][0] == "op");
  CHECK(rows[3] == std::vector<std::string>{"graded_basis.counts", "2", "2", "6", "3", "8", "6", "6"});
}

TEST_CASE("diameter series has one row per degree and monotone counts") {
  const Run r = run({"diameter", "--set", "interval", "--d-max", "20", "--seed", "7"});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 21);
  CHECK(rows[0][3] == "m_d");
  CHECK(rows[0][4] == "l_d");
  for (std::size_t i = 2; i < rows.size(); ++i) {
    CHECK(std::stoull(rows[i][3]) > std::stoull(rows[i - 1][3]));
    CHECK(std::stoull(rows[i][4]) > std::stoull(rows[i - 1][4]));
  }
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i][0] == "fekete.diameter_series");
}

TEST_CASE("every subcommand names its op column") {
  const std::vector<std::vector<std::string>> cmds{
      {"cheb", "--set", "interval", "--d-max", "3"},
      {"hdiameter", "--set", "circle", "--d-max", "3"},
      {"wdiameter", "--set", "interval:a=-3,b=3", "--weight", "power:coeff=0.5", "--d-max", "3"},
      {"lift-check", "--set", "interval", "--weight", "gaussian", "--d-max", "2"},
      {"zd", "--set", "interval", "--measure", "arcsine", "--d-max", "3", "--lift", "7"},
      {"zd-mc", "--set", "circle", "--d-max", "2", "--samples", "500", "--seed", "1"},
      {"ldp", "--set", "circle", "--d-min", "2", "--d-max", "2", "--samples", "500", "--seed", "1", "--delta", "1"},
      {"christoffel", "--set", "interval", "--d-max", "3"},
      {"rumely", "--model", "polydisk", "--grid-size", "200"},
      {"cone", "--d-max", "2"},
  };
  for (const auto& c : cmds) {
    const Run r = run(c);
    CAPTURE(c[0]);
    CAPTURE(r.err);
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() >= 2);
    CHECK(rows[0][0] == "op");
    for (std::size_t i = 1; i < rows.size(); ++i) {
      CHECK(rows[i].size() == rows[0].size());
      CHECK(rows[i][0].find('.') != std::string::npos);
    }
  }
}

TEST_CASE("circle Z_d roots") {
  const Run r = run({"zd", "--set", "circle", "--measure", "arc", "--d-max", "5"});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  // Z_d = m_d! on the circle, so the root is (d+1)!^{1/(d(d+1))}
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const int d = std::stoi(rows[i][1]);
    CHECK(std::stod(rows[i][5]) == doctest::Approx(std::exp(std::lgamma(d + 2.0) / (d * (d + 1.0)))));
  }
}

TEST_CASE("invalid input exits with 2 and a pointer") {
  const auto bad = scratch("bad.json");
  std::ofstream(bad) << "{\"set\": ";
  Run r = run({"zd", "--spec", bad.string()});
  CHECK(r.code == 2);
  auto e = nlohmann::json::parse(r.err);
  CHECK(e["error"]["kind"] == "invalid-input");
  CHECK(e["error"].contains("pointer"));

  const auto wrong = scratch("wrong.json");
  std::ofstream(wrong) << R"({"set": {"kind": "interval", "params": {"a": "left"}}})";
  r = run({"zd", "--spec", wrong.string()});
  CHECK(r.code == 2);
  e = nlohmann::json::parse(r.err);
  CHECK(e["error"]["pointer"] == "/set/params/a");

  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"zd", "--d-max", "x"}).code == 2);
  CHECK(run({"zd-mc", "--set", "circle"}).code == 2);
  CHECK(run({"diameter", "--set", "interval", "--restarts", "3"}).code == 2);
}

TEST_CASE("module errors exit with 1") {
  // two atoms cannot carry the degree-2 basis
  const auto cloud = scratch("cloud2.json");
  std::ofstream(cloud) << R"({"set": {"kind": "interval"}, "measure": {"kind": "atomic",
      "params": {"points": [0, 1], "masses": [1, 1]}}})";
  const Run z = run({"zd", "--spec", cloud.string(), "--d-max", "2"});
  CHECK(z.code == 1);
  CHECK(nlohmann::json::parse(z.err)["error"]["kind"] == "numerical-degeneracy");
}

TEST_CASE("file output, sidecar and byte-identical reruns") {
  const auto out = scratch("mc.csv");
  const std::vector<std::string> args{"zd-mc", "--set", "interval", "--d-max", "3", "--samples", "2000",
                                      "--seed", "11", "--out", out.string()};
  REQUIRE(run(args).code == 0);
  std::ifstream a(out, std::ios::binary);
  const std::string first((std::istreambuf_iterator<char>(a)), {});
  REQUIRE(run(args).code == 0);
  std::ifstream b(out, std::ios::binary);
  const std::string second((std::istreambuf_iterator<char>(b)), {});
  CHECK(first == second);
  CHECK(first.find("wall") == std::string::npos);

  std::ifstream s(out.string() + ".json");
  const auto side = nlohmann::json::parse(s);
  CHECK(side["command"] == "zd-mc");
  CHECK(side["seed"] == 11);
  CHECK(side["spec"]["set"]["kind"] == "interval");
  CHECK(side["versions"].contains("eigen"));
  CHECK(side["row_wall_time"].size() == 3);
  CHECK(side.contains("wall_time"));
}
