#include "vdmlab/problem_io.hpp"

#include <cmath>
#include <set>

namespace vdmlab {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& pointer, const std::string& msg) {
  throw Error(ErrorKind::InvalidArgument, msg, pointer);
}

const json& object_at(const json& doc, const std::string& key, const std::string& pointer) {
  if (!doc.contains(key)) bad(pointer + "/" + key, "missing required field '" + key + "'");
  const json& v = doc.at(key);
  if (!v.is_object()) bad(pointer + "/" + key, "expected an object");
  return v;
}

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& pointer) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key())) bad(pointer + "/" + it.key(), "unknown field '" + it.key() + "'");
}

double number(const json& params, const std::string& key, const std::string& pointer, double fallback) {
  if (!params.contains(key)) return fallback;
  const json& v = params.at(key);
  if (!v.is_number()) bad(pointer + "/" + key, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) bad(pointer + "/" + key, "expected a finite number");
  return x;
}

int integer(const json& params, const std::string& key, const std::string& pointer, int fallback) {
  if (!params.contains(key)) return fallback;
  const json& v = params.at(key);
  if (!v.is_number_integer()) bad(pointer + "/" + key, "expected an integer");
  return v.get<int>();
}

bool boolean(const json& params, const std::string& key, const std::string& pointer, bool fallback) {
  if (!params.contains(key)) return fallback;
  const json& v = params.at(key);
  if (!v.is_boolean()) bad(pointer + "/" + key, "expected true or false");
  return v.get<bool>();
}

std::vector<double> numbers(const json& params, const std::string& key, const std::string& pointer) {
  if (!params.contains(key)) bad(pointer + "/" + key, "missing required field '" + key + "'");
  const json& v = params.at(key);
  if (!v.is_array()) bad(pointer + "/" + key, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) bad(pointer + "/" + key + "/" + std::to_string(i), "expected a number");
    out.push_back(v[i].get<double>());
  }
  return out;
}

std::vector<Point> points(const json& params, const std::string& key, const std::string& pointer) {
  if (!params.contains(key)) bad(pointer + "/" + key, "missing required field '" + key + "'");
  const json& v = params.at(key);
  if (!v.is_array() || v.empty()) bad(pointer + "/" + key, "expected a nonempty array of points");
  std::vector<Point> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(parse_point(v[i], pointer + "/" + key + "/" + std::to_string(i)));
    if (out.back().size() != out.front().size())
      bad(pointer + "/" + key + "/" + std::to_string(i), "point dimension differs from the first point");
  }
  return out;
}

// Runs a model factory and re-tags its InvalidArgument with `pointer`.
template <class F>
auto guarded(const std::string& pointer, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.pointer().empty()) throw Error(e.kind(), e.what(), pointer);
    throw;
  }
}

SetModel parse_set(const json& j, const std::string& ptr) {
  check_keys(j, {"kind", "params"}, ptr);
  if (!j.contains("kind") || !j["kind"].is_string()) bad(ptr + "/kind", "expected a string set kind");
  const std::string kind = j["kind"].get<std::string>();
  const json params = j.contains("params") ? j["params"] : json::object();
  const std::string pp = ptr + "/params";
  if (!params.is_object()) bad(pp, "expected an object");
  return guarded(pp, [&]() -> SetModel {
    if (kind == "interval") {
      check_keys(params, {"a", "b"}, pp);
      return SetModel::interval(number(params, "a", pp, -1.0), number(params, "b", pp, 1.0));
    }
    if (kind == "real-box") {
      check_keys(params, {"lo", "hi"}, pp);
      return SetModel::real_box(numbers(params, "lo", pp), numbers(params, "hi", pp));
    }
    if (kind == "circle") {
      check_keys(params, {"radius"}, pp);
      return SetModel::circle(number(params, "radius", pp, 1.0));
    }
    if (kind == "torus") {
      check_keys(params, {"dimension", "radius"}, pp);
      return SetModel::torus(integer(params, "dimension", pp, 2), number(params, "radius", pp, 1.0));
    }
    if (kind == "complex-disk" || kind == "disk") {
      check_keys(params, {"radius", "boundary_only"}, pp);
      return SetModel::disk(number(params, "radius", pp, 1.0), boolean(params, "boundary_only", pp, false));
    }
    if (kind == "complex-ball" || kind == "ball") {
      check_keys(params, {"dimension", "radius", "boundary_only"}, pp);
      return SetModel::ball(integer(params, "dimension", pp, 2), number(params, "radius", pp, 1.0),
                            boolean(params, "boundary_only", pp, false));
    }
    if (kind == "polydisk") {
      check_keys(params, {"dimension", "radius", "boundary_only"}, pp);
      return SetModel::polydisk(integer(params, "dimension", pp, 2), number(params, "radius", pp, 1.0),
                                boolean(params, "boundary_only", pp, false));
    }
    if (kind == "real-simplex" || kind == "simplex") {
      check_keys(params, {"dimension"}, pp);
      return SetModel::real_simplex(integer(params, "dimension", pp, 2));
    }
    if (kind == "cone-truncation" || kind == "cone") {
      check_keys(params, {"dimension", "T"}, pp);
      return SetModel::cone_truncation(integer(params, "dimension", pp, 1), number(params, "T", pp, 10.0));
    }
    if (kind == "point-cloud") {
      check_keys(params, {"points"}, pp);
      return SetModel::point_cloud(points(params, "points", pp));
    }
    bad(ptr + "/kind", "unknown set kind '" + kind + "'");
  });
}

WeightModel parse_weight(const json& j, const std::string& ptr) {
  check_keys(j, {"kind", "params"}, ptr);
  if (!j.contains("kind") || !j["kind"].is_string()) bad(ptr + "/kind", "expected a string weight kind");
  const std::string kind = j["kind"].get<std::string>();
  const json params = j.contains("params") ? j["params"] : json::object();
  const std::string pp = ptr + "/params";
  if (!params.is_object()) bad(pp, "expected an object");
  return guarded(pp, [&]() -> WeightModel {
    if (kind == "unit") {
      check_keys(params, {}, pp);
      return WeightModel::unit_weight();
    }
    if (kind == "power") {
      check_keys(params, {"coeff", "power", "shift"}, pp);
      return WeightModel::power(number(params, "coeff", pp, 1.0), number(params, "power", pp, 2.0),
                                number(params, "shift", pp, 0.0));
    }
    if (kind == "gaussian") {
      // w = exp(-coeff |x|^2)
      check_keys(params, {"coeff", "shift"}, pp);
      return WeightModel::power(number(params, "coeff", pp, 1.0), 2.0, number(params, "shift", pp, 0.0));
    }
    bad(ptr + "/kind", "unknown weight kind '" + kind + "'");
  });
}

MeasureSpec parse_measure(const json& j, const std::string& ptr) {
  check_keys(j, {"kind", "params"}, ptr);
  if (!j.contains("kind") || !j["kind"].is_string()) bad(ptr + "/kind", "expected a string measure kind");
  MeasureSpec m;
  m.kind = j["kind"].get<std::string>();
  static const std::set<std::string> kinds{"arc", "lebesgue", "arcsine", "atomic", "uniform"};
  if (!kinds.count(m.kind)) bad(ptr + "/kind", "unknown measure kind '" + m.kind + "'");
  m.params = j.contains("params") ? j["params"] : json::object();
  const std::string pp = ptr + "/params";
  if (!m.params.is_object()) bad(pp, "expected an object");
  if (m.kind == "atomic") {
    check_keys(m.params, {"points", "masses"}, pp);
    const auto pts = points(m.params, "points", pp);
    const auto masses = numbers(m.params, "masses", pp);
    if (masses.size() != pts.size()) bad(pp + "/masses", "need one mass per point");
    for (std::size_t i = 0; i < masses.size(); ++i)
      if (masses[i] < 0.0) bad(pp + "/masses/" + std::to_string(i), "masses must be nonnegative");
  } else {
    check_keys(m.params, {"nodes"}, pp);
    m.nodes = integer(m.params, "nodes", pp, 0);
    if (m.nodes < 0) bad(pp + "/nodes", "node count must be >= 0");
  }
  return m;
}

}  // namespace

Point parse_point(const json& j, const std::string& pointer) {
  if (j.is_number()) return {Complex{j.get<double>(), 0.0}};
  if (!j.is_array() || j.empty()) bad(pointer, "expected a point (array of coordinates)");
  Point p;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const json& c = j[k];
    const std::string cp = pointer + "/" + std::to_string(k);
    if (c.is_number()) {
      p.emplace_back(c.get<double>(), 0.0);
    } else if (c.is_array() && c.size() == 2 && c[0].is_number() && c[1].is_number()) {
      p.emplace_back(c[0].get<double>(), c[1].get<double>());
    } else {
      bad(cp, "coordinate must be a number or [re, im]");
    }
    if (!std::isfinite(p.back().real()) || !std::isfinite(p.back().imag())) bad(cp, "non-finite coordinate");
  }
  return p;
}

Problem parse_problem(const json& doc) {
  if (!doc.is_object()) bad("", "problem description must be a JSON object");
  check_keys(doc, {"schema_version", "set", "weight", "measure"}, "");
  if (doc.contains("schema_version")) {
    const json& v = doc["schema_version"];
    if (!v.is_number_integer() || v.get<int>() != kSchemaVersion)
      bad("/schema_version", "unsupported schema version (expected " + std::to_string(kSchemaVersion) + ")");
  }
  Problem p;
  p.source = doc;
  p.set = parse_set(object_at(doc, "set", ""), "/set");
  if (doc.contains("weight")) p.weight = parse_weight(object_at(doc, "weight", ""), "/weight");
  if (doc.contains("measure")) p.measure = parse_measure(object_at(doc, "measure", ""), "/measure");
  return p;
}

MeasureModel build_measure(const MeasureSpec& spec, const SetModel& set, int default_nodes) {
  const int n = spec.nodes > 0 ? spec.nodes : default_nodes;
  auto need = [&](bool ok, const std::string& what) {
    if (!ok) throw Error(ErrorKind::InvalidArgument, "measure '" + spec.kind + "' needs " + what, "/measure/kind");
  };
  if (spec.kind == "atomic") {
    std::vector<Point> pts;
    for (std::size_t i = 0; i < spec.params["points"].size(); ++i)
      pts.push_back(parse_point(spec.params["points"][i], "/measure/params/points/" + std::to_string(i)));
    return MeasureModel::atomic(std::move(pts), spec.params["masses"].get<std::vector<double>>());
  }
  if (spec.kind == "arc") {
    need(set.kind == SetKind::Circle, "a circle set");
    return MeasureModel::circle_arc(set.params[0], n);
  }
  if (spec.kind == "lebesgue") {
    need(set.kind == SetKind::Interval, "an interval set");
    return MeasureModel::lebesgue_interval(set.params[0], set.params[1], n);
  }
  if (spec.kind == "arcsine") {
    need(set.kind == SetKind::Interval, "an interval set");
    return MeasureModel::arcsine(set.params[0], set.params[1], n);
  }
  // uniform sampler
  if (set.kind == SetKind::Circle) return MeasureModel::uniform_circle_sampler(set.params[0]);
  if (set.kind == SetKind::Interval) return MeasureModel::uniform_interval_sampler(set.params[0], set.params[1]);
  if (set.kind == SetKind::PointCloud)
    return MeasureModel::atom_sampler(set.points, std::vector<double>(set.points.size(), 1.0));
  need(false, "a circle, interval or point-cloud set");
  fail(ErrorKind::InvalidArgument, "unreachable");
}

json shorthand_to_json(const std::string& text) {
  json out;
  const auto colon = text.find(':');
  out["kind"] = text.substr(0, colon);
  json params = json::object();
  if (colon != std::string::npos) {
    std::string rest = text.substr(colon + 1);
    std::size_t pos = 0;
    while (pos <= rest.size()) {
      const auto comma = rest.find(',', pos);
      const std::string item = rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      if (!item.empty()) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) bad("", "shorthand parameter '" + item + "' is not key=value");
        const std::string key = item.substr(0, eq), val = item.substr(eq + 1);
        json parsed = json::parse(val, nullptr, false);
        params[key] = parsed.is_discarded() ? json(val) : parsed;
      }
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  }
  out["params"] = params;
  return out;
}

}  // namespace vdmlab
