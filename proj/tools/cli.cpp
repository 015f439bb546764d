#include "vdmlab/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "vdmlab/chebyshev.hpp"
#include "vdmlab/cone_case.hpp"
#include "vdmlab/domain_models.hpp"
#include "vdmlab/fekete.hpp"
#include "vdmlab/graded_basis.hpp"
#include "vdmlab/montecarlo.hpp"
#include "vdmlab/orthopoly.hpp"
#include "vdmlab/parallel.hpp"
#include "vdmlab/problem_io.hpp"
#include "vdmlab/rumely.hpp"

namespace vdmlab {

namespace {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

// Raised for malformed input; maps to exit code 2.
struct InputError {
  std::string message;
  std::string pointer;
};

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string num(std::uint64_t x) { return std::to_string(x); }
std::string num(int x) { return std::to_string(x); }

std::string exponents(const MultiIndex& a) {
  std::string s;
  for (std::size_t k = 0; k < a.exponents.size(); ++k) s += (k ? " " : "") + std::to_string(a.exponents[k]);
  return s;
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<double> wall;  // per row, seconds; sidecar only

  void add(std::vector<std::string> row, double seconds = 0.0) {
    rows.push_back(std::move(row));
    wall.push_back(seconds);
  }

  std::string csv() const {
    auto field = [](const std::string& f) {
      if (f.find_first_of(",\"\n") == std::string::npos) return f;
      std::string q = "\"";
      for (char c : f) q += c == '"' ? std::string("\"\"") : std::string(1, c);
      return q + "\"";
    };
    std::ostringstream os;
    for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << field(header[i]);
    os << "\n";
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << field(r[i]);
      os << "\n";
    }
    return os.str();
  }
};

struct Options {
  std::string spec_file, out, set, weight, measure;
  std::optional<std::uint64_t> seed;
  int threads = 0;
  double tol = 1e-6;
  int d_min = 1, d_max = 5;
  int mesh_resolution = 0, phase_resolution = 0, restarts = 1;
  std::uint64_t samples = 10000;
  int dimension = 1;
  // cheb
  std::string mode = "plain";
  bool zaharjuta = false;
  // zd
  int lift_phases = 0;
  int nodes = 0;
  // christoffel
  bool bernstein_markov = false;
  // ldp
  double eta = 0.5, delta = 0.0;
  // rumely
  std::string model = "ball";
  double grid_radius = 1000.0;
  int grid_size = 600;
  std::vector<double> radii{1.0, 1.0};
  // cone
  double gamma = 1.0, c = 1.0, T = 0.0;
  int resolution = 1;
  int density_power = 0;
};

json load_spec(const Options& o) {
  json doc = json::object();
  if (!o.spec_file.empty()) {
    std::ifstream in(o.spec_file);
    if (!in) throw InputError{"cannot open spec file '" + o.spec_file + "'", ""};
    std::stringstream ss;
    ss << in.rdbuf();
    try {
      doc = json::parse(ss.str());
    } catch (const json::parse_error& e) {
      throw InputError{std::string("invalid JSON: ") + e.what(), ""};
    }
  }
  if (doc.is_object()) {
    if (!doc.contains("schema_version")) doc["schema_version"] = kSchemaVersion;
    if (!o.set.empty()) doc["set"] = shorthand_to_json(o.set);
    if (!o.weight.empty()) doc["weight"] = shorthand_to_json(o.weight);
    if (!o.measure.empty()) doc["measure"] = shorthand_to_json(o.measure);
  }
  return doc;
}

Problem problem(const json& doc) {
  if (!doc.is_object() || !doc.contains("set")) throw InputError{"this command needs a set (--set or --spec)", "/set"};
  return parse_problem(doc);
}

// Fekete searches are deterministic with one restart; extra restarts draw randomized starts.
bool stochastic(const std::string& cmd, const Options& o) {
  if (cmd == "zd-mc" || cmd == "ldp") return true;
  const bool fekete = cmd == "diameter" || cmd == "hdiameter" || cmd == "wdiameter" || cmd == "lift-check" ||
                      (cmd == "rumely" && o.model == "identity");
  return fekete && o.restarts > 1;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

SearchOptions search(const Options& o) {
  SearchOptions s;
  s.restarts = o.restarts;
  s.seed = o.seed.value_or(0);
  return s;
}

SeriesOptions series(const Options& o) {
  SeriesOptions s;
  s.d_min = o.d_min;
  s.d_max = o.d_max;
  s.mesh_resolution = o.mesh_resolution;
  s.phase_resolution = o.phase_resolution;
  s.search = search(o);
  return s;
}

Table cmd_basis(const Options& o) {
  Table t;
  t.header = {"op", "N", "d", "m_d", "h_d", "l_d", "r_d", "h_d_lift"};
  for (int d = 0; d <= o.d_max; ++d) {
    const int N = o.dimension;
    t.add({"graded_basis.counts", num(N), num(d), num(count_monomials(N, d)), num(count_homogeneous(N, d)),
           num(degree_sum(N, d)), num(static_cast<std::uint64_t>(d) * count_homogeneous(N, d)),
           num(count_homogeneous(N + 1, d))});
  }
  return t;
}

Table cmd_cheb(const Options& o, const Problem& p) {
  const ChebMode mode = parse_cheb_mode(o.mode);
  ChebSetup setup;
  const int res = o.mesh_resolution > 0 ? o.mesh_resolution : default_resolution(p.set, o.d_max);
  setup.mesh = mesh(p.set, res);
  setup.weight = p.weight;
  setup.tol = o.tol;
  const int N = p.set.dimension;
  Table t;
  t.header = {"op", "mode", "d", "alpha", "value", "lower_bound", "residual", "tau"};
  for (int d = o.d_min; d <= o.d_max; ++d) {
    for (const MultiIndex& a : homogeneous_block(N, d)) {
      const auto t0 = Clock::now();
      const ChebResult r = cheb_constant({mode, a, setup.mesh, {}, setup.weight}, o.tol);
      t.add({"chebyshev.cheb_constant", o.mode, num(d), exponents(a), num(r.value), num(r.lower_bound),
             num(r.residual), num(std::pow(r.value, 1.0 / d))},
            seconds_since(t0));
    }
    if (o.zaharjuta) {
      const auto t0 = Clock::now();
      const double z = zaharjuta_integral(setup, N, mode, d);
      t.add({"chebyshev.zaharjuta_integral", o.mode, num(d), "", num(z), "", "", num(z)}, seconds_since(t0));
    }
  }
  return t;
}

Table cmd_diameter(const Options& o, const Problem& p, FeketeKind kind) {
  const DiameterSeries s = diameter_series(p.set, kind, series(o), p.weight);
  Table t;
  t.header = {"op", "kind", "d", "m_d", "l_d", "log_max", "root", "admissible", "restarts", "seed"};
  for (const DiameterEntry& e : s.entries)
    t.add({"fekete.diameter_series", std::string(to_string(kind)), num(e.d), num(e.m_d), num(e.l_d), num(e.log_max),
           num(e.root), e.admissible ? "true" : "false", num(o.restarts), num(o.seed.value_or(0))},
          e.wall_time);
  return t;
}

Table cmd_lift_check(const Options& o, const Problem& p) {
  const auto t0 = Clock::now();
  const auto rows = lift_consistency(p.set, p.weight, series(o));
  const double each = seconds_since(t0) / std::max<std::size_t>(1, rows.size());
  Table t;
  t.header = {"op", "d", "log_weighted", "log_lift", "gap", "delta_w", "lift_root", "lift_adjusted", "series_gap"};
  for (const auto& r : rows)
    t.add({"fekete.lift_consistency", num(r.d), num(r.log_weighted), num(r.log_lift), num(r.gap), num(r.delta_w),
           num(r.lift_root), num(r.lift_adjusted), num(r.series_gap)},
          each);
  return t;
}

MeasureSpec measure_spec(const Problem& p, bool sampler) {
  if (p.measure) return *p.measure;
  MeasureSpec m;
  switch (p.set.kind) {
    case SetKind::Circle: m.kind = sampler ? "uniform" : "arc"; break;
    case SetKind::Interval: m.kind = sampler ? "uniform" : "lebesgue"; break;
    case SetKind::PointCloud:
      if (sampler) {
        m.kind = "uniform";
      } else {
        m.kind = "atomic";
        json pts = json::array();
        for (const Point& z : p.set.points) {
          json q = json::array();
          for (const Complex& c : z) q.push_back(json::array({c.real(), c.imag()}));
          pts.push_back(q);
        }
        m.params = {{"points", pts}, {"masses", std::vector<double>(p.set.points.size(), 1.0)}};
      }
      break;
    default: throw InputError{"no default measure for this set; pass --measure", "/measure"};
  }
  return m;
}

Table cmd_zd(const Options& o, const Problem& p) {
  const int nodes = o.nodes > 0 ? o.nodes : 2 * o.d_max + 2;
  const MeasureModel mu = build_measure(measure_spec(p, false), p.set, nodes);
  Table t;
  t.header = {"op", "d", "m_d", "l_d", "log_z", "root", "condition", "ill_conditioned"};
  const int N = static_cast<int>(mu.dimension());
  for (int d = std::max(0, o.d_min); d <= o.d_max; ++d) {
    const auto t0 = Clock::now();
    const ZdResult z = z_d_product(mu, p.weight, d);
    t.add({"orthopoly.z_d_product", num(d), num(count_monomials(N, d)), num(degree_sum(N, d)), num(z.z.log_abs),
           d >= 1 ? num(z.root) : "", num(z.condition), z.ill_conditioned ? "true" : "false"},
          seconds_since(t0));
    if (o.lift_phases > 0) {
      const auto t1 = Clock::now();
      const ZdResult zl = z_d_lift(mu, p.weight, d, std::max(o.lift_phases, 2 * d + 1));
      t.add({"orthopoly.z_d_lift", num(d), num(count_monomials(N, d)), num(degree_sum(N, d)), num(zl.z.log_abs),
             d >= 1 ? num(zl.root) : "", num(zl.condition), zl.ill_conditioned ? "true" : "false"},
            seconds_since(t1));
    }
  }
  return t;
}

Table cmd_zd_mc(const Options& o, const Problem& p) {
  const MeasureModel mu = build_measure(measure_spec(p, true), p.set, 2 * o.d_max + 2);
  Table t;
  t.header = {"op", "d", "m_d", "log_mean", "mean", "stderr_rel", "samples", "seed", "degenerate"};
  const int N = static_cast<int>(mu.dimension());
  for (int d = std::max(0, o.d_min); d <= o.d_max; ++d) {
    const auto t0 = Clock::now();
    const McEstimate e = z_d_mc(mu, p.weight, d, o.samples, *o.seed);
    t.add({"montecarlo.z_d_mc", num(d), num(count_monomials(N, d)), num(e.log_mean), num(e.mean()),
           num(e.stderr_rel), num(e.samples), num(e.seed), e.degenerate ? "true" : "false"},
          seconds_since(t0));
  }
  return t;
}

Table cmd_ldp(const Options& o, const Problem& p) {
  if (!(o.delta > 0.0)) throw InputError{"ldp needs --delta (an estimate of the weighted diameter)", ""};
  const MeasureModel mu = build_measure(measure_spec(p, true), p.set, 2 * o.d_max + 2);
  Table t;
  t.header = {"op", "d", "eta", "delta", "probability", "stderr", "bound", "within_bound", "effective_samples",
              "samples", "seed"};
  for (int d = std::max(1, o.d_min); d <= o.d_max; ++d) {
    const auto t0 = Clock::now();
    const LargeDeviationProbe r = large_deviation_probe(mu, p.weight, d, o.eta, o.samples, *o.seed, o.delta);
    t.add({"montecarlo.large_deviation_probe", num(d), num(r.eta), num(r.delta), num(r.probability),
           num(r.stderr_abs), num(r.bound), r.within_bound() ? "true" : "false", num(r.effective_samples),
           num(r.samples), num(r.seed)},
          seconds_since(t0));
  }
  return t;
}

Table cmd_christoffel(const Options& o, const Problem& p) {
  const int nodes = o.nodes > 0 ? o.nodes : 2 * o.d_max + 2;
  const MeasureModel mu = build_measure(measure_spec(p, false), p.set, nodes);
  Table t;
  t.header = {"op", "d", "quantity", "alpha", "value_re", "value_im"};
  for (int d = std::max(1, o.d_min); d <= o.d_max; ++d) {
    const auto t0 = Clock::now();
    const ChristoffelReport r = christoffel(mu, p.weight, d, {});
    const double dt = seconds_since(t0);
    t.add({"orthopoly.christoffel", num(d), "mass", "", num(r.mass), "0"}, dt);
    for (std::size_t i = 0; i < r.moments.size(); ++i)
      t.add({"orthopoly.christoffel", num(d), "moment", exponents(r.moment_indices[i]), num(r.moments[i].real()),
             num(r.moments[i].imag())},
            0.0);
  }
  if (o.bernstein_markov) {
    const auto t0 = Clock::now();
    const int res = o.mesh_resolution > 0 ? o.mesh_resolution : default_resolution(p.set, o.d_max);
    const BernsteinMarkovProbe bm = bernstein_markov_probe(mu, p.weight, o.d_max, mesh(p.set, res));
    const double dt = seconds_since(t0) / static_cast<double>(bm.ratios.size());
    for (const auto& [d, ratio] : bm.ratios)
      t.add({"orthopoly.bernstein_markov_probe", num(d), "ratio", "", num(ratio), "0"}, dt);
    t.add({"orthopoly.bernstein_markov_probe", num(o.d_max), "epsilon", "", num(bm.epsilon), "0"}, 0.0);
  }
  return t;
}

Table cmd_rumely(const Options& o, const json& doc) {
  Table t;
  const auto t0 = Clock::now();
  if (o.model == "identity") {
    const Problem p = problem(doc);
    const EquilibriumModel eq = equilibrium_model_for(p.set, p.weight);
    IdentityOptions io;
    io.d_max = o.d_max;
    io.mesh_resolution = o.mesh_resolution;
    io.tol = o.tol;
    io.search = search(o);
    const IdentityCheck c = weighted_identity_check(p.set, p.weight, eq, io);
    t.header = {"op", "model", "d_max", "lhs", "d_w", "integral_q", "rhs", "gap"};
    t.add({"rumely.weighted_identity_check", eq.label, num(o.d_max), num(c.lhs), num(c.d_w), num(c.integral_q),
           num(c.rhs), num(c.gap)},
          seconds_since(t0));
    return t;
  }
  RobinModel m;
  switch (parse_robin_kind(o.model)) {
    case RobinKind::Ball: m = RobinModel::ball(o.radii.at(0)); break;
    case RobinKind::Polydisk: m = RobinModel::polydisk(); break;
    case RobinKind::Product:
      if (o.radii.size() != 2) throw InputError{"--radii needs two values for the product model", ""};
      m = RobinModel::product(o.radii[0], o.radii[1]);
      break;
    case RobinKind::Custom: throw InputError{"custom Robin models are library-only", ""};
  }
  const RumelyResult r = rumely_diameter_2d(m, {o.grid_radius, o.grid_size, 0});
  t.header = {"op", "model", "grid_radius", "grid_size", "diameter", "log_diameter", "energy", "slice_term",
              "grid_mass", "tail_mass", "mass_drift"};
  t.add({"rumely.rumely_diameter_2d", o.model, num(o.grid_radius), num(o.grid_size), num(r.diameter),
         num(r.log_diameter), num(r.energy), num(r.slice_term), num(r.grid_mass), num(r.tail_mass), num(r.mass_drift)},
        seconds_since(t0));
  return t;
}

Table cmd_cone(const Options& o) {
  const WeightModel w = WeightModel::power(o.c, o.gamma);
  ConeProblem p = o.dimension == 1
                      ? ConeProblem::half_line(w, RealPolynomial::monomial(1.0, {o.density_power}))
                      : ConeProblem::sector(0.0, 1.5707963267948966, w,
                                            RealPolynomial::monomial(1.0, {o.density_power, 0}));
  p.T = o.T;
  const auto t0 = Clock::now();
  const ConeSeries s = cone_zd_series(p, o.d_max, o.resolution);
  const double each = seconds_since(t0) / static_cast<double>(s.rows.size());
  const bool closed_form = o.dimension == 1 && o.gamma == 1.0 && o.density_power == 0;
  Table t;
  t.header = {"op", "d", "T", "log_z", "root", "log_z_2T", "stability", "condition", "reference_log_z"};
  for (const ConeRow& r : s.rows)
    t.add({"cone_case.cone_zd_series", num(r.d), num(r.T), num(r.log_z), num(r.root), num(r.log_z_2T),
           num(r.stability), num(r.condition), closed_form ? num(laguerre_log_zd(r.d, o.c)) : ""},
          each);
  return t;
}

void write_error(std::ostream& err, const std::string& kind, const std::string& message, const std::string& pointer) {
  json e = {{"error", {{"kind", kind}, {"message", message}, {"pointer", pointer}}}};
  err << e.dump() << "\n";
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Transfinite diameter, Chebyshev constant and Vandermonde experiments"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  Options o;
  app.add_option("--spec", o.spec_file, "JSON problem description");
  app.add_option("--out", o.out, "CSV output path (a JSON sidecar goes to PATH.json); stdout if absent");
  app.add_option("--seed", o.seed, "seed for stochastic commands");
  app.add_option("--threads", o.threads, "worker threads (default: logical cores)")->check(CLI::NonNegativeNumber);
  app.add_option("--tol", o.tol, "solver tolerance")->check(CLI::PositiveNumber);
  app.add_option("--set", o.set, "set shorthand, e.g. interval:a=-1,b=1");
  app.add_option("--weight", o.weight, "weight shorthand, e.g. power:coeff=1,power=2");
  app.add_option("--measure", o.measure, "measure shorthand, e.g. arcsine:nodes=128");
  app.add_option("--d-min", o.d_min, "smallest degree")->check(CLI::NonNegativeNumber);
  app.add_option("--d-max", o.d_max, "largest degree")->check(CLI::NonNegativeNumber);

  auto series_opts = [&](CLI::App* s) {
    s->add_option("--mesh-resolution", o.mesh_resolution, "mesh resolution (0: default per set)");
    s->add_option("--restarts", o.restarts, "Fekete search restarts")->check(CLI::PositiveNumber);
  };
  auto* basis = app.add_subcommand("basis", "graded basis counts m_d, h_d, l_d, r_d");
  basis->add_option("--dimension", o.dimension, "number of variables N")->check(CLI::PositiveNumber);
  auto* cheb = app.add_subcommand("cheb", "Chebyshev constants Y(alpha) on a mesh");
  cheb->add_option("--mode", o.mode, "plain, homogeneous or weighted");
  cheb->add_option("--mesh-resolution", o.mesh_resolution, "mesh resolution (0: default per set)");
  cheb->add_flag("--zaharjuta", o.zaharjuta, "add Zaharjuta integral rows (N <= 2)");
  auto* dia = app.add_subcommand("diameter", "Fekete series for d(E)");
  auto* hdia = app.add_subcommand("hdiameter", "Fekete series for d^H(E)");
  auto* wdia = app.add_subcommand("wdiameter", "weighted Fekete series for delta^w(E)");
  auto* lift = app.add_subcommand("lift-check", "weighted problem on E versus homogeneous problem on its lift");
  for (auto* s : {dia, hdia, wdia, lift}) series_opts(s);
  lift->add_option("--phase-resolution", o.phase_resolution, "phases per lifted point (0: 2 d_max + 1)");
  auto* zd = app.add_subcommand("zd", "Z_d by the Gram product formula");
  zd->add_option("--lift", o.lift_phases, "also compute the lift value with this many phases");
  zd->add_option("--nodes", o.nodes, "quadrature nodes (0: 2 d_max + 2)");
  auto* zdmc = app.add_subcommand("zd-mc", "Monte Carlo estimate of Z_d");
  zdmc->add_option("--samples", o.samples, "sampled m_d-tuples")->check(CLI::PositiveNumber);
  auto* ldp = app.add_subcommand("ldp", "large-deviation probability probe");
  ldp->add_option("--samples", o.samples, "sampled m_d-tuples")->check(CLI::PositiveNumber);
  ldp->add_option("--eta", o.eta, "deviation eta");
  ldp->add_option("--delta", o.delta, "estimate of delta^w(E)");
  auto* chr = app.add_subcommand("christoffel", "Christoffel density mass and moments");
  chr->add_option("--nodes", o.nodes, "quadrature nodes (0: 2 d_max + 2)");
  chr->add_flag("--bernstein-markov", o.bernstein_markov, "add sup/L2 ratio rows");
  chr->add_option("--mesh-resolution", o.mesh_resolution, "sup-norm mesh resolution");
  auto* rum = app.add_subcommand("rumely", "diameter of circled sets in C^2 from the Robin function");
  rum->add_option("--model", o.model, "ball, polydisk, product or identity (weighted check on --set/--weight)");
  rum->add_option("--grid-radius", o.grid_radius, "outer radius of the polar grid");
  rum->add_option("--grid-size", o.grid_size, "radial grid nodes");
  rum->add_option("--radii", o.radii, "ball radius, or the two product radii")->delimiter(',');
  rum->add_option("--mesh-resolution", o.mesh_resolution, "Fekete mesh for --model identity");
  rum->add_option("--restarts", o.restarts, "Fekete restarts for --model identity")->check(CLI::PositiveNumber);
  auto* cone = app.add_subcommand("cone", "Z_d on a truncated real cone with Q = c |x|^gamma");
  cone->add_option("--gamma", o.gamma, "growth exponent")->check(CLI::PositiveNumber);
  cone->add_option("--c", o.c, "growth constant")->check(CLI::PositiveNumber);
  cone->add_option("--T", o.T, "truncation radius (0: from the tail bound)");
  cone->add_option("--dimension", o.dimension, "1 (half-line) or 2 (quadrant)");
  cone->add_option("--resolution", o.resolution, "quadrature refinement factor")->check(CLI::PositiveNumber);
  cone->add_option("--density-power", o.density_power, "R(x) = x_1^k")->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    write_error(err, "usage", e.what(), "");
    return 2;
  }
  const std::string cmd = app.get_subcommands().front()->get_name();
  const auto started = Clock::now();

  json doc;
  Table table;
  try {
    if (o.d_min > o.d_max) throw InputError{"--d-min must not exceed --d-max", ""};
    if (stochastic(cmd, o) && !o.seed)
      throw InputError{"command '" + cmd + "' is stochastic and needs --seed", ""};
    if (o.threads > 0) set_thread_count(o.threads);
    doc = load_spec(o);
    if (!doc.is_object()) throw InputError{"problem description must be a JSON object", ""};
    if (cmd == "basis") table = cmd_basis(o);
    else if (cmd == "cheb") table = cmd_cheb(o, problem(doc));
    else if (cmd == "diameter") table = cmd_diameter(o, problem(doc), FeketeKind::Plain);
    else if (cmd == "hdiameter") table = cmd_diameter(o, problem(doc), FeketeKind::Homogeneous);
    else if (cmd == "wdiameter") table = cmd_diameter(o, problem(doc), FeketeKind::Weighted);
    else if (cmd == "lift-check") table = cmd_lift_check(o, problem(doc));
    else if (cmd == "zd") table = cmd_zd(o, problem(doc));
    else if (cmd == "zd-mc") table = cmd_zd_mc(o, problem(doc));
    else if (cmd == "ldp") table = cmd_ldp(o, problem(doc));
    else if (cmd == "christoffel") table = cmd_christoffel(o, problem(doc));
    else if (cmd == "rumely") table = cmd_rumely(o, doc);
    else if (cmd == "cone") table = cmd_cone(o);
  } catch (const InputError& e) {
    write_error(err, "invalid-input", e.message, e.pointer);
    return 2;
  } catch (const Error& e) {
    write_error(err, std::string(to_string(e.kind())), e.what(), e.pointer());
    return e.kind() == ErrorKind::InvalidArgument ? 2 : 1;
  } catch (const std::exception& e) {
    write_error(err, "internal", e.what(), "");
    return 1;
  }

  const std::string csv = table.csv();
  if (o.out.empty()) {
    out << csv;
    return 0;
  }
  {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) {
      write_error(err, "io", "cannot write '" + o.out + "'", "");
      return 1;
    }
    f << csv;
  }
  json sidecar;
  std::vector<std::string> args(argv, argv + argc);
  sidecar["command"] = cmd;
  sidecar["argv"] = args;
  sidecar["spec"] = doc;
  sidecar["versions"] = {{"vdmlab", VDMLAB_VERSION},
                         {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) +
                                       "." + std::to_string(EIGEN_MINOR_VERSION)},
                         {"compiler", __VERSION__}};
  sidecar["seed"] = o.seed ? json(*o.seed) : json(nullptr);
  sidecar["threads"] = thread_count();
  sidecar["tol"] = o.tol;
  sidecar["rows"] = table.rows.size();
  sidecar["row_wall_time"] = table.wall;
  sidecar["wall_time"] = seconds_since(started);
  std::ofstream(o.out + ".json") << sidecar.dump(2) << "\n";
  return 0;
}

}  // namespace vdmlab
