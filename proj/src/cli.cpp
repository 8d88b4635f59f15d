#include "itm/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <sstream>

#include "itm/approximation.hpp"
#include "itm/conjugacy.hpp"
#include "itm/errors.hpp"
#include "itm/json_io.hpp"
#include "itm/svg.hpp"

namespace itm::cli {

namespace {

using io::Json;

struct Flags {
  std::string command;
  std::string config;
  std::string out;
  bool plot = false;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> max_iter, max_arcs, depth, levels;
  std::optional<std::string> tol;
};

/// Everything a command produces besides its exit code.
struct Output {
  Json result = Json::object();
  std::map<std::string, std::string> files;  // extra artifacts (CSV, SVG)
  bool verified = true;
  std::string failure;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

const Json& require(const Json& cfg, const char* key, const char* command) {
  if (!cfg.contains(key)) throw ConfigError(command, std::string("config needs '") + key + "'");
  return cfg.at(key);
}

Budgets budgets_of(const Json& cfg) {
  const Json& b = cfg.at("budgets");
  Budgets out;
  out.max_iter = b.at("maxIter").get<std::size_t>();
  out.max_arcs = b.at("maxArcs").get<std::size_t>();
  out.orbit_budget = b.at("orbitBudget").get<std::size_t>();
  out.max_points = b.at("maxPoints").get<std::size_t>();
  return out;
}

/// Fills defaults, applies flag overrides and validates the shared fields.
Json resolve(Json cfg, const Flags& flags) {
  if (!cfg.is_object()) throw ConfigError("config", "top level must be a JSON object");
  Budgets defaults;
  Json budgets = cfg.value("budgets", Json::object());
  if (!budgets.is_object()) throw ConfigError("config", "'budgets' must be an object");
  auto fill = [&](const char* key, std::size_t value) {
    if (!budgets.contains(key)) budgets[key] = value;
    if (!budgets[key].is_number_unsigned() && !budgets[key].is_number_integer())
      throw ConfigError("config", std::string("budgets.") + key + " must be a non-negative integer");
  };
  fill("maxIter", defaults.max_iter);
  fill("maxArcs", defaults.max_arcs);
  fill("orbitBudget", defaults.orbit_budget);
  fill("maxPoints", defaults.max_points);
  if (flags.max_iter) budgets["maxIter"] = *flags.max_iter;
  if (flags.max_arcs) budgets["maxArcs"] = *flags.max_arcs;
  cfg["budgets"] = budgets;

  if (flags.seed) cfg["seed"] = *flags.seed;
  if (!cfg.contains("seed")) cfg["seed"] = 0;
  if (flags.depth) cfg["depth"] = *flags.depth;
  if (!cfg.contains("depth")) cfg["depth"] = 16;
  if (flags.tol) cfg["tolerance"] = *flags.tol;
  if (!cfg.contains("tolerance")) cfg["tolerance"] = "0";
  cfg["tolerance"] = io::to_json(io::rational_from_json(cfg["tolerance"], "config.tolerance"));
  if (flags.levels) cfg["levels"] = *flags.levels;
  if (!cfg.contains("levels")) cfg["levels"] = flags.command == "verify-limit" ? Json(20) : Json(nullptr);
  return cfg;
}

Integer common_denominator(const Itm& map) {
  Integer q = 1;
  for (const auto& v : map.breakpoints()) mpz_lcm(q.get_mpz_t(), q.get_mpz_t(), v.get_den_mpz_t());
  for (const auto& v : map.shifts()) mpz_lcm(q.get_mpz_t(), q.get_mpz_t(), v.get_den_mpz_t());
  return q;
}

std::string cdf_csv(const Measure& mu) {
  Cdf cdf(mu);
  std::string out = "x,F(x)\n";
  for (const auto& x : cdf.breaklist()) out += to_string(x) + "," + to_string(cdf(x)) + "\n";
  return out;
}

TestFamily family_of(const Json& j) {
  std::string kind = j.value("kind", "trigonometric");
  std::size_t degree = j.value("degree", std::size_t{8});
  if (kind == "trigonometric") return TestFamily::trigonometric(degree);
  if (kind == "monomial") return TestFamily::monomial(degree);
  throw ConfigError("config", "family.kind must be \"trigonometric\" or \"monomial\"");
}

Json family_json(const TestFamily& f) {
  return {{"kind", f.kind == TestFamily::Kind::trigonometric ? "trigonometric" : "monomial"}, {"degree", f.degree}};
}

// validate ------------------------------------------------------------------

void cmd_validate(Json& cfg, Output& out) {
  Json checked = Json::array();
  if (cfg.contains("map")) {
    Itm map = io::itm_from_json(cfg["map"]);
    out.result["map"] = {{"pieces", map.size()}, {"commonDenominator", common_denominator(map).get_str()}};
    checked.push_back("map");
  }
  if (cfg.contains("piecewiseMap")) {
    PiecewiseMap map = io::piecewise_from_json(cfg["piecewiseMap"]);
    out.result["piecewiseMap"] = {{"pieces", map.pieces().size()},
                                  {"discontinuities", io::to_json(map.discontinuities())}};
    checked.push_back("piecewiseMap");
  }
  if (cfg.contains("measure")) {
    Measure mu = io::measure_from_json(cfg["measure"]);
    out.result["measure"] = {{"totalMass", io::to_json(mu.total_mass())}, {"nonAtomic", mu.non_atomic()}};
    checked.push_back("measure");
  }
  if (cfg.contains("schedule")) {
    ParameterVector target = io::parameters_from_json(require(cfg["schedule"], "target", "validate"));
    Itm(target.breakpoints, target.shifts);
    if (cfg["schedule"].contains("declaredRelations"))
      for (const auto& r : cfg["schedule"]["declaredRelations"]) io::relation_from_json(r);
    checked.push_back("schedule");
  }
  if (checked.empty()) throw ConfigError("validate", "config has none of map, piecewiseMap, measure, schedule");
  out.result["valid"] = true;
  out.result["checked"] = checked;
}

// attractor / measure / homtervals / relations ------------------------------

void cmd_attractor(Json& cfg, Output& out, bool plot) {
  Itm map = io::itm_from_json(require(cfg, "map", "attractor"));
  Budgets b = budgets_of(cfg);
  AttractorResult res = attractor(map, b.max_iter, b.max_arcs);
  out.result = io::to_json(res);
  out.result["commonDenominator"] = common_denominator(map).get_str();
  if (plot) out.files["attractor.svg"] = svg::arcs_bars(res.iterates, "attractor iterates A_k");
}

void cmd_measure(Json& cfg, Output& out, bool plot) {
  Itm map = io::itm_from_json(require(cfg, "map", "measure"));
  Budgets b = budgets_of(cfg);
  AttractorResult res = attractor(map, b.max_iter, b.max_arcs);
  Measure mu = attractor_measure(map, res, b.orbit_budget);
  Rational residual = invariance_residual_exact(map, mu);
  Rational tol = io::rational_from_json(cfg["tolerance"], "config.tolerance");
  out.result = {{"stabilizedAt", res.stabilized_at ? Json(*res.stabilized_at) : Json(nullptr)},
                {"attractor", io::to_json(res.attractor)},
                {"measure", io::to_json(mu)},
                {"nonAtomic", mu.non_atomic()},
                {"invarianceResidualExact", io::to_json(residual)}};
  if (cfg.contains("recurrence")) {
    Json& rc = cfg["recurrence"];
    Integer q = common_denominator(map);
    if (!rc.contains("samples")) rc["samples"] = 100;
    if (!rc.contains("eps")) rc["eps"] = io::to_json(Rational(Integer(1), q));
    if (!rc.contains("horizon")) rc["horizon"] = Integer(q * q).get_ui();
    std::mt19937_64 rng(cfg["seed"].get<std::uint64_t>());
    auto samples = find_recurrent_points(map, mu, io::rational_from_json(rc["eps"], "recurrence.eps"),
                                         rc["horizon"].get<std::size_t>(), rc["samples"].get<std::size_t>(), rng);
    std::size_t found = 0;
    Json rows = Json::array();
    for (const auto& s : samples) {
      if (s.time) ++found;
      rows.push_back({{"point", io::to_json(s.point)},
                      {"time", s.time ? Json(*s.time) : Json(nullptr)},
                      {"distance", io::to_json(s.distance)}});
    }
    out.result["recurrence"] = {{"samples", rows}, {"found", found}, {"total", samples.size()}};
  }
  out.files["cdf.csv"] = cdf_csv(mu);
  if (plot) {
    out.files["density.svg"] = svg::density_histogram(mu, "invariant density");
    out.files["cdf.svg"] = svg::cdf_curve(mu, "invariant measure CDF");
  }
  if (abs(residual) > tol) {
    out.verified = false;
    out.failure = "invariance_residual_exact: residual " + to_string(residual) + " above tolerance";
  }
}

void cmd_homtervals(Json& cfg, Output& out) {
  Itm map = io::itm_from_json(require(cfg, "map", "homtervals"));
  Budgets b = budgets_of(cfg);
  std::size_t depth = cfg["depth"].get<std::size_t>();
  out.result = io::to_json(classify_homtervals(map, depth, b.orbit_budget, b.max_points));
  out.result["genericity"] = to_string(is_generic_within_depth(map, depth, b.orbit_budget, b.max_points));
}

void cmd_relations(Json& cfg, Output& out) {
  Itm map = io::itm_from_json(require(cfg, "map", "relations"));
  out.result = io::to_json(detect_relations(map, cfg["depth"].get<std::size_t>()));
}

// approximate ----------------------------------------------------------------

void cmd_approximate(Json& cfg, Output& out, bool plot) {
  Json& sc = cfg["schedule"];
  if (!sc.is_object()) throw ConfigError("approximate", "config needs a 'schedule' object");
  ParameterVector target = io::parameters_from_json(require(sc, "target", "approximate"));
  Itm target_map(target.breakpoints, target.shifts);
  std::size_t depth = cfg["depth"].get<std::size_t>();

  RelationSystem relations;
  if (sc.contains("declaredRelations")) {
    for (const auto& r : sc["declaredRelations"]) relations.relations.push_back(io::relation_from_json(r));
  } else if (!target.precision) {
    relations = detect_relations(target_map, depth);
  }

  std::vector<Integer> denominators;
  if (sc.contains("denominators")) {
    for (const auto& d : sc["denominators"]) denominators.push_back(Integer(d.is_string() ? d.get<std::string>() : d.dump()));
  } else {
    denominators = fibonacci_denominators(Integer(1000000));
    Json ds = Json::array();
    for (const auto& d : denominators) ds.push_back(d.get_str());
    sc["denominators"] = ds;
  }
  if (!cfg["levels"].is_null()) {
    std::size_t keep = cfg["levels"].get<std::size_t>();
    if (keep < denominators.size()) denominators.resize(keep);
  }
  if (denominators.size() < 2) throw ConfigError("approximate", "need at least two denominators");
  bool parallel = sc.value("parallel", false);
  sc["parallel"] = parallel;
  TestFamily family = family_of(sc.value("family", Json::object()));
  sc["family"] = family_json(family);

  ApproximantSchedule schedule = generate_approximants(target, relations, denominators);
  CollisionReport collisions = orbit_collision_preservation(schedule, relations, depth);
  auto levels = measure_sequence(schedule, budgets_of(cfg), parallel);

  Json level_json = Json::array();
  std::vector<Measure> measures;
  bool budget_failure = false;
  for (std::size_t m = 0; m < levels.size(); ++m) {
    const auto& lv = schedule.levels[m];
    Json entry = {{"level", m + 1},
                  {"denominatorBound", lv.denominator_bound.get_str()},
                  {"breakpoints", io::to_json(lv.breakpoints)},
                  {"shifts", io::to_json(lv.shifts)},
                  {"distance", io::to_json(lv.distance)}};
    bool relations_hold = true;
    for (const auto& r : relations.relations)
      if (r.residual(lv.breakpoints, lv.shifts) != 0) relations_hold = false;
    entry["relationsHold"] = relations_hold;
    if (levels[m].ok()) {
      entry["stabilizedAt"] = levels[m].attractor->stabilized_at ? Json(*levels[m].attractor->stabilized_at) : Json(nullptr);
      entry["measure"] = io::to_json(*levels[m].measure);
      entry["isLebesgue"] = *levels[m].measure == Measure::lebesgue();
      measures.push_back(*levels[m].measure);
    } else {
      entry["error"] = levels[m].error;
      budget_failure = true;
    }
    if (!relations_hold) {
      out.verified = false;
      out.failure = "generate_approximants: level " + std::to_string(m + 1) + " breaks a relation";
    }
    level_json.push_back(entry);
  }
  out.result = {{"target", io::to_json(target)},
                {"relations", io::to_json(relations)},
                {"freeCoordinates", schedule.free_coordinates},
                {"dependentCoordinates", schedule.dependent_coordinates},
                {"collisions", io::to_json(collisions)},
                {"levels", level_json}};

  if (measures.size() >= 2) {
    Rational tol = io::rational_from_json(cfg["tolerance"], "config.tolerance");
    ConvergenceResult conv = detect_convergence(measures, tol);
    out.result["cauchy"] = io::to_json(conv.report);
    out.result["limitCandidate"] = io::to_json(conv.limit_candidate);
    out.result["limitIsLebesgue"] = conv.limit_candidate == Measure::lebesgue();
    out.result["limitResidual"] = io::to_json(invariance_residual_functional(target_map, conv.limit_candidate, family));
    std::vector<Rational> deltas{Rational(1, 10), Rational(1, 100), Rational(1, 1000)};
    Json trend = Json::array();
    auto sup = breakpoint_mass_trend(schedule, levels, deltas);
    for (std::size_t k = 0; k < deltas.size(); ++k)
      trend.push_back({{"delta", io::to_json(deltas[k])}, {"supMass", io::to_json(sup[k])}});
    out.result["breakpointMassTrend"] = trend;
    std::string csv = "step,cdfDistance\n";
    for (std::size_t k = 0; k < conv.report.successive.size(); ++k)
      csv += std::to_string(k + 1) + "," + to_string(conv.report.successive[k]) + "\n";
    out.files["cauchy.csv"] = csv;
    if (plot) {
      out.files["limit_density.svg"] = svg::density_histogram(conv.limit_candidate, "limit candidate density");
      out.files["limit_cdf.svg"] = svg::cdf_curve(conv.limit_candidate, "limit candidate CDF");
    }
  }
  if (budget_failure && measures.empty())
    throw BudgetExceeded("measure_sequence", "no level produced a measure");
}

// conjugate ------------------------------------------------------------------

void cmd_conjugate(Json& cfg, Output& out, bool plot) {
  Itm map = io::itm_from_json(require(cfg, "map", "conjugate"));
  Measure mu;
  if (cfg.contains("measure")) {
    mu = io::measure_from_json(cfg["measure"]);
  } else {
    Budgets b = budgets_of(cfg);
    mu = attractor_measure(map, attractor(map, b.max_iter, b.max_arcs), b.orbit_budget);
  }
  if (!cfg.contains("gridPoints")) cfg["gridPoints"] = 10000;
  ConjugacyData data = induce_iem(map, mu, cfg["gridPoints"].get<std::size_t>());
  IemReport report = verify_iem(data.induced);
  const auto& sc = data.semiconjugacy;
  out.result = {{"measure", io::to_json(mu)},
                {"tau", io::to_json(data.tau)},
                {"d", io::to_json(data.induced.shifts())},
                {"iem", io::to_json(data.induced)},
                {"verification", io::to_json(report)},
                {"semiConjugacy",
                 {{"checked", sc.checked},
                  {"exceptional", sc.exceptional},
                  {"failures", sc.failures},
                  {"exceptionalFailures", sc.exceptional_failures}}},
                {"hConvention", "h(x) = mu([0,x]), constant on gaps of the support"}};
  std::string csv = "x,h(x)\n";
  for (int i = 0; i <= 1000; ++i) {
    Rational x(i, 1000);
    x.canonicalize();
    csv += to_string(x) + "," + to_string(data.h(x)) + "\n";
  }
  out.files["h.csv"] = csv;
  if (plot) out.files["h.svg"] = svg::cdf_curve(mu, "conjugacy h");
  if (!report.ok() || sc.failures > 0) {
    out.verified = false;
    out.failure = "verify_iem: induced map failed verification";
  }
}

// empirical / verify-limit ---------------------------------------------------

std::vector<Rational> rational_list(Json& cfg, const char* key, std::vector<Rational> fallback) {
  if (!cfg.contains(key)) {
    cfg[key] = io::to_json(fallback);
    return fallback;
  }
  return io::rationals_from_json(cfg[key], std::string("config.") + key);
}

void cmd_empirical(Json& cfg, Output& out, bool plot) {
  PiecewiseMap map = io::piecewise_from_json(require(cfg, "piecewiseMap", "empirical"));
  Rational x0 = io::rational_from_json(require(cfg, "x0", "empirical"), "config.x0");
  if (!cfg.contains("lengths")) cfg["lengths"] = {10, 100, 1000, 10000};
  auto lengths = cfg["lengths"].get<std::vector<std::size_t>>();
  auto eps = rational_list(cfg, "epsilons", {Rational(1, 10), Rational(1, 100), Rational(1, 1000)});
  std::optional<Measure> reference;
  if (cfg.contains("reference")) reference = io::measure_from_json(cfg["reference"]);

  Json rows = Json::array();
  std::optional<Measure> last;
  for (std::size_t m : lengths) {
    EmpiricalMeasure emp = empirical_measure(map, x0, m);
    DefectReport defect = pushforward_defect(map, emp);
    Json row = {{"m", m},
                {"end", io::to_json(emp.end)},
                {"atoms", emp.measure.atoms().size()},
                {"defect", io::to_json(defect)}};
    if (reference) row["cdfDistanceToReference"] = io::to_json(cdf_distance(emp.measure, *reference));
    if (!defect.identity_holds || defect.norm != defect.expected_norm) {
      out.verified = false;
      out.failure = "pushforward_defect: identity fails at m = " + std::to_string(m);
    }
    rows.push_back(row);
    last = emp.measure;
  }
  VisitFrequencyTable table = visit_frequency(map, x0, lengths, eps);
  out.result = {{"h", io::to_json(map.h_set())}, {"empirical", rows}, {"visitFrequency", io::to_json(table)}};
  std::string csv = "m,eps,f\n";
  for (const auto& r : table.rows) csv += std::to_string(r.m) + "," + to_string(r.eps) + "," + to_string(r.frequency) + "\n";
  out.files["visit_frequency.csv"] = csv;
  if (cfg.contains("wandering")) {
    Json& w = cfg["wandering"];
    auto radii = rational_list(w, "radii", {Rational(1, 10), Rational(1, 100)});
    if (!w.contains("horizon")) w["horizon"] = 1000;
    if (!w.contains("samples")) w["samples"] = 64;
    out.result["wandering"] = io::to_json(
        wandering_discontinuity_check(map, radii, w["horizon"].get<std::size_t>(), w["samples"].get<std::size_t>()));
  }
  if (plot && last) out.files["empirical_cdf.svg"] = svg::cdf_curve(*last, "empirical measure CDF");
}

void cmd_verify_limit(Json& cfg, Output& out, bool plot) {
  PiecewiseMap map = io::piecewise_from_json(require(cfg, "piecewiseMap", "verify-limit"));
  Measure candidate;
  if (cfg.contains("measure")) {
    candidate = io::measure_from_json(cfg["measure"]);
  } else {
    Rational x0 = io::rational_from_json(require(cfg, "x0", "verify-limit"), "config.x0");
    if (!cfg.contains("length")) cfg["length"] = 10000;
    EmpiricalMeasure emp = empirical_measure(map, x0, cfg["length"].get<std::size_t>());
    candidate = emp.measure;
  }
  if (!cfg.contains("tolMass")) cfg["tolMass"] = "1/100";
  if (!cfg.contains("tolRes")) cfg["tolRes"] = 1e-6;
  TestFamily family = family_of(cfg.value("family", Json::object()));
  cfg["family"] = family_json(family);
  LimitReport report =
      verify_limit_measure(map, candidate, map.h_set(), io::rational_from_json(cfg["tolMass"], "config.tolMass"),
                           cfg["tolRes"].get<double>(), family, cfg["levels"].get<std::size_t>());
  out.result = {{"h", io::to_json(map.h_set())}, {"report", io::to_json(report)}};
  if (cfg.contains("reference")) {
    Measure ref = io::measure_from_json(cfg["reference"]);
    out.result["cdfDistanceToReference"] = io::to_json(cdf_distance(candidate, ref));
  }
  if (plot) out.files["candidate_cdf.svg"] = svg::cdf_curve(candidate, "candidate limit CDF");
  if (!report.failing.empty()) {
    out.verified = false;
    out.failure = "verify_limit_measure: hypothesis failed (" + report.failing + ")";
  }
}

int dispatch(const Flags& flags, Json& cfg, Output& out) {
  const std::string& c = flags.command;
  if (c == "validate")
    cmd_validate(cfg, out);
  else if (c == "attractor")
    cmd_attractor(cfg, out, flags.plot);
  else if (c == "measure")
    cmd_measure(cfg, out, flags.plot);
  else if (c == "homtervals")
    cmd_homtervals(cfg, out);
  else if (c == "relations")
    cmd_relations(cfg, out);
  else if (c == "approximate")
    cmd_approximate(cfg, out, flags.plot);
  else if (c == "conjugate")
    cmd_conjugate(cfg, out, flags.plot);
  else if (c == "empirical")
    cmd_empirical(cfg, out, flags.plot);
  else
    cmd_verify_limit(cfg, out, flags.plot);
  return out.verified ? ExitCode::ok : ExitCode::verification_failure;
}

int exit_code_of(const Error& e) {
  if (dynamic_cast<const BudgetExceeded*>(&e) || dynamic_cast<const NotFiniteType*>(&e) ||
      dynamic_cast<const CycleNotFound*>(&e))
    return ExitCode::budget_exceeded;
  if (dynamic_cast<const AtomicMeasure*>(&e) || dynamic_cast<const NotInvariant*>(&e) ||
      dynamic_cast<const HitDiscontinuity*>(&e))
    return ExitCode::verification_failure;
  return ExitCode::config_error;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("output", "cannot write " + path.string());
  f << content;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Interval translation map toolkit", "itmtool"};
  Flags flags;
  app.add_option("command", flags.command, "validate | attractor | measure | homtervals | relations | approximate | "
                                           "conjugate | empirical | verify-limit")
      ->required()
      ->check(CLI::IsMember({"validate", "attractor", "measure", "homtervals", "relations", "approximate",
                             "conjugate", "empirical", "verify-limit"}));
  app.add_option("--config", flags.config, "JSON config file")->required();
  app.add_option("--out", flags.out, "output directory (report JSON, CSV tables, SVG plots)");
  app.add_flag("--plot", flags.plot, "emit SVG plots (needs --out)");
  app.add_option("--seed", flags.seed, "random seed");
  app.add_option("--max-iter", flags.max_iter, "iteration budget");
  app.add_option("--max-arcs", flags.max_arcs, "arc-count budget");
  app.add_option("--depth", flags.depth, "orbit / preimage depth");
  app.add_option("--tol", flags.tol, "rational tolerance p/q");
  app.add_option("--levels", flags.levels, "number of approximation or neighbourhood levels");
  app.set_version_flag("--version", kVersion);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? ExitCode::ok : ExitCode::config_error;
  }

  Json cfg;
  try {
    std::ifstream f(flags.config);
    if (!f) throw ConfigError("config", "cannot open " + flags.config);
    try {
      cfg = Json::parse(f);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("config", std::string("invalid JSON: ") + e.what());
    }
    cfg = resolve(std::move(cfg), flags);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return ExitCode::config_error;
  }

  Output output;
  int code;
  try {
    code = dispatch(flags, cfg, output);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_of(e);
  } catch (const nlohmann::json::exception& e) {
    err << "error: config: " << e.what() << "\n";
    return ExitCode::config_error;
  }

  Json report = {{"command", flags.command},
                 {"version", kVersion},
                 {"config", cfg},
                 {"status", output.verified ? "ok" : "verification failure"},
                 {"result", output.result}};
  if (!output.verified) report["failure"] = output.failure;
  std::string text = report.dump(2) + "\n";
  try {
    if (flags.out.empty()) {
      out << text;
    } else {
      std::filesystem::create_directories(flags.out);
      write_file(std::filesystem::path(flags.out) / (flags.command + ".json"), text);
      for (const auto& [name, content] : output.files) write_file(std::filesystem::path(flags.out) / name, content);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return ExitCode::config_error;
  }
  if (!output.verified) err << "verification failure: " << output.failure << "\n";
  return code;
}

}  // namespace itm::cli
