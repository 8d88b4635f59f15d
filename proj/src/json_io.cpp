#include "itm/json_io.hpp"

#include "itm/errors.hpp"

namespace itm::io {

namespace {

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(where, std::string("missing field '") + key + "'");
  return j.at(key);
}

Json segment_json(const Segment& s) { return {{"lo", to_json(s.lo)}, {"hi", to_json(s.hi)}}; }

Json opt_size(const std::optional<std::size_t>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

Json to_json(const Rational& value) { return to_string(value); }

Rational rational_from_json(const Json& j, const std::string& where) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const ParseError& e) {
      throw ParseError(where, e.what());
    }
  }
  if (j.is_number_integer()) return Rational(Integer(j.dump()));
  throw ParseError(where, "expected a rational string or an integer, got " + j.dump());
}

std::vector<Rational> rationals_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where, "expected an array");
  std::vector<Rational> out;
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(rational_from_json(j[k], where + "[" + std::to_string(k) + "]"));
  return out;
}

Json to_json(const std::vector<Rational>& values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(to_json(v));
  return out;
}

Json to_json(const ArcSet& set) {
  Json arcs = Json::array();
  for (const auto& a : set.arcs()) arcs.push_back({{"start", to_json(a.start.value())}, {"length", to_json(a.length)}});
  return {{"arcs", arcs}, {"length", to_json(set.total_length())}};
}

ArcSet arcset_from_json(const Json& j) {
  const auto& arcs = field(j, "arcs", "arcset");
  if (!arcs.is_array()) throw ParseError("arcset", "'arcs' must be an array");
  std::vector<Arc> raw;
  for (std::size_t k = 0; k < arcs.size(); ++k) {
    std::string where = "arcset.arcs[" + std::to_string(k) + "]";
    Rational start = rational_from_json(field(arcs[k], "start", where), where + ".start");
    Rational length = rational_from_json(field(arcs[k], "length", where), where + ".length");
    if (length <= 0 || length > 1) throw ParseError(where, "length must lie in (0,1]");
    raw.emplace_back(start, length);
  }
  return ArcSet::normalize(raw);
}

Json to_json(const Itm& map) { return {{"breakpoints", to_json(map.breakpoints())}, {"shifts", to_json(map.shifts())}}; }

Itm itm_from_json(const Json& j) {
  auto t = rationals_from_json(field(j, "breakpoints", "map"), "map.breakpoints");
  auto c = rationals_from_json(field(j, "shifts", "map"), "map.shifts");
  return Itm(std::move(t), std::move(c));
}

Json to_json(const Measure& mu) {
  Json density = Json::array();
  for (const auto& d : mu.density())
    density.push_back({{"arc", {{"start", to_json(d.segment.lo)}, {"length", to_json(d.segment.length())}}},
                       {"weight", to_json(d.weight)}});
  Json atoms = Json::array();
  for (const auto& a : mu.atoms()) atoms.push_back({{"point", to_json(a.point)}, {"mass", to_json(a.mass)}});
  return {{"density", density}, {"atoms", atoms}, {"totalMass", to_json(mu.total_mass())}};
}

Measure measure_from_json(const Json& j) {
  if (j.is_string()) {
    std::string name = j.get<std::string>();
    if (name == "lebesgue") return Measure::lebesgue();
    throw ParseError("measure", "unknown named measure '" + name + "'");
  }
  std::vector<DensityPiece> density;
  std::vector<Atom> atoms;
  if (j.contains("density")) {
    const auto& d = j.at("density");
    for (std::size_t k = 0; k < d.size(); ++k) {
      std::string where = "measure.density[" + std::to_string(k) + "]";
      const auto& arc = field(d[k], "arc", where);
      Rational start = rational_from_json(field(arc, "start", where), where + ".arc.start");
      Rational length = rational_from_json(field(arc, "length", where), where + ".arc.length");
      Rational weight = rational_from_json(field(d[k], "weight", where), where + ".weight");
      if (length <= 0 || length > 1) throw ParseError(where, "arc length must lie in (0,1]");
      if (weight < 0) throw ParseError(where, "negative weight");
      std::vector<Segment> segs;
      if (start >= 0 && start + length <= 1)
        segs.push_back({start, start + length});
      else
        push_wrapped(segs, start, start + length);
      for (auto& s : segs) density.push_back({s, weight});
    }
  }
  if (j.contains("atoms")) {
    const auto& a = j.at("atoms");
    for (std::size_t k = 0; k < a.size(); ++k) {
      std::string where = "measure.atoms[" + std::to_string(k) + "]";
      Rational point = rational_from_json(field(a[k], "point", where), where + ".point");
      Rational mass = rational_from_json(field(a[k], "mass", where), where + ".mass");
      if (point < 0 || point > 1) throw ParseError(where, "point outside [0,1]");
      if (mass < 0) throw ParseError(where, "negative mass");
      atoms.push_back({point, mass});
    }
  }
  return Measure::from_parts(std::move(density), std::move(atoms));
}

Json to_json(const PiecewiseMap& map) {
  Json pieces = Json::array();
  for (const auto& p : map.pieces()) {
    Json piece = {{"interval", segment_json(p.interval)}};
    if (const auto* aff = std::get_if<AffinePiece>(&p.fn))
      piece["affine"] = {{"a", to_json(aff->a)}, {"b", to_json(aff->b)}};
    else
      piece["general"] = std::get<GeneralPiece>(p.fn).label;
    pieces.push_back(piece);
  }
  Json bv = Json::object();
  for (const auto& [x, v] : map.boundary_values()) bv[to_string(x)] = to_json(v);
  return {{"domain", to_string(map.domain())},
          {"pieces", pieces},
          {"boundaryValues", bv},
          {"h", to_json(map.h_set())}};
}

PiecewiseMap piecewise_from_json(const Json& j) {
  std::string dom = field(j, "domain", "piecewiseMap").get<std::string>();
  Domain domain;
  if (dom == "circle")
    domain = Domain::circle;
  else if (dom == "segment")
    domain = Domain::segment;
  else
    throw ParseError("piecewiseMap", "domain must be \"circle\" or \"segment\"");
  const auto& pj = field(j, "pieces", "piecewiseMap");
  std::vector<MapPiece> pieces;
  for (std::size_t k = 0; k < pj.size(); ++k) {
    std::string where = "piecewiseMap.pieces[" + std::to_string(k) + "]";
    const auto& iv = field(pj[k], "interval", where);
    Segment seg;
    if (iv.contains("lo")) {
      seg = {rational_from_json(iv.at("lo"), where + ".interval.lo"),
             rational_from_json(field(iv, "hi", where + ".interval"), where + ".interval.hi")};
    } else {
      Rational start = rational_from_json(field(iv, "start", where + ".interval"), where + ".interval.start");
      seg = {start, start + rational_from_json(field(iv, "length", where + ".interval"), where + ".interval.length")};
    }
    const auto& aj = field(pj[k], "affine", where);
    AffinePiece aff{rational_from_json(field(aj, "a", where + ".affine"), where + ".affine.a"),
                    rational_from_json(field(aj, "b", where + ".affine"), where + ".affine.b")};
    pieces.push_back({seg, aff});
  }
  std::vector<std::pair<Rational, Rational>> bv;
  if (j.contains("boundaryValues")) {
    for (const auto& [key, value] : j.at("boundaryValues").items()) {
      std::string where = "piecewiseMap.boundaryValues[" + key + "]";
      Rational x;
      try {
        x = parse_rational(key);
      } catch (const ParseError& e) {
        throw ParseError(where, e.what());
      }
      bv.emplace_back(x, rational_from_json(value, where));
    }
  }
  PiecewiseMap map(domain, std::move(pieces), std::move(bv));
  if (j.contains("h")) map.set_h_set(rationals_from_json(j.at("h"), "piecewiseMap.h"));
  return map;
}

Json to_json(const AttractorResult& result) {
  Json lengths = Json::array();
  Json counts = Json::array();
  for (const auto& a : result.iterates) {
    lengths.push_back(to_json(a.total_length()));
    counts.push_back(a.arcs().size());
  }
  return {{"stabilizedAt", opt_size(result.stabilized_at)},
          {"finiteType", to_string(result.finite_type)},
          {"attractor", to_json(result.attractor)},
          {"iterateLengths", lengths},
          {"iterateArcCounts", counts},
          {"nestingVerified", true}};
}

Json to_json(const HomtervalReport& report) {
  Json hs = Json::array();
  for (const auto& h : report.homtervals)
    hs.push_back({{"start", to_json(h.arc.start)},
                  {"length", to_json(h.arc.length)},
                  {"preperiod", opt_size(h.preperiod)},
                  {"period", opt_size(h.period)},
                  {"resolved", h.resolved()}});
  return {{"depth", report.depth}, {"omega", to_json(report.omega)}, {"homtervals", hs}};
}

Json to_json(const Relation& r) {
  Json out = {{"i", r.i}, {"j", r.j}, {"l", r.l}, {"w", r.w}};
  if (r.witness)
    out["witness"] = {{"side", to_string(r.witness->side)},
                      {"depth", r.witness->depth},
                      {"itinerary", r.witness->itinerary}};
  return out;
}

Json to_json(const RelationSystem& system) {
  Json rs = Json::array();
  for (const auto& r : system.relations) rs.push_back(to_json(r));
  return {{"sourceDepth", system.source_depth}, {"relations", rs}};
}

Relation relation_from_json(const Json& j) {
  Relation r;
  try {
    r.i = field(j, "i", "relation").get<std::size_t>();
    r.j = field(j, "j", "relation").get<std::size_t>();
    r.l = field(j, "l", "relation").get<std::vector<long>>();
    r.w = j.value("w", 0L);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("relation", e.what());
  }
  return r;
}

ParameterVector parameters_from_json(const Json& j) {
  ParameterVector p;
  p.breakpoints = rationals_from_json(field(j, "breakpoints", "target"), "target.breakpoints");
  p.shifts = rationals_from_json(field(j, "shifts", "target"), "target.shifts");
  if (p.breakpoints.size() != p.shifts.size())
    throw ParseError("target", "breakpoints and shifts differ in length");
  if (j.contains("precision")) p.precision = j.at("precision").get<std::size_t>();
  return p;
}

Json to_json(const ParameterVector& params) {
  Json out = {{"breakpoints", to_json(params.breakpoints)}, {"shifts", to_json(params.shifts)}};
  out["precision"] = params.precision ? Json(*params.precision) : Json(nullptr);
  return out;
}

Json to_json(const CauchyReport& report) {
  return {{"successive", to_json(report.successive)},
          {"cauchyFrom", opt_size(report.cauchy_from)},
          {"cauchy", report.cauchy}};
}

Json to_json(const CollisionReport& report) {
  Json levels = Json::array();
  for (const auto& l : report.levels) levels.push_back({{"level", l.level}, {"failedRelations", l.failed_relations}});
  return {{"depth", report.depth},
          {"checkedRelations", report.checked_relations},
          {"levels", levels},
          {"firstGoodLevel", opt_size(report.first_good_level)}};
}

Json to_json(const Iem& iem) {
  Json pieces = Json::array();
  for (const auto& p : iem.pieces())
    pieces.push_back({{"lo", to_json(p.lo)},
                      {"hi", to_json(p.hi)},
                      {"shift", to_json(p.shift)},
                      {"imageLength", to_json(p.image_length)}});
  return {{"pieces", pieces}};
}

Json to_json(const IemReport& report) {
  return {{"lengthsPreserved", report.lengths_preserved},
          {"lebesgueInvariant", report.lebesgue_invariant},
          {"injective", report.injective},
          {"partition", report.partition},
          {"ok", report.ok()}};
}

Json to_json(const FunctionalResidual& residual) {
  return {{"residual", residual.residual}, {"perFunction", residual.per_function}};
}

Json to_json(const LimitReport& report) {
  Json masses = Json::array();
  for (const auto& m : report.masses) masses.push_back({{"delta", to_json(m.delta)}, {"mass", to_json(m.mass)}});
  return {{"masses", masses},
          {"massCondition", report.mass_condition},
          {"functional", to_json(report.functional)},
          {"invarianceCondition", report.invariance_condition},
          {"failing", report.failing}};
}

Json to_json(const VisitFrequencyTable& table) {
  Json rows = Json::array();
  for (const auto& r : table.rows)
    rows.push_back({{"m", r.m}, {"eps", to_json(r.eps)}, {"frequency", to_json(r.frequency)}});
  return {{"rows", rows}, {"verdict", to_string(table.verdict)}};
}

Json to_json(const DefectReport& report) {
  return {{"norm", to_json(report.norm)},
          {"expectedNorm", to_json(report.expected_norm)},
          {"identityHolds", report.identity_holds}};
}

Json to_json(const WanderingReport& report) {
  Json probes = Json::array();
  for (const auto& p : report.probes)
    probes.push_back({{"point", to_json(p.point)},
                      {"radius", to_json(p.radius)},
                      {"witness", p.witness ? to_json(*p.witness) : Json(nullptr)},
                      {"returnTime", opt_size(p.return_time)},
                      {"status", p.return_time ? "returned" : "no return within budget"}});
  return {{"probes", probes}};
}

}  // namespace itm::io
