#include "itm/itm_map.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "itm/errors.hpp"

namespace itm {

const char* to_string(Side side) { return side == Side::left ? "left" : "right"; }

const char* to_string(FiniteType value) {
  switch (value) {
    case FiniteType::yes:
      return "yes";
    case FiniteType::no_within_budget:
      return "no-within-budget";
    case FiniteType::unknown:
      break;
  }
  return "unknown";
}

Itm::Itm(std::vector<Rational> breakpoints, std::vector<Rational> shifts)
    : breaks_(std::move(breakpoints)), shifts_(std::move(shifts)) {
  if (breaks_.empty()) throw InvalidMap("Itm", "a map needs at least one piece");
  if (breaks_.size() != shifts_.size())
    throw InvalidMap("Itm", "got " + std::to_string(breaks_.size()) + " breakpoints but " +
                                std::to_string(shifts_.size()) + " shifts");
  for (std::size_t j = 0; j < breaks_.size(); ++j) {
    if (breaks_[j] < 0 || breaks_[j] >= 1)
      throw InvalidMap("Itm", "breakpoint " + std::to_string(j) + " = " + to_string(breaks_[j]) + " is outside [0,1)");
    if (j > 0 && breaks_[j] <= breaks_[j - 1])
      throw InvalidMap("Itm", "breakpoints not strictly increasing at index " + std::to_string(j));
  }
  for (auto& c : shifts_) c = frac(c);

  const std::size_t n = breaks_.size();
  if (breaks_.front() > 0) piece_segments_.push_back({{Rational(0), breaks_.front()}, n - 1});
  for (std::size_t j = 0; j < n; ++j)
    piece_segments_.push_back({{breaks_[j], j + 1 < n ? breaks_[j + 1] : Rational(1)}, j});
}

ArcSet Itm::piece_set(std::size_t j) const {
  std::vector<Segment> segs;
  for (const auto& ps : piece_segments_)
    if (ps.piece == j) segs.push_back(ps.segment);
  return ArcSet::from_segments(std::move(segs));
}

std::size_t Itm::piece_of(const Rational& x) const {
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
  if (it == breaks_.begin()) return size() - 1;
  return static_cast<std::size_t>(std::distance(breaks_.begin(), it)) - 1;
}

std::size_t Itm::piece_of_left(const Rational& x) const {
  auto it = std::lower_bound(breaks_.begin(), breaks_.end(), x);
  if (it == breaks_.begin()) return size() - 1;
  return static_cast<std::size_t>(std::distance(breaks_.begin(), it)) - 1;
}

bool Itm::is_breakpoint(const Rational& x) const { return std::binary_search(breaks_.begin(), breaks_.end(), x); }

EndpointOrbit evaluate_one_sided(const Itm& map, std::size_t j, Side side, std::size_t steps) {
  const std::size_t n = map.size();
  if (j >= n) throw std::out_of_range("evaluate_one_sided: breakpoint index out of range");
  EndpointOrbit orbit;
  orbit.base = j;
  orbit.side = side;
  orbit.visit_counts.assign(n, 0);
  orbit.points.reserve(steps + 1);
  orbit.itinerary.reserve(steps);
  orbit.points.push_back(map.breakpoint(j));

  Rational lifted = map.breakpoint(j);
  std::size_t piece = side == Side::right ? j : (j + n - 1) % n;
  for (std::size_t r = 0; r < steps; ++r) {
    const Rational& x = orbit.points.back();
    if (r > 0) piece = side == Side::right ? map.piece_of(x) : map.piece_of_left(x);
    orbit.itinerary.push_back(piece);
    ++orbit.visit_counts[piece];
    lifted += map.shift(piece);
    orbit.points.push_back(frac(x + map.shift(piece)));
  }
  // sum l_k c_k - w = last - first
  Rational lift_gap = lifted - orbit.points.back();
  orbit.winding = floor(lift_gap).get_si();
  return orbit;
}

ArcSet image(const Itm& map, const ArcSet& set) {
  std::vector<Segment> out;
  const auto& segs = set.segments();
  const auto& pieces = map.piece_segments();
  out.reserve(segs.size() + pieces.size());
  std::size_t i = 0, p = 0;
  while (i < segs.size() && p < pieces.size()) {
    const Segment& s = segs[i];
    const Segment& ps = pieces[p].segment;
    const Rational& lo = s.lo < ps.lo ? ps.lo : s.lo;
    const Rational& hi = s.hi < ps.hi ? s.hi : ps.hi;
    if (lo < hi) {
      const Rational& c = map.shift(pieces[p].piece);
      push_wrapped(out, lo + c, hi + c);
    }
    if (s.hi < ps.hi)
      ++i;
    else
      ++p;
  }
  return ArcSet::from_segments(std::move(out));
}

ArcSet preimage(const Itm& map, const ArcSet& set) {
  std::vector<Segment> out;
  for (std::size_t j = 0; j < map.size(); ++j) {
    ArcSet part = set.translate(-map.shift(j)).intersect(map.piece_set(j));
    out.insert(out.end(), part.segments().begin(), part.segments().end());
  }
  return ArcSet::from_segments(std::move(out));
}

AttractorResult attractor(const Itm& map, std::size_t max_iter, std::size_t max_arcs) {
  if (max_iter < 1) throw std::invalid_argument("attractor: max_iter must be >= 1");
  AttractorResult result;
  result.iterates.push_back(ArcSet::full());
  for (std::size_t k = 0; k < max_iter; ++k) {
    ArcSet next = image(map, result.iterates.back());
    if (next.segments().size() > max_arcs)
      throw BudgetExceeded("attractor", "iterate " + std::to_string(k + 1) + " has " +
                                            std::to_string(next.segments().size()) + " arcs, budget " +
                                            std::to_string(max_arcs));
    if (!next.subset_of(result.iterates.back()))
      throw std::logic_error("attractor: iterates are not nested at step " + std::to_string(k + 1));
    if (next == result.iterates.back()) {
      result.stabilized_at = k;
      result.finite_type = FiniteType::yes;
      result.attractor = result.iterates.back();
      return result;
    }
    result.iterates.push_back(std::move(next));
  }
  result.finite_type = FiniteType::no_within_budget;
  result.attractor = result.iterates.back();
  return result;
}

std::vector<Rational> point_preimages(const Itm& map, const Rational& y) {
  std::vector<Rational> out;
  for (std::size_t j = 0; j < map.size(); ++j) {
    Rational x = frac(y - map.shift(j));
    if (map.piece_of(x) == j) out.push_back(std::move(x));
  }
  return out;
}

std::vector<Rational> omega_to_depth(const Itm& map, std::size_t depth, std::size_t max_points) {
  std::vector<Rational> all = map.breakpoints();
  std::vector<Rational> frontier = all;
  for (std::size_t k = 0; k < depth && !frontier.empty(); ++k) {
    std::vector<Rational> next;
    for (const auto& y : frontier)
      for (auto& x : point_preimages(map, y)) next.push_back(std::move(x));
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    std::vector<Rational> fresh;
    std::set_difference(next.begin(), next.end(), all.begin(), all.end(), std::back_inserter(fresh));
    std::vector<Rational> merged;
    merged.reserve(all.size() + fresh.size());
    std::merge(all.begin(), all.end(), fresh.begin(), fresh.end(), std::back_inserter(merged));
    all = std::move(merged);
    if (all.size() > max_points)
      throw BudgetExceeded("omega_to_depth", "more than " + std::to_string(max_points) + " points at depth " +
                                                 std::to_string(k + 1));
    frontier = std::move(fresh);
  }
  return all;
}

namespace {

bool interior_meets_breakpoint(const Itm& map, const OpenArc& arc) {
  for (const auto& t : map.breakpoints()) {
    Rational offset = frac(t - arc.start);
    if (offset > 0 && offset < arc.length) return true;
  }
  return false;
}

struct ArcKeyLess {
  bool operator()(const OpenArc& a, const OpenArc& b) const {
    if (a.start != b.start) return a.start < b.start;
    return a.length < b.length;
  }
};

}  // namespace

Homterval track_arc(const Itm& map, const OpenArc& arc, std::size_t orbit_budget) {
  Homterval out{arc, std::nullopt, std::nullopt};
  std::map<OpenArc, std::size_t, ArcKeyLess> seen;
  OpenArc current{frac(arc.start), arc.length};
  seen.emplace(current, 0);
  for (std::size_t k = 0; k < orbit_budget; ++k) {
    if (interior_meets_breakpoint(map, current)) return out;
    const Rational& c = map.shift(map.piece_of(current.start));
    OpenArc next{frac(current.start + c), current.length};
    auto [it, inserted] = seen.emplace(next, k + 1);
    if (!inserted) {
      out.preperiod = it->second;
      out.period = k + 1 - it->second;
      return out;
    }
    current = std::move(next);
  }
  return out;
}

HomtervalReport classify_homtervals(const Itm& map, std::size_t depth, std::size_t orbit_budget,
                                    std::size_t max_points) {
  if (depth < 1) throw std::invalid_argument("classify_homtervals: depth must be >= 1");
  HomtervalReport report;
  report.depth = depth;
  report.omega = omega_to_depth(map, depth, max_points);
  const auto& pts = report.omega;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    Rational next = i + 1 < pts.size() ? pts[i + 1] : pts.front() + 1;
    report.homtervals.push_back(track_arc(map, OpenArc{pts[i], next - pts[i]}, orbit_budget));
  }
  return report;
}

const char* to_string(Genericity value) {
  switch (value) {
    case Genericity::not_generic:
      return "not generic";
    case Genericity::no_periodic_domain_found:
      return "no periodic domain found";
    case Genericity::unknown:
      break;
  }
  return "unknown";
}

Genericity is_generic_within_depth(const Itm& map, std::size_t depth, std::size_t orbit_budget,
                                   std::size_t max_points) {
  HomtervalReport report;
  try {
    report = classify_homtervals(map, depth, orbit_budget, max_points);
  } catch (const BudgetExceeded&) {
    return Genericity::unknown;
  }
  for (const auto& h : report.homtervals)
    if (h.resolved()) return Genericity::not_generic;
  return Genericity::no_periodic_domain_found;
}

}  // namespace itm
