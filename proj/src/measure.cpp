#include "itm/measure.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "itm/errors.hpp"

namespace itm {

namespace {

struct Event {
  Rational pos;
  Rational delta;
};

void sort_events(std::vector<Event>& events) {
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) { return a.pos < b.pos; });
}

std::vector<Atom> merge_atoms(std::vector<Atom> atoms) {
  std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.point < b.point; });
  std::vector<Atom> out;
  for (auto& a : atoms) {
    if (!out.empty() && out.back().point == a.point)
      out.back().mass += a.mass;
    else
      out.push_back(std::move(a));
  }
  for (const auto& a : out)
    if (a.mass < 0) throw std::invalid_argument("Measure: negative atom mass at " + to_string(a.point));
  std::erase_if(out, [](const Atom& a) { return a.mass == 0; });
  return out;
}

Rational density_mass_over(const std::vector<DensityPiece>& density, const std::vector<Segment>& set) {
  Rational mass = 0;
  std::size_t i = 0, j = 0;
  while (i < density.size() && j < set.size()) {
    const Segment& a = density[i].segment;
    const Segment& b = set[j];
    const Rational& lo = a.lo < b.lo ? b.lo : a.lo;
    const Rational& hi = a.hi < b.hi ? a.hi : b.hi;
    if (lo < hi) mass += density[i].weight * (hi - lo);
    if (a.hi < b.hi)
      ++i;
    else
      ++j;
  }
  return mass;
}

std::string measure_key(const Measure& mu) {
  std::string key;
  for (const auto& d : mu.density()) {
    key += to_string(d.segment.lo);
    key += ',';
    key += to_string(d.segment.hi);
    key += ',';
    key += to_string(d.weight);
    key += ';';
  }
  key += '|';
  for (const auto& a : mu.atoms()) {
    key += to_string(a.point);
    key += ',';
    key += to_string(a.mass);
    key += ';';
  }
  return key;
}

}  // namespace

Measure Measure::from_parts(std::vector<DensityPiece> density, std::vector<Atom> atoms) {
  Measure mu;
  std::vector<Event> events;
  events.reserve(2 * density.size());
  for (auto& d : density) {
    if (d.weight < 0) throw std::invalid_argument("Measure: negative density weight");
    if (d.weight == 0 || d.segment.hi <= d.segment.lo) continue;
    events.push_back({d.segment.lo, d.weight});
    events.push_back({d.segment.hi, -d.weight});
  }
  sort_events(events);
  Rational running = 0;
  for (std::size_t i = 0; i < events.size();) {
    const Rational pos = events[i].pos;
    while (i < events.size() && events[i].pos == pos) running += events[i++].delta;
    if (i == events.size()) break;
    const Rational& next = events[i].pos;
    if (running == 0) continue;
    if (!mu.density_.empty() && mu.density_.back().segment.hi == pos && mu.density_.back().weight == running)
      mu.density_.back().segment.hi = next;
    else
      mu.density_.push_back({{pos, next}, running});
  }
  mu.atoms_ = merge_atoms(std::move(atoms));
  for (const auto& d : mu.density_) mu.total_ += d.weight * d.segment.length();
  for (const auto& a : mu.atoms_) mu.total_ += a.mass;
  return mu;
}

Measure Measure::lebesgue() { return from_parts({{{Rational(0), Rational(1)}, Rational(1)}}, {}); }

Measure Measure::uniform_on(const ArcSet& set) {
  if (set.is_empty()) throw std::invalid_argument("Measure::uniform_on: empty set");
  Rational weight = 1 / set.total_length();
  std::vector<DensityPiece> pieces;
  for (const auto& s : set.segments()) pieces.push_back({s, weight});
  return from_parts(std::move(pieces), {});
}

Measure Measure::dirac(const Rational& point) { return from_parts({}, {{point, Rational(1)}}); }

Rational Measure::mass_of(const ArcSet& set) const {
  Rational mass = density_mass_over(density_, set.segments());
  for (const auto& a : atoms_)
    if (set.contains(a.point)) mass += a.mass;
  return mass;
}

Rational Measure::mass_open(const Rational& lo, const Rational& hi, bool circle) const {
  if (hi <= lo) return 0;
  Rational mass = 0;
  if (circle) {
    Rational width = hi - lo;
    if (width > 1) return total_;
    std::vector<Segment> segs;
    push_wrapped(segs, lo, hi);
    merge_segments(segs);
    mass = density_mass_over(density_, segs);
    for (const auto& a : atoms_) {
      Rational offset = frac(a.point - lo);
      if (offset > 0 && offset < width) mass += a.mass;
    }
    return mass;
  }
  Rational a = lo < 0 ? Rational(0) : lo;
  Rational b = hi > 1 ? Rational(1) : hi;
  if (a < b) mass = density_mass_over(density_, {{a, b}});
  for (const auto& atom : atoms_)
    if (atom.point > lo && atom.point < hi) mass += atom.mass;
  return mass;
}

ArcSet Measure::density_support() const {
  std::vector<Segment> segs;
  segs.reserve(density_.size());
  for (const auto& d : density_) segs.push_back(d.segment);
  return ArcSet::from_segments(std::move(segs));
}

Measure Measure::scaled(const Rational& factor) const {
  if (factor < 0) throw std::invalid_argument("Measure::scaled: negative factor");
  std::vector<DensityPiece> density = density_;
  std::vector<Atom> atoms = atoms_;
  for (auto& d : density) d.weight *= factor;
  for (auto& a : atoms) a.mass *= factor;
  return from_parts(std::move(density), std::move(atoms));
}

Measure Measure::operator+(const Measure& other) const {
  std::vector<DensityPiece> density = density_;
  density.insert(density.end(), other.density_.begin(), other.density_.end());
  std::vector<Atom> atoms = atoms_;
  atoms.insert(atoms.end(), other.atoms_.begin(), other.atoms_.end());
  return from_parts(std::move(density), std::move(atoms));
}

Cdf::Cdf(const Measure& mu) : density_(mu.density()), atoms_(mu.atoms()), total_(mu.total_mass()) {
  Rational run = 0;
  for (const auto& d : density_) {
    cum_start_.push_back(run);
    run += d.weight * d.segment.length();
  }
  run = 0;
  for (const auto& a : atoms_) {
    cum_atoms_.push_back(run);
    run += a.mass;
  }
}

Rational Cdf::density_upto(const Rational& x) const {
  auto it = std::upper_bound(density_.begin(), density_.end(), x,
                             [](const Rational& v, const DensityPiece& d) { return v < d.segment.lo; });
  if (it == density_.begin()) return 0;
  std::size_t k = static_cast<std::size_t>(std::distance(density_.begin(), it)) - 1;
  const auto& d = density_[k];
  const Rational& end = x < d.segment.hi ? x : d.segment.hi;
  return cum_start_[k] + d.weight * (end - d.segment.lo);
}

Rational Cdf::operator()(const Rational& x) const {
  auto it = std::upper_bound(atoms_.begin(), atoms_.end(), x,
                             [](const Rational& v, const Atom& a) { return v < a.point; });
  Rational atoms = 0;
  if (it != atoms_.begin()) {
    std::size_t k = static_cast<std::size_t>(std::distance(atoms_.begin(), it)) - 1;
    atoms = cum_atoms_[k] + atoms_[k].mass;
  }
  return density_upto(x) + atoms;
}

Rational Cdf::left_limit(const Rational& x) const {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), x,
                             [](const Atom& a, const Rational& v) { return a.point < v; });
  Rational atoms = 0;
  if (it != atoms_.begin()) {
    std::size_t k = static_cast<std::size_t>(std::distance(atoms_.begin(), it)) - 1;
    atoms = cum_atoms_[k] + atoms_[k].mass;
  }
  return density_upto(x) + atoms;
}

std::vector<Rational> Cdf::breaklist() const {
  std::vector<Rational> pts;
  pts.reserve(2 * density_.size() + atoms_.size());
  for (const auto& d : density_) {
    pts.push_back(d.segment.lo);
    pts.push_back(d.segment.hi);
  }
  for (const auto& a : atoms_) pts.push_back(a.point);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

Rational Cdf::hbar(const Rational& y) const {
  if (!atoms_.empty()) throw AtomicMeasure("hbar", "right inverse needs a non-atomic measure");
  if (y < 0) return 0;
  if (y >= total_) return 1;
  // first segment whose cumulative end exceeds y
  std::size_t lo = 0, hi = density_.size();
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    Rational end = cum_start_[mid] + density_[mid].weight * density_[mid].segment.length();
    if (end > y)
      hi = mid;
    else
      lo = mid + 1;
  }
  const auto& d = density_[lo];
  return d.segment.lo + (y - cum_start_[lo]) / d.weight;
}

bool Cdf::flat_near(const Rational& x) const {
  bool atom_here = false;
  for (const auto& a : atoms_) atom_here = atom_here || a.point == x;
  bool covered_right = false, covered_left = false;
  for (const auto& d : density_) {
    covered_right = covered_right || (d.segment.lo <= x && x < d.segment.hi);
    covered_left = covered_left || (d.segment.lo < x && x <= d.segment.hi);
  }
  bool flat_right = x < 1 && !covered_right;
  bool flat_left = x > 0 && !covered_left && !atom_here;
  return flat_right || flat_left;
}

Measure pushforward(const Itm& map, const Measure& mu) {
  std::vector<Segment> moved;
  std::vector<DensityPiece> density;
  const auto& pieces = map.piece_segments();
  const auto& dens = mu.density();
  std::size_t i = 0, p = 0;
  while (i < dens.size() && p < pieces.size()) {
    const Segment& s = dens[i].segment;
    const Segment& ps = pieces[p].segment;
    const Rational& lo = s.lo < ps.lo ? ps.lo : s.lo;
    const Rational& hi = s.hi < ps.hi ? s.hi : ps.hi;
    if (lo < hi) {
      const Rational& c = map.shift(pieces[p].piece);
      moved.clear();
      push_wrapped(moved, lo + c, hi + c);
      for (auto& m : moved) density.push_back({std::move(m), dens[i].weight});
    }
    if (s.hi < ps.hi)
      ++i;
    else
      ++p;
  }
  std::vector<Atom> atoms;
  atoms.reserve(mu.atoms().size());
  for (const auto& a : mu.atoms()) atoms.push_back({map.evaluate(CirclePoint(a.point)).value(), a.mass});
  return Measure::from_parts(std::move(density), std::move(atoms));
}

Rational total_variation(const Measure& mu, const Measure& nu) {
  std::vector<Event> events;
  events.reserve(2 * (mu.density().size() + nu.density().size()));
  for (const auto& d : mu.density()) {
    events.push_back({d.segment.lo, d.weight});
    events.push_back({d.segment.hi, -d.weight});
  }
  for (const auto& d : nu.density()) {
    events.push_back({d.segment.lo, -d.weight});
    events.push_back({d.segment.hi, d.weight});
  }
  sort_events(events);
  Rational tv = 0, running = 0;
  for (std::size_t i = 0; i < events.size();) {
    const Rational pos = events[i].pos;
    while (i < events.size() && events[i].pos == pos) running += events[i++].delta;
    if (i < events.size() && running != 0) tv += abs(running) * (events[i].pos - pos);
  }
  const auto& a = mu.atoms();
  const auto& b = nu.atoms();
  std::size_t x = 0, y = 0;
  while (x < a.size() || y < b.size()) {
    if (y == b.size() || (x < a.size() && a[x].point < b[y].point)) {
      tv += a[x++].mass;
    } else if (x == a.size() || b[y].point < a[x].point) {
      tv += b[y++].mass;
    } else {
      tv += abs(a[x].mass - b[y].mass);
      ++x;
      ++y;
    }
  }
  return tv;
}

Rational invariance_residual_exact(const Itm& map, const Measure& mu) {
  return total_variation(pushforward(map, mu), mu);
}

Rational cdf_distance(const Measure& mu, const Measure& nu) {
  Cdf f(mu), g(nu);
  std::vector<Rational> pts = f.breaklist();
  std::vector<Rational> other = g.breaklist();
  pts.insert(pts.end(), other.begin(), other.end());
  pts.emplace_back(0);
  pts.emplace_back(1);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  Rational best = 0;
  for (const auto& p : pts) {
    Rational d = abs(f(p) - g(p));
    if (d > best) best = d;
    d = abs(f.left_limit(p) - g.left_limit(p));
    if (d > best) best = d;
  }
  return best;
}

std::vector<Rational> mass_near_breakpoints(const Measure& mu, const Itm& map, const Rational& delta) {
  if (delta <= 0) throw std::invalid_argument("mass_near_breakpoints: delta must be positive");
  std::vector<Rational> out;
  out.reserve(map.size());
  for (const auto& t : map.breakpoints()) out.push_back(mu.mass_open(t - delta, t + delta, true));
  return out;
}

Measure cycle_average(const Itm& map, const Measure& mu, std::size_t orbit_budget) {
  std::vector<Measure> history{mu};
  std::unordered_map<std::string, std::size_t> seen{{measure_key(mu), 0}};
  for (std::size_t k = 1; k <= orbit_budget; ++k) {
    Measure next = pushforward(map, history.back());
    auto [it, inserted] = seen.emplace(measure_key(next), k);
    if (!inserted) {
      std::size_t start = it->second;
      std::size_t period = k - start;
      Measure sum = history[start];
      for (std::size_t j = start + 1; j < k; ++j) sum = sum + history[j];
      return sum.scaled(Rational(1, static_cast<unsigned long>(period)));
    }
    history.push_back(std::move(next));
  }
  throw CycleNotFound("attractor_measure", "pushforwards did not repeat within " + std::to_string(orbit_budget) +
                                               " steps");
}

Measure attractor_measure(const Itm& map, const AttractorResult& attr, std::size_t orbit_budget) {
  if (attr.finite_type != FiniteType::yes || !attr.stabilized_at)
    throw NotFiniteType("attractor_measure", "attractor did not stabilize within budget");
  Measure candidate = Measure::uniform_on(attr.attractor);
  if (invariance_residual_exact(map, candidate) == 0) return candidate;
  Measure averaged = cycle_average(map, candidate, orbit_budget);
  if (invariance_residual_exact(map, averaged) != 0)
    throw std::logic_error("attractor_measure: cycle average is not invariant");
  return averaged;
}

std::vector<Rational> sample_support(const Measure& mu, std::size_t samples, std::mt19937_64& rng) {
  std::vector<double> cumulative;
  const auto& dens = mu.density();
  const auto& atoms = mu.atoms();
  double run = 0.0;
  for (const auto& d : dens) cumulative.push_back(run += to_double(d.weight * d.segment.length()));
  for (const auto& a : atoms) cumulative.push_back(run += to_double(a.mass));
  std::vector<Rational> out;
  if (cumulative.empty()) return out;
  out.reserve(samples);
  const Integer grid = Integer(1) << 33;
  for (std::size_t s = 0; s < samples; ++s) {
    double r = static_cast<double>(rng() >> 11) * 0x1.0p-53 * run;
    std::size_t k = static_cast<std::size_t>(std::upper_bound(cumulative.begin(), cumulative.end(), r) -
                                             cumulative.begin());
    if (k >= cumulative.size()) k = cumulative.size() - 1;
    if (k < dens.size()) {
      const auto& seg = dens[k].segment;
      Integer u = Integer(static_cast<unsigned long>(rng() >> 32)) * 2 + 1;
      out.push_back(seg.lo + seg.length() * Rational(u, grid));
    } else {
      out.push_back(atoms[k - dens.size()].point);
    }
  }
  return out;
}

std::vector<RecurrenceSample> find_recurrent_points(const Itm& map, const Measure& mu, const Rational& eps,
                                                    std::size_t horizon, std::size_t samples, std::mt19937_64& rng) {
  if (eps <= 0) throw std::invalid_argument("find_recurrent_points: eps must be positive");
  std::vector<RecurrenceSample> out;
  for (auto& x : sample_support(mu, samples, rng)) {
    RecurrenceSample rec{x, std::nullopt, Rational(0)};
    CirclePoint y(x);
    for (std::size_t m = 1; m <= horizon; ++m) {
      y = map.evaluate(y);
      Rational d = circle_distance(y.value(), x);
      if (d < eps) {
        rec.time = m;
        rec.distance = std::move(d);
        break;
      }
      if (m == horizon) rec.distance = std::move(d);
    }
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace itm
