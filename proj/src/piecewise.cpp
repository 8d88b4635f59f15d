#include "itm/piecewise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "itm/errors.hpp"
#include "itm/kernels.hpp"

namespace itm {

const char* to_string(Domain domain) { return domain == Domain::circle ? "circle" : "segment"; }

const char* to_string(TrendVerdict verdict) {
  switch (verdict) {
    case TrendVerdict::plausible:
      return "plausible";
    case TrendVerdict::violated:
      return "violated";
    case TrendVerdict::inconclusive:
      break;
  }
  return "inconclusive";
}

PiecewiseMap::PiecewiseMap(Domain domain, std::vector<MapPiece> pieces,
                           std::vector<std::pair<Rational, Rational>> boundary_values)
    : domain_(domain), pieces_(std::move(pieces)), boundary_values_(std::move(boundary_values)) {
  if (pieces_.empty()) throw InvalidMap("PiecewiseMap", "no pieces");
  if (pieces_.front().interval.lo != 0) throw InvalidMap("PiecewiseMap", "first piece must start at 0");
  if (pieces_.back().interval.hi != 1) throw InvalidMap("PiecewiseMap", "last piece must end at 1");
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const auto& iv = pieces_[i].interval;
    if (iv.hi <= iv.lo) throw InvalidMap("PiecewiseMap", "piece " + std::to_string(i) + " is empty");
    if (i > 0 && pieces_[i - 1].interval.hi != iv.lo)
      throw InvalidMap("PiecewiseMap", "pieces " + std::to_string(i - 1) + " and " + std::to_string(i) +
                                           " do not tile the domain");
    if (const auto* aff = std::get_if<AffinePiece>(&pieces_[i].fn)) {
      if (domain_ == Domain::segment) {
        for (const Rational* x : {&iv.lo, &iv.hi}) {
          Rational v = aff->a * *x + aff->b;
          if (v < 0 || v > 1)
            throw InvalidMap("PiecewiseMap", "piece " + std::to_string(i) + " leaves [0,1] at " + to_string(*x));
        }
      }
    } else {
      affine_ = false;
    }
  }
  for (auto& [x, v] : boundary_values_) {
    if (x < 0 || x > 1 || (domain_ == Domain::circle && x == 1))
      throw InvalidMap("PiecewiseMap", "boundary point " + to_string(x) + " outside the domain");
    if (domain_ == Domain::circle) v = frac(v);
    if (v < 0 || v > 1) throw InvalidMap("PiecewiseMap", "boundary value " + to_string(v) + " outside the domain");
  }
  std::sort(boundary_values_.begin(), boundary_values_.end(),
            [](const auto& p, const auto& q) { return p.first < q.first; });

  const std::size_t n = pieces_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (domain_ == Domain::segment && i == 0) continue;
    const Rational& p = pieces_[i].interval.lo;
    const auto& prev = pieces_[(i + n - 1) % n];
    const auto* left = std::get_if<AffinePiece>(&prev.fn);
    const auto* right = std::get_if<AffinePiece>(&pieces_[i].fn);
    if (!left || !right) {
      discontinuities_.push_back(p);
      continue;
    }
    Rational lv = apply(*left, i == 0 ? Rational(1) : p);
    Rational rv = apply(*right, p);
    if (lv != rv) discontinuities_.push_back(p);
  }
  for (const auto& [x, v] : boundary_values_) {
    const auto* aff = std::get_if<AffinePiece>(&pieces_[piece_of(x)].fn);
    if (!aff || apply(*aff, x) != v) discontinuities_.push_back(x);
  }
  std::sort(discontinuities_.begin(), discontinuities_.end());
  discontinuities_.erase(std::unique(discontinuities_.begin(), discontinuities_.end()), discontinuities_.end());
  h_set_ = discontinuities_;
}

PiecewiseMap PiecewiseMap::from_itm(const Itm& map) {
  std::vector<MapPiece> pieces;
  for (const auto& ps : map.piece_segments())
    pieces.push_back({ps.segment, AffinePiece{Rational(1), map.shift(ps.piece)}});
  PiecewiseMap out(Domain::circle, std::move(pieces));
  out.set_h_set(map.breakpoints());
  return out;
}

void PiecewiseMap::set_h_set(std::vector<Rational> h) {
  std::sort(h.begin(), h.end());
  h.erase(std::unique(h.begin(), h.end()), h.end());
  h_set_ = std::move(h);
}

Rational PiecewiseMap::apply(const AffinePiece& piece, const Rational& x) const {
  Rational v = piece.a * x + piece.b;
  return domain_ == Domain::circle ? frac(v) : v;
}

std::size_t PiecewiseMap::piece_of(const Rational& x) const {
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                             [](const Rational& v, const MapPiece& p) { return v < p.interval.lo; });
  if (it == pieces_.begin()) return 0;
  return static_cast<std::size_t>(std::distance(pieces_.begin(), it)) - 1;
}

std::size_t PiecewiseMap::piece_of(double x) const {
  std::size_t k = 0;
  for (std::size_t i = 1; i < pieces_.size(); ++i)
    if (to_double(pieces_[i].interval.lo) <= x) k = i;
  return k;
}

Rational PiecewiseMap::evaluate(const Rational& x) const {
  for (const auto& [p, v] : boundary_values_)
    if (p == x) return v;
  const auto* aff = std::get_if<AffinePiece>(&pieces_[piece_of(x)].fn);
  if (!aff) throw std::logic_error("PiecewiseMap::evaluate: exact evaluation needs affine pieces");
  return apply(*aff, x);
}

double PiecewiseMap::evaluate(double x) const {
  for (const auto& [p, v] : boundary_values_)
    if (to_double(p) == x) return to_double(v);
  const auto& piece = pieces_[piece_of(x)];
  double v;
  if (const auto* aff = std::get_if<AffinePiece>(&piece.fn))
    v = to_double(aff->a) * x + to_double(aff->b);
  else
    v = std::get<GeneralPiece>(piece.fn).fn(x);
  if (domain_ == Domain::circle) v -= std::floor(v);
  return v;
}

Rational PiecewiseMap::distance(const Rational& x, const Rational& y) const {
  return domain_ == Domain::circle ? circle_distance(x, y) : abs(x - y);
}

double PiecewiseMap::distance(double x, double y) const {
  double d = std::fabs(x - y);
  return domain_ == Domain::circle ? std::min(d, 1.0 - d) : d;
}

std::vector<Rational> orbit(const PiecewiseMap& map, const Rational& x0, std::size_t length) {
  const auto& disc = map.discontinuities();
  auto check = [&](const Rational& x, std::size_t k) {
    if (std::binary_search(disc.begin(), disc.end(), x))
      throw HitDiscontinuity("orbit", "iterate " + std::to_string(k) + " = " + to_string(x) +
                                          " is a discontinuity point");
  };
  std::vector<Rational> pts;
  if (length == 0) return pts;
  pts.reserve(length);
  Rational x = map.is_circle() ? frac(x0) : x0;
  check(x, 0);
  pts.push_back(x);
  for (std::size_t k = 1; k < length; ++k) {
    Rational next = map.evaluate(pts.back());
    check(next, k);
    pts.push_back(std::move(next));
  }
  return pts;
}

std::vector<double> orbit_float(const PiecewiseMap& map, double x0, std::size_t length) {
  std::vector<double> pts;
  pts.reserve(length);
  double x = x0;
  for (std::size_t k = 0; k < length; ++k) {
    pts.push_back(x);
    x = map.evaluate(x);
  }
  return pts;
}

VisitFrequencyTable visit_frequency(const PiecewiseMap& map, const Rational& x0, const std::vector<std::size_t>& ms,
                                    const std::vector<Rational>& epsilons) {
  VisitFrequencyTable table;
  if (ms.empty() || epsilons.empty()) return table;
  const std::size_t top = *std::max_element(ms.begin(), ms.end());
  const auto& h = map.h_set();

  // counts[e][k] = #{1 <= i <= k : T^i x in H_eps_e}
  std::vector<std::vector<std::size_t>> counts(epsilons.size(), std::vector<std::size_t>(top + 1, 0));
  if (map.is_affine()) {
    auto pts = orbit(map, x0, top + 1);
    for (std::size_t k = 1; k <= top; ++k) {
      std::optional<Rational> nearest;
      for (const auto& c : h) {
        Rational d = map.distance(pts[k], c);
        if (!nearest || d < *nearest) nearest = std::move(d);
      }
      for (std::size_t e = 0; e < epsilons.size(); ++e)
        counts[e][k] = counts[e][k - 1] + ((nearest && *nearest < epsilons[e]) ? 1 : 0);
    }
  } else {
    auto pts = orbit_float(map, to_double(x0), top + 1);
    std::vector<double> centres;
    for (const auto& c : h) centres.push_back(to_double(c));
    std::vector<std::size_t> sorted_ms = ms;
    std::sort(sorted_ms.begin(), sorted_ms.end());
    for (std::size_t e = 0; e < epsilons.size(); ++e) {
      double eps = to_double(epsilons[e]);
      for (std::size_t m : sorted_ms) {
        std::span<const double> xs(pts.data() + 1, m);
        counts[e][m] = kernels::count_near(xs, centres, eps, map.is_circle());
      }
    }
  }
  for (std::size_t m : ms) {
    if (m == 0) continue;
    for (std::size_t e = 0; e < epsilons.size(); ++e)
      table.rows.push_back({m, epsilons[e], Rational(static_cast<unsigned long>(counts[e][m]),
                                                     static_cast<unsigned long>(m))});
  }
  for (auto& r : table.rows) r.frequency.canonicalize();

  auto emin = std::min_element(epsilons.begin(), epsilons.end()) - epsilons.begin();
  auto emax = std::max_element(epsilons.begin(), epsilons.end()) - epsilons.begin();
  Rational f_small(static_cast<unsigned long>(counts[emin][top]), static_cast<unsigned long>(top));
  Rational f_large(static_cast<unsigned long>(counts[emax][top]), static_cast<unsigned long>(top));
  f_small.canonicalize();
  f_large.canonicalize();
  Rational linear_bound = 4 * static_cast<long>(h.size()) * epsilons[emin];
  if (f_small <= linear_bound)
    table.verdict = TrendVerdict::plausible;
  else if (2 * f_small >= f_large)
    table.verdict = TrendVerdict::violated;
  else
    table.verdict = TrendVerdict::inconclusive;
  return table;
}

EmpiricalMeasure empirical_measure(const PiecewiseMap& map, const Rational& x0, std::size_t length) {
  if (length == 0) throw std::invalid_argument("empirical_measure: length must be positive");
  auto pts = orbit(map, x0, length + 1);
  EmpiricalMeasure out;
  out.base = pts.front();
  out.end = pts.back();
  out.length = length;
  Rational weight(1, static_cast<unsigned long>(length));
  std::vector<Atom> atoms;
  atoms.reserve(length);
  for (std::size_t i = 0; i < length; ++i) atoms.push_back({pts[i], weight});
  out.measure = Measure::from_parts({}, std::move(atoms));
  return out;
}

Measure pushforward_atoms(const PiecewiseMap& map, const Measure& mu) {
  if (!mu.density().empty()) throw std::invalid_argument("pushforward_atoms: measure has a density part");
  std::vector<Atom> atoms;
  atoms.reserve(mu.atoms().size());
  for (const auto& a : mu.atoms()) atoms.push_back({map.evaluate(a.point), a.mass});
  return Measure::from_parts({}, std::move(atoms));
}

DefectReport pushforward_defect(const PiecewiseMap& map, const EmpiricalMeasure& emp) {
  DefectReport report;
  Measure pushed = pushforward_atoms(map, emp.measure);
  report.norm = total_variation(pushed, emp.measure);
  Rational inv_m(1, static_cast<unsigned long>(emp.length));
  report.expected_norm = emp.end == emp.base ? Rational(0) : Rational(2 * inv_m);
  // T# mu - mu = (1/m)(delta(end) - delta(base))  <=>  T# mu + delta(base)/m = mu + delta(end)/m
  Measure lhs = pushed + Measure::dirac(emp.base).scaled(inv_m);
  Measure rhs = emp.measure + Measure::dirac(emp.end).scaled(inv_m);
  report.identity_holds = lhs == rhs;
  return report;
}

WanderingReport wandering_discontinuity_check(const PiecewiseMap& map, const std::vector<Rational>& radii,
                                              std::size_t horizon, std::size_t samples_per_radius) {
  WanderingReport report;
  if (!map.is_affine()) throw std::invalid_argument("wandering_discontinuity_check: affine maps only");
  for (const auto& h : map.h_set()) {
    for (const auto& r : radii) {
      WanderingProbe probe{h, r, std::nullopt, std::nullopt};
      for (std::size_t i = 0; i < samples_per_radius; ++i) {
        Rational offset = Rational(static_cast<long>(2 * i + 1), static_cast<unsigned long>(2 * samples_per_radius));
        offset.canonicalize();
        Rational p = h - r + 2 * r * offset;
        if (p == h) continue;
        if (map.is_circle())
          p = frac(p);
        else if (p < 0 || p > 1)
          continue;
        Rational y = p;
        std::size_t limit = probe.return_time ? *probe.return_time - 1 : horizon;
        for (std::size_t k = 1; k <= limit; ++k) {
          y = map.evaluate(y);
          if (map.distance(y, h) < r) {
            probe.witness = p;
            probe.return_time = k;
            break;
          }
        }
      }
      report.probes.push_back(std::move(probe));
    }
  }
  return report;
}

}  // namespace itm
