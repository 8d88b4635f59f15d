#include "itm/approximation.hpp"

#include <algorithm>
#include <future>
#include <stdexcept>

#include "itm/errors.hpp"

namespace itm {

Rational Relation::residual(const std::vector<Rational>& breakpoints, const std::vector<Rational>& shifts) const {
  Rational r = breakpoints[j] - breakpoints[i] + w;
  for (std::size_t k = 0; k < l.size(); ++k)
    if (l[k] != 0) r -= l[k] * shifts[k];
  return r;
}

RelationSystem detect_relations(const Itm& map, std::size_t depth) {
  if (depth < 1) throw std::invalid_argument("detect_relations: depth must be >= 1");
  RelationSystem system;
  system.source_depth = depth;
  const std::size_t n = map.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (Side side : {Side::right, Side::left}) {
      EndpointOrbit orbit = evaluate_one_sided(map, i, side, depth);
      std::vector<long> counts(n, 0);
      Rational lifted = map.breakpoint(i);
      for (std::size_t r = 1; r <= depth; ++r) {
        std::size_t piece = orbit.itinerary[r - 1];
        ++counts[piece];
        lifted += map.shift(piece);
        const Rational& x = orbit.points[r];
        auto it = std::lower_bound(map.breakpoints().begin(), map.breakpoints().end(), x);
        if (it == map.breakpoints().end() || *it != x) continue;
        Relation rel;
        rel.i = i;
        rel.j = static_cast<std::size_t>(it - map.breakpoints().begin());
        rel.l = counts;
        rel.w = floor(lifted - x).get_si();
        rel.witness = RelationWitness{side, r, {orbit.itinerary.begin(), orbit.itinerary.begin() + r}};
        auto dup = std::find_if(system.relations.begin(), system.relations.end(),
                                [&](const Relation& other) { return other.same_identity(rel); });
        if (dup == system.relations.end())
          system.relations.push_back(std::move(rel));
        else if (dup->witness && dup->witness->depth > r)
          dup->witness = rel.witness;
      }
    }
  }
  return system;
}

Rational best_convergent(const Rational& x, const Integer& bound) {
  if (bound < 1) throw std::invalid_argument("best_convergent: bound must be >= 1");
  // h_{k} = a_k h_{k-1} + h_{k-2}, same for k
  Integer h_prev = 1, h_prev2 = 0, k_prev = 0, k_prev2 = 1;
  Integer num = x.get_num(), den = x.get_den();
  Rational best = Rational(floor(x));
  while (den != 0) {
    Integer a;
    mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    Integer h = a * h_prev + h_prev2;
    Integer k = a * k_prev + k_prev2;
    if (k > bound) break;
    best = Rational(h, k);
    best.canonicalize();
    h_prev2 = h_prev;
    h_prev = h;
    k_prev2 = k_prev;
    k_prev = k;
    Integer rem = num - a * den;
    num = den;
    den = rem;
  }
  return best;
}

std::vector<Integer> fibonacci_denominators(const Integer& limit) {
  std::vector<Integer> out;
  Integer a = 1, b = 2;
  while (b <= limit) {
    out.push_back(b);
    Integer next = a + b;
    a = b;
    b = next;
  }
  return out;
}

namespace {

struct ReducedSystem {
  std::vector<std::vector<Rational>> rows;  // coefficients over coordinates (original order)
  std::vector<Rational> rhs;
  std::vector<std::size_t> pivots;          // pivot coordinate per row
};

std::vector<std::size_t> pivot_order(std::size_t n) {
  std::vector<std::size_t> order;
  for (std::size_t j = 1; j < n; ++j) order.push_back(j);
  order.push_back(0);
  for (std::size_t k = 0; k < n; ++k) order.push_back(n + k);
  return order;
}

ReducedSystem reduce(const RelationSystem& system, std::size_t n) {
  const std::size_t dim = 2 * n;
  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;
  for (const auto& rel : system.relations) {
    if (rel.i >= n || rel.j >= n || rel.l.size() != n)
      throw InconsistentRelations("generate_approximants", "relation indices do not match a " + std::to_string(n) +
                                                               "-piece map");
    std::vector<Rational> row(dim, Rational(0));
    row[rel.j] += 1;
    row[rel.i] -= 1;
    for (std::size_t k = 0; k < n; ++k) row[n + k] -= rel.l[k];
    rows.push_back(std::move(row));
    rhs.emplace_back(-rel.w);
  }
  ReducedSystem out;
  std::size_t next_row = 0;
  for (std::size_t col : pivot_order(n)) {
    std::size_t pick = next_row;
    while (pick < rows.size() && rows[pick][col] == 0) ++pick;
    if (pick == rows.size()) continue;
    std::swap(rows[pick], rows[next_row]);
    std::swap(rhs[pick], rhs[next_row]);
    Rational inv = 1 / rows[next_row][col];
    for (auto& v : rows[next_row]) v *= inv;
    rhs[next_row] *= inv;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == next_row || rows[r][col] == 0) continue;
      Rational factor = rows[r][col];
      for (std::size_t c = 0; c < dim; ++c) rows[r][c] -= factor * rows[next_row][c];
      rhs[r] -= factor * rhs[next_row];
    }
    out.pivots.push_back(col);
    ++next_row;
  }
  for (std::size_t r = next_row; r < rows.size(); ++r)
    if (rhs[r] != 0) throw InconsistentRelations("generate_approximants", "relation system has no solution");
  rows.resize(next_row);
  rhs.resize(next_row);
  out.rows = std::move(rows);
  out.rhs = std::move(rhs);
  return out;
}

}  // namespace

ApproximantSchedule generate_approximants(const ParameterVector& target, const RelationSystem& relations,
                                          const std::vector<Integer>& denominators) {
  const std::size_t n = target.size();
  if (n == 0 || target.shifts.size() != n) throw InvalidMap("generate_approximants", "malformed target");
  ApproximantSchedule schedule;
  schedule.target = target;
  schedule.relations = relations;

  Rational tolerance = 0;
  if (target.precision) {
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, *target.precision);
    tolerance = Rational(Integer(1), scale);
  }
  for (std::size_t r = 0; r < relations.relations.size(); ++r) {
    const auto& rel = relations.relations[r];
    if (rel.i >= n || rel.j >= n || rel.l.size() != n)
      throw InconsistentRelations("generate_approximants", "relation " + std::to_string(r) + " has wrong shape");
    long weight = 2;
    for (long v : rel.l) weight += v < 0 ? -v : v;
    if (abs(rel.residual(target.breakpoints, target.shifts)) > tolerance * weight)
      throw InconsistentRelations("generate_approximants",
                                  "relation " + std::to_string(r) + " does not hold at the target");
  }

  ReducedSystem sys = reduce(relations, n);
  std::vector<bool> is_pivot(2 * n, false);
  for (auto p : sys.pivots) is_pivot[p] = true;
  for (std::size_t q = 0; q < 2 * n; ++q) (is_pivot[q] ? schedule.dependent_coordinates : schedule.free_coordinates).push_back(q);

  auto target_coord = [&](std::size_t q) -> const Rational& {
    return q < n ? target.breakpoints[q] : target.shifts[q - n];
  };

  for (std::size_t m = 0; m < denominators.size(); ++m) {
    std::vector<Rational> coords(2 * n);
    Rational distance = 0;
    for (auto q : schedule.free_coordinates) {
      coords[q] = best_convergent(target_coord(q), denominators[m]);
      Rational d = abs(coords[q] - target_coord(q));
      if (d > distance) distance = d;
    }
    for (std::size_t r = 0; r < sys.rows.size(); ++r) {
      Rational v = sys.rhs[r];
      for (auto q : schedule.free_coordinates)
        if (sys.rows[r][q] != 0) v -= sys.rows[r][q] * coords[q];
      coords[sys.pivots[r]] = v;
    }
    std::vector<Rational> t(coords.begin(), coords.begin() + static_cast<long>(n));
    std::vector<Rational> c(coords.begin() + static_cast<long>(n), coords.end());
    for (std::size_t j = 0; j < n; ++j) {
      if (t[j] < 0 || t[j] >= 1 || (j > 0 && t[j] <= t[j - 1]))
        throw OrderViolation("generate_approximants", "level " + std::to_string(m + 1) + " (q <= " +
                                                          denominators[m].get_str() + ") breaks breakpoint order at index " +
                                                          std::to_string(j));
    }
    Itm map(t, c);
    schedule.levels.push_back({denominators[m], std::move(t), std::move(c), std::move(map), std::move(distance)});
  }
  return schedule;
}

CollisionReport orbit_collision_preservation(const ApproximantSchedule& schedule, const RelationSystem& relations,
                                             std::size_t depth) {
  CollisionReport report;
  report.depth = depth;
  std::vector<std::size_t> checked;
  for (std::size_t r = 0; r < relations.relations.size(); ++r) {
    const auto& w = relations.relations[r].witness;
    if (w && w->depth <= depth) checked.push_back(r);
  }
  report.checked_relations = checked.size();
  for (std::size_t m = 0; m < schedule.levels.size(); ++m) {
    const Itm& map = schedule.levels[m].map;
    CollisionLevelResult level{m + 1, {}};
    for (auto r : checked) {
      const auto& rel = relations.relations[r];
      EndpointOrbit orbit = evaluate_one_sided(map, rel.i, rel.witness->side, rel.witness->depth);
      if (orbit.itinerary != rel.witness->itinerary || orbit.points.back() != map.breakpoint(rel.j))
        level.failed_relations.push_back(r);
    }
    report.levels.push_back(std::move(level));
  }
  std::optional<std::size_t> first;
  for (std::size_t m = report.levels.size(); m-- > 0;) {
    if (!report.levels[m].failed_relations.empty()) break;
    first = m + 1;
  }
  report.first_good_level = first;
  return report;
}

namespace {

LevelMeasure measure_level(const ApproximantLevel& level, std::size_t index, const Budgets& budgets) {
  LevelMeasure out;
  out.level = index;
  try {
    out.attractor = attractor(level.map, budgets.max_iter, budgets.max_arcs);
    out.measure = attractor_measure(level.map, *out.attractor, budgets.orbit_budget);
  } catch (const Error& e) {
    out.error = e.what();
    out.measure.reset();
  }
  return out;
}

}  // namespace

std::vector<LevelMeasure> measure_sequence(const ApproximantSchedule& schedule, const Budgets& budgets,
                                           bool parallel) {
  std::vector<LevelMeasure> out;
  out.reserve(schedule.levels.size());
  if (!parallel) {
    for (std::size_t m = 0; m < schedule.levels.size(); ++m)
      out.push_back(measure_level(schedule.levels[m], m + 1, budgets));
    return out;
  }
  std::vector<std::future<LevelMeasure>> jobs;
  for (std::size_t m = 0; m < schedule.levels.size(); ++m)
    jobs.push_back(std::async(std::launch::async, measure_level, std::cref(schedule.levels[m]), m + 1,
                              std::cref(budgets)));
  for (auto& job : jobs) out.push_back(job.get());
  return out;
}

ConvergenceResult detect_convergence(const std::vector<Measure>& measures, const Rational& tol) {
  if (measures.size() < 2) throw std::invalid_argument("detect_convergence: need at least two measures");
  ConvergenceResult result{measures.back(), {}};
  auto& rep = result.report;
  for (std::size_t k = 0; k + 1 < measures.size(); ++k) rep.successive.push_back(cdf_distance(measures[k], measures[k + 1]));
  std::size_t from = rep.successive.size();
  while (from > 0 && rep.successive[from - 1] <= tol) --from;
  if (from < rep.successive.size()) rep.cauchy_from = from;
  std::size_t tail = (rep.successive.size() + 1) / 2;
  rep.cauchy = rep.cauchy_from && *rep.cauchy_from <= rep.successive.size() - tail;
  return result;
}

namespace {

Rational neighbourhood_mass(const Measure& mu, const std::vector<Rational>& h, const Rational& delta, bool circle) {
  std::vector<Segment> segs;
  for (const auto& p : h) {
    if (circle) {
      if (2 * delta >= 1) return mu.total_mass();
      push_wrapped(segs, p - delta, p + delta);
    } else {
      Rational lo = p - delta < 0 ? Rational(0) : Rational(p - delta);
      Rational hi = p + delta > 1 ? Rational(1) : Rational(p + delta);
      if (lo < hi) segs.push_back({lo, hi});
    }
  }
  ArcSet cover = ArcSet::from_segments(std::move(segs));
  Rational mass = 0;
  for (const auto& d : mu.density()) {
    ArcSet piece = ArcSet::from_segments({d.segment});
    mass += d.weight * piece.intersect(cover).total_length();
  }
  for (const auto& a : mu.atoms()) {
    for (const auto& p : h) {
      Rational dist = circle ? circle_distance(a.point, p) : abs(a.point - p);
      if (dist < delta) {
        mass += a.mass;
        break;
      }
    }
  }
  return mass;
}

}  // namespace

LimitReport verify_limit_measure(const PiecewiseMap& map, const Measure& mu_star, const std::vector<Rational>& h,
                                 const Rational& tol_mass, double tol_res, const TestFamily& family,
                                 std::size_t delta_levels) {
  LimitReport report;
  Rational delta(1, 2);
  for (std::size_t i = 0; i < delta_levels; ++i, delta /= 2)
    report.masses.push_back({delta, neighbourhood_mass(mu_star, h, delta, map.is_circle())});
  report.mass_condition = report.masses.empty() || report.masses.back().mass < tol_mass;
  report.functional = invariance_residual_functional(map, mu_star, family);
  report.invariance_condition = report.functional.residual <= tol_res;
  if (!report.mass_condition && !report.invariance_condition)
    report.failing = "mass+invariance";
  else if (!report.mass_condition)
    report.failing = "mass";
  else if (!report.invariance_condition)
    report.failing = "invariance";
  return report;
}

std::vector<Rational> breakpoint_mass_trend(const ApproximantSchedule& schedule,
                                            const std::vector<LevelMeasure>& measures,
                                            const std::vector<Rational>& deltas) {
  std::vector<Rational> out;
  for (const auto& delta : deltas) {
    Rational sup = 0;
    for (const auto& lm : measures) {
      if (!lm.ok()) continue;
      for (const auto& t : schedule.target.breakpoints) {
        Rational m = lm.measure->mass_open(t - delta, t + delta, true);
        if (m > sup) sup = m;
      }
    }
    out.push_back(sup);
  }
  return out;
}

}  // namespace itm
