#include <doctest.h>

#include "helpers.hpp"
#include "itm/approximation.hpp"
#include "itm/errors.hpp"

using namespace itm;
using test::R;

namespace {

Itm half_collapse() { return Itm({R(0), R(1, 2)}, {R(0), R(1, 2)}); }

bool has_relation(const RelationSystem& s, std::size_t i, std::size_t j, std::vector<long> l, long w) {
  for (const auto& r : s.relations)
    if (r.i == i && r.j == j && r.l == l && r.w == w) return true;
  return false;
}

}  // namespace

TEST_CASE("detect relations examples") {
  auto rot = detect_relations(Itm::rotation(R(1, 3)), 3);
  CHECK(has_relation(rot, 0, 0, {3}, 1));
  CHECK(rot.source_depth == 3);
  CHECK(detect_relations(Itm::rotation(R(89, 144)), 100).relations.empty());
  auto hc = detect_relations(half_collapse(), 1);
  CHECK(has_relation(hc, 1, 0, {0, 1}, 1));
  // every harvested relation holds exactly and its witness replays
  for (const auto& r : hc.relations) {
    CHECK(r.residual(half_collapse().breakpoints(), half_collapse().shifts()) == 0);
    REQUIRE(r.witness.has_value());
    auto orbit = evaluate_one_sided(half_collapse(), r.i, r.witness->side, r.witness->depth);
    CHECK(orbit.points.back() == half_collapse().breakpoint(r.j));
    CHECK(orbit.itinerary == r.witness->itinerary);
  }
}

TEST_CASE("continued fractions and fibonacci") {
  Rational golden = R("0.6180339887498948482");
  CHECK(best_convergent(golden, 2) == R(1, 2));
  CHECK(best_convergent(golden, 3) == R(2, 3));
  CHECK(best_convergent(golden, 5) == R(3, 5));
  CHECK(best_convergent(golden, 8) == R(5, 8));
  CHECK(best_convergent(golden, 10) == R(5, 8));
  CHECK(best_convergent(R(3, 7), 100) == R(3, 7));
  auto f = fibonacci_denominators(Integer(100));
  CHECK(f == std::vector<Integer>{2, 3, 5, 8, 13, 21, 34, 55, 89});
}

TEST_CASE("golden rotation schedule") {
  ParameterVector target{{R(0)}, {R("0.6180339887498948482")}, 19};
  auto s = generate_approximants(target, {}, {2, 3, 5, 8});
  REQUIRE(s.levels.size() == 4);
  CHECK(s.levels[0].shifts[0] == R(1, 2));
  CHECK(s.levels[3].shifts[0] == R(5, 8));
  for (std::size_t m = 1; m < s.levels.size(); ++m) CHECK(s.levels[m].distance <= s.levels[m - 1].distance);
  auto col = orbit_collision_preservation(s, {}, 16);
  CHECK(col.first_good_level == 1u);
  auto mus = measure_sequence(s, Budgets{});
  std::vector<Measure> ms;
  for (const auto& lm : mus) {
    REQUIRE(lm.ok());
    CHECK(*lm.measure == Measure::lebesgue());
    ms.push_back(*lm.measure);
  }
  auto conv = detect_convergence(ms, R(0));
  CHECK(conv.report.cauchy);
  CHECK(conv.limit_candidate == Measure::lebesgue());
}

TEST_CASE("rational target with its own relations is constant") {
  Itm map({R(1, 10), R(1, 2), R(4, 5)}, {R(2, 5), R(3, 10), R(1, 2)});
  auto rel = detect_relations(map, 16);
  ParameterVector target{map.breakpoints(), map.shifts(), std::nullopt};
  auto s = generate_approximants(target, rel, {13, 21, 34});
  for (const auto& lv : s.levels) {
    for (const auto& r : rel.relations) CHECK(r.residual(lv.breakpoints, lv.shifts) == 0);
  }
  auto hs = generate_approximants({half_collapse().breakpoints(), half_collapse().shifts(), std::nullopt},
                                  detect_relations(half_collapse(), 4), {3, 5, 8});
  for (const auto& lv : hs.levels) CHECK(lv.map == half_collapse());
  auto col = orbit_collision_preservation(hs, detect_relations(half_collapse(), 4), 4);
  CHECK(col.first_good_level == 1u);
  auto mus = measure_sequence(hs, Budgets{}, true);
  for (const auto& lm : mus) CHECK(*lm.measure == Measure::from_parts({{{R(0), R(1, 2)}, R(2)}}, {}));
}

TEST_CASE("declared relation t_1 - t_0 = c_0") {
  ParameterVector target{{R(0), R("0.3819660113")}, {R("0.3819660113"), R("0.1415926535")}, 10};
  Relation r;
  r.i = 0;
  r.j = 1;
  r.l = {1, 0};
  r.w = 0;
  auto s = generate_approximants(target, {{r}, 0}, {13, 89, 987});
  for (const auto& lv : s.levels) CHECK(lv.breakpoints[1] == lv.breakpoints[0] + lv.shifts[0]);
  CHECK(s.dependent_coordinates == std::vector<std::size_t>{1});
}

TEST_CASE("relation errors") {
  ParameterVector target{{R(0), R(1, 2)}, {R(1, 3), R(1, 5)}, std::nullopt};
  Relation bad;
  bad.i = 0;
  bad.j = 1;
  bad.l = {1, 0};
  CHECK_THROWS_AS(generate_approximants(target, {{bad}, 0}, {5}), InconsistentRelations);
  Relation shape;
  shape.l = {1};
  CHECK_THROWS_AS(generate_approximants(target, {{shape}, 0}, {5}), InconsistentRelations);
  ParameterVector close{{R(0), R("0.0001")}, {R(1, 3), R(1, 5)}, 4};
  CHECK_THROWS_AS(generate_approximants(close, {}, {2}), OrderViolation);
}

TEST_CASE("convergence detection") {
  Measure leb = Measure::lebesgue();
  Measure half = Measure::from_parts({{{R(0), R(1, 2)}, R(2)}}, {});
  auto constant = detect_convergence({half, half, half}, R(0));
  CHECK(constant.report.cauchy);
  CHECK(constant.limit_candidate == half);
  auto alt = detect_convergence({leb, half, leb, half}, R(1, 4));
  CHECK_FALSE(alt.report.cauchy);
  CHECK(alt.report.successive == std::vector<Rational>{R(1, 2), R(1, 2), R(1, 2)});
  CHECK_THROWS(detect_convergence({leb}, R(0)));
}

TEST_CASE("limit verification") {
  PiecewiseMap rot(Domain::circle, {{{R(0), R(1)}, AffinePiece{R(1), R(2, 7)}}});
  auto ok = verify_limit_measure(rot, Measure::lebesgue(), {R(0)}, R(1, 100), 1e-10, TestFamily::trigonometric(8));
  CHECK(ok.failing.empty());
  CHECK(ok.masses[3].mass == R(1, 8));

  PiecewiseMap ex(Domain::segment, {{{R(0), R(1)}, AffinePiece{R(1, 2), R(0)}}}, {{R(0), R(1)}});
  auto bad = verify_limit_measure(ex, Measure::dirac(R(0)), {R(0)}, R(1, 100), 1e-6, TestFamily::monomial(1));
  CHECK_FALSE(bad.mass_condition);
  CHECK(bad.failing == "mass+invariance");

  PiecewiseMap hc = PiecewiseMap::from_itm(half_collapse());
  auto good = verify_limit_measure(hc, Measure::from_parts({{{R(0), R(1, 2)}, R(2)}}, {}), hc.h_set(), R(1, 100),
                                   1e-10, TestFamily::trigonometric(8));
  CHECK(good.failing.empty());
}
