#include <doctest.h>

#include "helpers.hpp"
#include "itm/errors.hpp"
#include "itm/piecewise.hpp"

using namespace itm;
using test::R;

namespace {

/// T(x) = x/2 for x > 0, T(0) = 1 on [0,1].
PiecewiseMap example01() {
  return PiecewiseMap(Domain::segment, {{{R(0), R(1)}, AffinePiece{R(1, 2), R(0)}}}, {{R(0), R(1)}});
}

PiecewiseMap rotation(const Rational& c) {
  return PiecewiseMap(Domain::circle, {{{R(0), R(1)}, AffinePiece{R(1), c}}});
}

}  // namespace

TEST_CASE("construction and discontinuities") {
  PiecewiseMap e = example01();
  CHECK(e.discontinuities() == std::vector<Rational>{R(0)});
  CHECK(e.h_set() == std::vector<Rational>{R(0)});
  CHECK(e.evaluate(R(0)) == 1);
  CHECK(e.evaluate(R(1)) == R(1, 2));
  CHECK(rotation(R(1, 4)).discontinuities().empty());
  PiecewiseMap from = PiecewiseMap::from_itm(Itm({R(0), R(1, 2)}, {R(1, 3), R(1, 4)}));
  CHECK(from.h_set() == std::vector<Rational>{R(0), R(1, 2)});
  CHECK(from.evaluate(R(1, 2)) == R(3, 4));
  CHECK_THROWS_AS(PiecewiseMap(Domain::segment, {{{R(0), R(1, 2)}, AffinePiece{R(1), R(0)}}}), InvalidMap);
  CHECK_THROWS_AS(PiecewiseMap(Domain::segment, {{{R(0), R(1)}, AffinePiece{R(2), R(0)}}}), InvalidMap);
  CHECK(e.distance(R(1, 10), R(9, 10)) == R(4, 5));
  CHECK(rotation(R(0)).distance(R(1, 10), R(9, 10)) == R(1, 5));
}

TEST_CASE("orbit examples") {
  CHECK(orbit(example01(), R(1), 4) == std::vector<Rational>{R(1), R(1, 2), R(1, 4), R(1, 8)});
  CHECK(orbit(rotation(R(1, 4)), R(0), 5) == std::vector<Rational>{R(0), R(1, 4), R(1, 2), R(3, 4), R(0)});
  CHECK(orbit(rotation(R(0)), R(1, 3), 3) == std::vector<Rational>{R(1, 3), R(1, 3), R(1, 3)});
  CHECK_THROWS_AS(orbit(example01(), R(0), 3), HitDiscontinuity);
  PiecewiseMap two = PiecewiseMap::from_itm(Itm({R(0), R(1, 2)}, {R(1, 4), R(0)}));
  CHECK_THROWS_AS(orbit(two, R(1, 4), 3), HitDiscontinuity);
  auto f = orbit_float(example01(), 1.0, 4);
  CHECK(f[3] == doctest::Approx(0.125));
}

TEST_CASE("visit frequency examples") {
  auto rot = rotation(R(2584, 4181));
  rot.set_h_set({R(0)});
  auto table = visit_frequency(rot, R(1, 7), {10000}, {R(1, 10), R(1, 100)});
  REQUIRE(table.rows.size() == 2);
  CHECK(to_double(table.rows[0].frequency) == doctest::Approx(0.2).epsilon(0.02));
  CHECK(to_double(table.rows[1].frequency) == doctest::Approx(0.02).epsilon(0.1));
  CHECK(table.verdict == TrendVerdict::plausible);

  auto ex = visit_frequency(example01(), R(1), {100, 1000}, {R(1, 10), R(1, 100), R(1, 1000)});
  for (const auto& row : ex.rows) CHECK(row.frequency > R(9, 10));
  CHECK(ex.verdict == TrendVerdict::violated);

  PiecewiseMap fixed(Domain::segment, {{{R(0), R(1, 2)}, AffinePiece{R(0), R(1, 4)}}, {{R(1, 2), R(1)}, AffinePiece{R(1), R(0)}}});
  auto fx = visit_frequency(fixed, R(1, 4), {100}, {R(1, 10)});
  CHECK(fixed.h_set() == std::vector<Rational>{R(1, 2)});
  CHECK(fx.rows[0].frequency == 0);

  // monotone in eps
  auto mono = visit_frequency(rot, R(1, 3), {1000}, {R(1, 1000), R(1, 100), R(1, 10)});
  CHECK(mono.rows[0].frequency <= mono.rows[1].frequency);
  CHECK(mono.rows[1].frequency <= mono.rows[2].frequency);
}

TEST_CASE("empirical measure examples") {
  auto one = empirical_measure(example01(), R(1, 3), 1);
  CHECK(one.measure == Measure::dirac(R(1, 3)));
  auto ex = empirical_measure(example01(), R(1), 4);
  CHECK(ex.measure == Measure::from_parts({}, {{R(1), R(1, 4)}, {R(1, 2), R(1, 4)}, {R(1, 4), R(1, 4)}, {R(1, 8), R(1, 4)}}));
  CHECK(ex.end == R(1, 16));
  auto cyc = empirical_measure(rotation(R(3, 5)), R(0), 5);
  CHECK(cyc.measure.atoms().size() == 5);
  auto d = pushforward_defect(rotation(R(3, 5)), cyc);
  CHECK(d.norm == 0);
  CHECK(d.identity_holds);
  auto de = pushforward_defect(example01(), ex);
  CHECK(de.norm == R(1, 2));
  CHECK(de.identity_holds);
}

TEST_CASE("atom pushforward under the segment example") {
  CHECK(pushforward_atoms(example01(), Measure::dirac(R(0))) == Measure::dirac(R(1)));
}

TEST_CASE("wandering check examples") {
  auto ex = wandering_discontinuity_check(example01(), {R(1, 4), R(1, 16)}, 10);
  for (const auto& p : ex.probes) {
    REQUIRE(p.return_time.has_value());
    CHECK(*p.return_time == 1u);
  }
  auto rot = rotation(R(2, 5));
  rot.set_h_set({R(0)});
  auto rr = wandering_discontinuity_check(rot, {R(1, 100)}, 10);
  REQUIRE(rr.probes.size() == 1);
  CHECK(rr.probes[0].return_time == 5u);

  PiecewiseMap trap(Domain::segment, {{{R(0), R(1, 2)}, AffinePiece{R(1, 4), R(3, 4)}},
                                      {{R(1, 2), R(1)}, AffinePiece{R(1, 2), R(1, 2)}}});
  trap.set_h_set({R(1, 2)});
  auto tw = wandering_discontinuity_check(trap, {R(1, 100), R(1, 1000)}, 1000);
  for (const auto& p : tw.probes) CHECK_FALSE(p.return_time.has_value());
}
