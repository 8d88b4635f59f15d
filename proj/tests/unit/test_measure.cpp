#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "itm/errors.hpp"
#include "itm/functional.hpp"
#include "itm/measure.hpp"

using namespace itm;
using test::R;
using test::arc;

namespace {

Itm half_collapse() { return Itm({R(0), R(1, 2)}, {R(0), R(1, 2)}); }
Itm two_piece() { return Itm({R(0), R(1, 2)}, {R(1, 3), R(1, 4)}); }
Measure half_density() { return Measure::from_parts({{{R(0), R(1, 2)}, R(2)}}, {}); }

}  // namespace

TEST_CASE("canonical form") {
  Measure m = Measure::from_parts({{{R(0), R(1, 4)}, R(1)}, {{R(1, 4), R(1, 2)}, R(1)}, {{R(1, 8), R(3, 8)}, R(1)}},
                                  {{R(1, 2), R(1, 4)}, {R(1, 2), R(1, 4)}});
  REQUIRE(m.density().size() == 3);
  CHECK(m.density()[1].weight == 2);
  REQUIRE(m.atoms().size() == 1);
  CHECK(m.atoms()[0].mass == R(1, 2));
  CHECK(m.total_mass() == R(1, 2) + R(1, 4) + R(1, 2));
  CHECK(Measure::from_parts({{{R(0), R(1, 2)}, R(1)}, {{R(1, 2), R(1)}, R(1)}}, {}) == Measure::lebesgue());
  CHECK_THROWS(Measure::from_parts({{{R(0), R(1, 2)}, R(-1)}}, {}));
  CHECK(Measure::uniform_on(arc("3/4", "1/2")) ==
        Measure::from_parts({{{R(0), R(1, 4)}, R(2)}, {{R(3, 4), R(1)}, R(2)}}, {}));
}

TEST_CASE("pushforward examples") {
  CHECK(pushforward(half_collapse(), half_density()) == half_density());
  CHECK(pushforward(Itm::rotation(R(2, 7)), Measure::lebesgue()) == Measure::lebesgue());
  CHECK(pushforward(two_piece(), Measure::dirac(R(1, 2))) == Measure::dirac(R(3, 4)));
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    Itm map = test::random_itm(rng, 1 + trial % 5, 60);
    Measure mu = Measure::from_parts({{{R(1, 7), R(5, 7)}, R(3, 2)}}, {{R(1, 3), R(1, 7)}});
    Measure p = pushforward(map, mu);
    CHECK(p.total_mass() == mu.total_mass());
    CHECK(pushforward(map, Measure::lebesgue()).non_atomic());
  }
}

TEST_CASE("exact invariance residual") {
  CHECK(invariance_residual_exact(half_collapse(), half_density()) == 0);
  CHECK(invariance_residual_exact(two_piece(), Measure::lebesgue()) > 0);
  CHECK(invariance_residual_exact(Itm::rotation(R(1, 5)), Measure::lebesgue()) == 0);
  CHECK(invariance_residual_exact(Itm::rotation(R(1, 5)), half_density()) > 0);
}

TEST_CASE("functional residual") {
  auto tf = TestFamily::trigonometric(8);
  CHECK(invariance_residual_functional(half_collapse(), half_density(), tf).residual <= 1e-12);
  CHECK(invariance_residual_functional(Itm::rotation(R(3, 7)), Measure::lebesgue(), tf).residual <= 1e-12);
  CHECK(invariance_residual_functional(two_piece(), Measure::lebesgue(), tf).residual > 1e-3);
  CHECK(invariance_residual_functional(half_collapse(), half_density(), TestFamily::monomial(4)).residual <= 1e-12);
  // exact zero residual implies a small functional residual
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    Itm map = test::random_itm(rng, 2 + trial % 3, 50);
    Measure mu = attractor_measure(map, attractor(map));
    REQUIRE(invariance_residual_exact(map, mu) == 0);
    CHECK(invariance_residual_functional(map, mu, TestFamily::trigonometric(12)).residual <= 1e-10);
  }
}

TEST_CASE("attractor measure") {
  CHECK(attractor_measure(half_collapse(), attractor(half_collapse())) == half_density());
  CHECK(attractor_measure(Itm::rotation(R(1, 3)), attractor(Itm::rotation(R(1, 3)))) == Measure::lebesgue());
  CHECK_THROWS_AS(attractor_measure(two_piece(), attractor(two_piece(), 1)), NotFiniteType);

  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    Itm map = test::random_itm(rng, 2 + trial % 4, 2 + static_cast<long>(rng() % 511));
    auto attr = attractor(map);
    Measure mu = attractor_measure(map, attr);
    CHECK(invariance_residual_exact(map, mu) == 0);
    CHECK(mu.non_atomic());
    CHECK(mu.is_probability());
    for (const auto& it : attr.iterates) CHECK(mu.density_support().subset_of(it));
  }
}

TEST_CASE("cycle average") {
  // Lebesgue on [0,1/4) under rotation by 1/4 cycles with period 4
  Measure mu = Measure::uniform_on(arc("0", "1/4"));
  CHECK(cycle_average(Itm::rotation(R(1, 4)), mu, 100) == Measure::lebesgue());
  CHECK_THROWS_AS(cycle_average(Itm::rotation(R(1, 997)), Measure::dirac(R(0)), 10), CycleNotFound);
}

TEST_CASE("cdf and distance examples") {
  Cdf f(half_density());
  CHECK(f(R(1, 4)) == R(1, 2));
  CHECK(f(R(3, 4)) == 1);
  CHECK(Cdf(Measure::dirac(R(1, 2))).left_limit(R(1, 2)) == 0);
  CHECK(Cdf(Measure::dirac(R(1, 2)))(R(1, 2)) == 1);
  CHECK(cdf_distance(Measure::lebesgue(), half_density()) == R(1, 2));
  CHECK(cdf_distance(half_density(), half_density()) == 0);
  CHECK(cdf_distance(Measure::dirac(R(0)), Measure::lebesgue()) == 1);
}

TEST_CASE("cdf distance is a metric") {
  std::mt19937_64 rng(4);
  auto random_measure = [&]() {
    std::vector<DensityPiece> d;
    std::vector<Atom> a;
    for (int k = 0; k < 3; ++k) {
      long lo = static_cast<long>(rng() % 60);
      d.push_back({{R(lo, 64), R(lo + 1 + static_cast<long>(rng() % 4), 64)}, R(1 + static_cast<long>(rng() % 5))});
    }
    if (rng() % 2) a.push_back({R(static_cast<long>(rng() % 64), 64), R(1, 3)});
    Measure m = Measure::from_parts(d, a);
    return m.scaled(1 / m.total_mass());
  };
  for (int trial = 0; trial < 300; ++trial) {
    Measure a = random_measure(), b = random_measure(), c = random_measure();
    CHECK(cdf_distance(a, b) == cdf_distance(b, a));
    CHECK(cdf_distance(a, a) == 0);
    CHECK(cdf_distance(a, c) <= cdf_distance(a, b) + cdf_distance(b, c));
    if (!(a == b)) CHECK(cdf_distance(a, b) > 0);
  }
}

TEST_CASE("mass near breakpoints") {
  auto leb = mass_near_breakpoints(Measure::lebesgue(), two_piece(), R(1, 16));
  CHECK(leb == std::vector<Rational>{R(1, 8), R(1, 8)});
  auto h = mass_near_breakpoints(half_density(), half_collapse(), R(1, 8));
  CHECK(h[1] == R(1, 4));
  Measure away = Measure::uniform_on(arc("1/8", "1/4"));
  for (const auto& m : mass_near_breakpoints(away, half_collapse(), R(1, 16))) CHECK(m == 0);
}

TEST_CASE("total variation") {
  CHECK(total_variation(Measure::lebesgue(), half_density()) == 1);
  CHECK(total_variation(Measure::dirac(R(0)), Measure::dirac(R(1, 2))) == 2);
}

TEST_CASE("recurrence examples") {
  std::mt19937_64 rng(17);
  for (const auto& s : find_recurrent_points(Itm::rotation(R(1, 3)), Measure::lebesgue(), R(1, 100), 10, 20, rng)) {
    CHECK(s.time == 3u);
    CHECK(s.distance == 0);
  }
  Measure hd = half_density();
  for (const auto& s : find_recurrent_points(half_collapse(), hd, R(1, 100), 10, 20, rng)) {
    CHECK(s.time == 1u);
    CHECK(s.distance == 0);
  }
  for (const auto& s : find_recurrent_points(Itm::rotation(R(5, 8)), Measure::lebesgue(), R(1, 16), 64, 50, rng)) {
    REQUIRE(s.time.has_value());
    CHECK(*s.time <= 8u);
  }
  std::mt19937_64 a(5), b(5);
  CHECK(sample_support(hd, 10, a) == sample_support(hd, 10, b));
  for (const auto& x : sample_support(hd, 100, a)) CHECK(hd.density_support().contains(x));
}
