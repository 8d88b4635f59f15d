#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "itm/conjugacy.hpp"
#include "itm/errors.hpp"

using namespace itm;
using test::R;

TEST_CASE("build h and hbar") {
  Cdf leb = build_h(Measure::lebesgue());
  CHECK(leb(R(1, 3)) == R(1, 3));
  CHECK(leb.hbar(R(2, 5)) == R(2, 5));
  Cdf half = build_h(Measure::from_parts({{{R(0), R(1, 2)}, R(2)}}, {}));
  CHECK(half(R(1, 4)) == R(1, 2));
  CHECK(half(R(3, 4)) == 1);
  CHECK(half.hbar(R(1, 2)) == R(1, 4));
  CHECK(half.hbar(R(1)) == 1);
  Cdf four = build_h(Measure::from_parts({{{R(1, 4), R(1, 2)}, R(4)}}, {}));
  CHECK(four(R(1, 4)) == 0);
  CHECK(four(R(3, 8)) == R(1, 2));
  CHECK(four(R(1, 2)) == 1);
  CHECK(four.hbar(R(0)) == R(1, 4));
  CHECK(four.flat_near(R(1, 8)));
  CHECK(four.flat_near(R(1, 4)));
  CHECK_FALSE(four.flat_near(R(3, 8)));
  CHECK(four.flat_near(R(1, 2)));
  CHECK_FALSE(leb.flat_near(R(0)));
  CHECK_FALSE(leb.flat_near(R(1)));
  CHECK_THROWS_AS(build_h(Measure::dirac(R(0))), AtomicMeasure);
  // h(hbar(y)) = y
  for (int k = 0; k < 64; ++k) CHECK(four(four.hbar(R(k, 64))) == R(k, 64));
}

TEST_CASE("induce iem examples") {
  Itm hc({R(0), R(1, 2)}, {R(0), R(1, 2)});
  auto d = induce_iem(hc, Measure::from_parts({{{R(0), R(1, 2)}, R(2)}}, {}));
  CHECK(d.induced.same_map(Iem::identity()));
  CHECK(d.tau == std::vector<Rational>{R(0), R(1), R(1)});
  CHECK(d.semiconjugacy.failures == 0);

  for (Rational c : {R(1, 3), R(5, 8), R(0)}) {
    auto r = induce_iem(Itm::rotation(c), Measure::lebesgue());
    CHECK(r.induced.same_map(Iem::rotation(c)));
    CHECK(verify_iem(r.induced).ok());
    CHECK(r.semiconjugacy.failures == 0);
  }

  CHECK_THROWS_AS(induce_iem(hc, Measure::lebesgue()), NotInvariant);
  CHECK_THROWS_AS(induce_iem(Itm::rotation(R(1, 2)), Measure::dirac(R(0)).scaled(R(1, 2)) + Measure::dirac(R(1, 2)).scaled(R(1, 2))),
                  AtomicMeasure);
}

TEST_CASE("zero-mass pieces vanish") {
  // piece [1/2,1) carries no mass: tau repeats and the iem has no piece for it
  Itm map({R(0), R(1, 4), R(1, 2)}, {R(1, 4), R(3, 4), R(1, 4)});
  auto attr = attractor(map);
  Measure mu = attractor_measure(map, attr);
  auto d = induce_iem(map, mu);
  CHECK(verify_iem(d.induced).ok());
  CHECK(d.tau[2] == d.tau[3]);
}

TEST_CASE("verify iem") {
  CHECK(verify_iem(Iem::identity()).ok());
  CHECK(verify_iem(Iem::rotation(R(2, 7))).ok());
  Iem corrupted({{R(0), R(1, 2), R(1, 4), R(1, 2)}, {R(1, 2), R(1), R(-1, 4), R(1, 2)}});
  auto rep = verify_iem(corrupted);
  CHECK(rep.lengths_preserved);
  CHECK_FALSE(rep.lebesgue_invariant);
  CHECK_FALSE(rep.injective);
  CHECK(corrupted.evaluate(R(1, 8)) == R(3, 8));
}

TEST_CASE("random rational maps conjugate to exchanges") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    Itm map = test::random_itm(rng, 2 + trial % 4, 2 + static_cast<long>(rng() % 200));
    Measure mu = attractor_measure(map, attractor(map));
    auto d = induce_iem(map, mu, 2000);
    CHECK(verify_iem(d.induced).ok());
    CHECK(d.semiconjugacy.failures == 0);
    for (std::size_t j = 0; j + 1 < d.tau.size(); ++j) CHECK(d.tau[j] <= d.tau[j + 1]);
  }
}
