#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "itm/functional.hpp"
#include "itm/kernels.hpp"

using namespace itm;
using test::R;

TEST_CASE("segment example: delta_0 fails invariance for phi(x) = x") {
  PiecewiseMap e(Domain::segment, {{{R(0), R(1)}, AffinePiece{R(1, 2), R(0)}}}, {{R(0), R(1)}});
  auto res = invariance_residual_functional(e, Measure::dirac(R(0)), TestFamily::monomial(1));
  CHECK(res.residual == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("lebesgue under rotation") {
  for (std::size_t degree : {1u, 8u, 20u}) {
    auto res = invariance_residual_functional(Itm::rotation(R(2584, 4181)), Measure::lebesgue(),
                                              TestFamily::trigonometric(degree));
    CHECK(res.residual <= 1e-12);
    CHECK(res.per_function.size() == 2 * degree);
  }
  auto mono = invariance_residual_functional(Itm::rotation(R(1, 3)), Measure::lebesgue(), TestFamily::monomial(5));
  CHECK(mono.residual <= 1e-14);
}

TEST_CASE("dirac under rotation") {
  // cos(2 pi k (x + 1/4)) - cos(2 pi k x) at x = 0
  auto res = invariance_residual_functional(Itm::rotation(R(1, 4)), Measure::dirac(R(0)), TestFamily::trigonometric(1));
  CHECK(res.per_function[0] == doctest::Approx(1.0));
  CHECK(res.per_function[1] == doctest::Approx(1.0));
}

TEST_CASE("general pieces use quadrature") {
  PiecewiseMap g(Domain::circle, {{{R(0), R(1)}, GeneralPiece{[](double x) { return x + 0.25; }, "shift"}}});
  auto res = invariance_residual_functional(g, Measure::lebesgue(), TestFamily::trigonometric(4));
  CHECK(res.residual <= 1e-12);
  PiecewiseMap sq(Domain::segment, {{{R(0), R(1)}, GeneralPiece{[](double x) { return x * x; }, "square"}}});
  auto m = invariance_residual_functional(sq, Measure::lebesgue(), TestFamily::monomial(1));
  CHECK(m.residual == doctest::Approx(1.0 / 2 - 1.0 / 3).epsilon(1e-12));
}

TEST_CASE("scalar and avx2 paths give the same residual") {
  Itm map({R(0), R(1, 3), R(7, 10)}, {R(1, 5), R(2, 7), R(3, 11)});
  Measure mu = Measure::from_parts({{{R(1, 9), R(4, 9)}, R(3)}}, {});
  auto saved = kernels::active_isa();
  kernels::set_active_isa(kernels::Isa::scalar);
  double a = invariance_residual_functional(map, mu, TestFamily::trigonometric(16)).residual;
  kernels::set_active_isa(kernels::detect_isa());
  double b = invariance_residual_functional(map, mu, TestFamily::trigonometric(16)).residual;
  kernels::set_active_isa(saved);
  CHECK(a == doctest::Approx(b).epsilon(1e-10));
}
